#include "nsinfer/csv.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "nsinfer/errors.hpp"

using namespace nsinfer;

namespace {

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& body) {
    static int counter = 0;
    path = "/tmp/nsinfer_csv_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path, std::ios::binary);
    out << body;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("a small well-formed file parses into the right shape") {
  TempCsv file(
      "x1,x2,y\n"
      "1.5,-2.0,1\n"
      "0.5,0.25,0\n"
      "-1.0,3.5,1\n"
      "2.25,0.0,0\n");
  Dataset ds = ingest_csv(file.path, IngestOptions{});
  REQUIRE(ds.n() == 4);
  REQUIRE(ds.p() == 2);
  CHECK(ds.x(0, 0) == 1.5);
  CHECK(ds.x(0, 1) == -2.0);
  CHECK(ds.x(3, 0) == 2.25);
  CHECK(ds.y(0) == 1.0);
  CHECK(ds.y(1) == 0.0);
  CHECK(ds.y(2) == 1.0);
}

TEST_CASE("the response column may sit anywhere and be renamed") {
  TempCsv file(
      "outcome,a,b\n"
      "1,0.5,2.0\n"
      "0,1.5,-1.0\n");
  IngestOptions opts;
  opts.response_col = "outcome";
  Dataset ds = ingest_csv(file.path, opts);
  REQUIRE(ds.n() == 2);
  REQUIRE(ds.p() == 2);
  CHECK(ds.y(0) == 1.0);
  CHECK(ds.x(0, 0) == 0.5);
  CHECK(ds.x(1, 1) == -1.0);
}

TEST_CASE("windows line endings and stray spaces are tolerated") {
  TempCsv file(
      "x1, x2 ,y\r\n"
      " 1.0,2.0 ,1\r\n"
      "3.0, 4.0, 0\r\n"
      "\r\n");
  Dataset ds = ingest_csv(file.path, IngestOptions{});
  REQUIRE(ds.n() == 2);
  CHECK(ds.x(0, 0) == 1.0);
  CHECK(ds.x(1, 1) == 4.0);
  CHECK(ds.y(1) == 0.0);
}

TEST_CASE("a non-binary response names the offending row") {
  TempCsv file(
      "x1,y\n"
      "1.0,0\n"
      "2.0,2\n");
  CHECK_THROWS_WITH_AS(ingest_csv(file.path, IngestOptions{}),
                       doctest::Contains("row 3"), DataError);
}

TEST_CASE("a malformed numeric field names the offending row") {
  TempCsv file(
      "x1,y\n"
      "1.0,0\n"
      "oops,1\n"
      "2.0,0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(file.path, IngestOptions{}),
                       doctest::Contains("row 3"), DataError);
}

TEST_CASE("a short row names the offending row") {
  TempCsv file(
      "x1,x2,y\n"
      "1.0,2.0,0\n"
      "1.0,1\n");
  CHECK_THROWS_WITH_AS(ingest_csv(file.path, IngestOptions{}),
                       doctest::Contains("row 3"), DataError);
}

TEST_CASE("missing and duplicate response columns are rejected") {
  TempCsv missing(
      "x1,x2\n"
      "1.0,2.0\n"
      "3.0,4.0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(missing.path, IngestOptions{}),
                       doctest::Contains("'y' not found"), DataError);

  TempCsv duplicate(
      "y,x1,y\n"
      "1,2.0,1\n"
      "0,3.0,0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(duplicate.path, IngestOptions{}),
                       doctest::Contains("duplicate response"), DataError);
}

TEST_CASE("too little data or no covariates is an error") {
  TempCsv one_row(
      "x1,y\n"
      "1.0,0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(one_row.path, IngestOptions{}),
                       doctest::Contains("at least 2 rows"), DataError);

  TempCsv only_response(
      "y\n"
      "1\n"
      "0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(only_response.path, IngestOptions{}),
                       doctest::Contains("no covariate columns"), DataError);

  CHECK_THROWS_AS(ingest_csv("/tmp/nsinfer_no_such_file.csv", IngestOptions{}),
                  DataError);

  TempCsv empty("");
  CHECK_THROWS_WITH_AS(ingest_csv(empty.path, IngestOptions{}),
                       doctest::Contains("empty"), DataError);
}

TEST_CASE("standardization centers and rescales every covariate") {
  TempCsv file(
      "x1,x2,y\n"
      "1.0,10.0,1\n"
      "2.0,20.0,0\n"
      "3.0,30.0,1\n"
      "4.0,40.0,0\n"
      "5.0,50.0,1\n");
  IngestOptions opts;
  opts.standardize = true;
  Dataset ds = ingest_csv(file.path, opts);

  for (Eigen::Index j = 0; j < ds.p(); ++j) {
    CHECK(std::abs(ds.x.col(j).mean()) <= 1e-12);
    double var = ds.x.col(j).squaredNorm() / static_cast<double>(ds.n() - 1);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Centering and scaling keep the column ordering.
  CHECK(ds.x(0, 0) < ds.x(4, 0));
}

TEST_CASE("a constant column cannot be standardized and is named") {
  TempCsv file(
      "x1,flat,y\n"
      "1.0,7.0,1\n"
      "2.0,7.0,0\n"
      "3.0,7.0,1\n");
  IngestOptions opts;
  opts.standardize = true;
  CHECK_THROWS_WITH_AS(ingest_csv(file.path, opts), doctest::Contains("'flat'"),
                       DataError);
  CHECK_NOTHROW(ingest_csv(file.path, IngestOptions{}));
}

TEST_CASE("non-finite covariates are rejected by the final validation") {
  TempCsv file(
      "x1,y\n"
      "inf,0\n"
      "1.0,1\n");
  CHECK_THROWS_AS(ingest_csv(file.path, IngestOptions{}), DataError);
}

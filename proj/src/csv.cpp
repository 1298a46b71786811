#include "nsinfer/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "nsinfer/errors.hpp"

namespace nsinfer {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    fields.push_back(field.substr(start));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& token, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v))
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw DataError("row " + std::to_string(line_no) + ": cannot parse value '" +
                    token + "'");
  }
}

}  // namespace

Dataset ingest_csv(const std::string& path, const IngestOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("data file is empty: " + path);
  std::vector<std::string> header = split_line(line);
  if (header.empty()) throw DataError("data file has an empty header: " + path);

  Eigen::Index response_idx = -1;
  std::vector<std::string> covariate_names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == opts.response_col) {
      if (response_idx >= 0)
        throw DataError("duplicate response column '" + opts.response_col + "'");
      response_idx = static_cast<Eigen::Index>(j);
    } else {
      covariate_names.push_back(header[j]);
    }
  }
  if (response_idx < 0)
    throw DataError("response column '" + opts.response_col + "' not found");
  const Eigen::Index p = static_cast<Eigen::Index>(header.size()) - 1;
  if (p < 1) throw DataError("data file has no covariate columns");

  std::vector<double> ys;
  std::vector<double> xs;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size())
      throw DataError("row " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    for (std::size_t j = 0; j < fields.size(); ++j) {
      double v = parse_number(fields[j], line_no);
      if (static_cast<Eigen::Index>(j) == response_idx) {
        if (v != 0.0 && v != 1.0)
          throw DataError("row " + std::to_string(line_no) +
                          ": response must be 0 or 1, got " + fields[j]);
        ys.push_back(v);
      } else {
        xs.push_back(v);
      }
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(ys.size());
  if (n < 2) throw DataError("data file needs at least 2 rows");

  Dataset ds;
  ds.y = Eigen::Map<Vector>(ys.data(), n);
  ds.x.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) ds.x(i, j) = xs[i * p + j];

  if (opts.standardize) {
    for (Eigen::Index j = 0; j < p; ++j) {
      double mean = ds.x.col(j).mean();
      ds.x.col(j).array() -= mean;
      double var = ds.x.col(j).squaredNorm() / static_cast<double>(n - 1);
      if (var <= 0.0)
        throw DataError("column '" + covariate_names[j] +
                        "' is constant; cannot standardize");
      ds.x.col(j) /= std::sqrt(var);
    }
  }
  validate(ds);
  return ds;
}

}  // namespace nsinfer

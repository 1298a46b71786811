#include "nsinfer/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsinfer/errors.hpp"

namespace nsinfer {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  std::sscanf(buf, "%lf", &parsed);
  // Prefer the shortest representation that still round-trips.
  for (int digits = 1; digits <= 16; ++digits) {
    char trial[64];
    std::snprintf(trial, sizeof(trial), "%.*g", digits, v);
    std::sscanf(trial, "%lf", &parsed);
    if (parsed == v) return trial;
  }
  return buf;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  if (report.kind == "power") {
    out << "design,s,h,reps,power,se\n";
    for (const CellResult& c : report.cells)
      out << c.design << ',' << c.s << ',' << format_double(c.h) << ','
          << c.replications << ',' << format_double(c.rejection_rate) << ','
          << format_double(c.se) << '\n';
  } else if (report.kind == "coverage") {
    out << "design,s,reps,completed,infeasible,failures,coverage,mean_ci_length,se\n";
    for (const CellResult& c : report.cells)
      out << c.design << ',' << c.s << ',' << c.replications << ',' << c.completed
          << ',' << c.infeasible << ',' << c.failures << ','
          << format_double(c.coverage) << ',' << format_double(c.mean_ci_length)
          << ',' << format_double(c.se) << '\n';
  } else {
    out << "design,s,reps,completed,infeasible,failures,rejection_rate,se\n";
    for (const CellResult& c : report.cells)
      out << c.design << ',' << c.s << ',' << c.replications << ',' << c.completed
          << ',' << c.infeasible << ',' << c.failures << ','
          << format_double(c.rejection_rate) << ',' << format_double(c.se) << '\n';
  }
  return out.str();
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = report.kind;
  j["seed"] = report.seed;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) cfg[key] = value;
  j["config"] = cfg;
  j["cells"] = nlohmann::ordered_json::array();
  for (const CellResult& c : report.cells) {
    nlohmann::ordered_json cell;
    cell["design"] = c.design;
    cell["s"] = c.s;
    cell["h"] = c.h;
    cell["replications"] = c.replications;
    cell["completed"] = c.completed;
    cell["infeasible"] = c.infeasible;
    cell["failures"] = c.failures;
    if (report.kind == "coverage") {
      cell["covered"] = c.covered;
      cell["coverage"] = c.coverage;
      cell["mean_ci_length"] = c.mean_ci_length;
      cell["degenerate_intervals"] = c.degenerate_intervals;
    } else {
      cell["rejections"] = c.rejections;
      cell["rejection_rate"] = c.rejection_rate;
    }
    cell["se"] = c.se;
    j["cells"].push_back(cell);
  }
  return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::string& path,
                  const std::string& format) {
  std::string body;
  if (format == "csv")
    body = report_to_csv(report);
  else if (format == "json")
    body = report_to_json(report);
  else
    throw ConfigError("unknown report format: " + format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path);
  out << body;
  if (!out) throw DataError("failed writing output file: " + path);
}

}  // namespace nsinfer

#pragma once

#include <string>

#include "nsinfer/montecarlo.hpp"

namespace nsinfer {

// Shortest exact decimal form used for every float written to reports.
std::string format_double(double v);

// One row per cell.  Size reports carry rejection_rate, power reports use the
// fixed design,s,h,reps,power,se layout, coverage reports carry coverage and
// mean interval length.
std::string report_to_csv(const ExperimentReport& report);

std::string report_to_json(const ExperimentReport& report);

void write_report(const ExperimentReport& report, const std::string& path,
                  const std::string& format);

}  // namespace nsinfer

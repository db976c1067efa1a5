#pragma once

#include <string>
#include <vector>

#include "nopx/costmodel.hpp"
#include "nopx/workload.hpp"

namespace nopx {

// All CSV emitters start with a `# schema=1` comment line, use fixed column
// orders, and format floats with 6 significant digits — identical inputs
// produce byte-identical output. The JSON emitters carry the same rows as an
// array of objects with the CSV column names as keys.

std::string run_report_csv(const RunReport& report, const SystemConfig& sys,
                           const std::string& strategy);
std::string run_report_json(const RunReport& report, const SystemConfig& sys,
                            const std::string& strategy);

std::string sweep_report_csv(const SweepReport& report);
std::string sweep_report_json(const SweepReport& report);

std::string compare_report_csv(const CompareReport& report);
std::string compare_report_json(const CompareReport& report);

std::string resource_report_csv(const ResourceBudget& budget);
std::string resource_report_json(const ResourceBudget& budget);

std::string classify_report_csv(const std::vector<LayerSpec>& workload);
std::string classify_report_json(const std::vector<LayerSpec>& workload);

}  // namespace nopx

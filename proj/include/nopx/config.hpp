#pragma once

#include <optional>
#include <string>

#include "nopx/costmodel.hpp"

namespace nopx {

enum class OutputFormat { Csv, Json };

const char* to_string(OutputFormat format);

// Everything a CLI invocation needs, resolved from built-in defaults plus an
// optional JSON config file. Flags override file values; the file overrides
// defaults.
struct RunConfig {
  SystemConfig system;
  NopPresets presets = NopPresets::defaults();
  TrxAnchorTable anchors = TrxAnchorTable::defaults();
  BudgetConstants budget;
  std::string workload_path;
  std::optional<Strategy> strategy;  // nullopt = adaptive per-layer selection
  std::string output_path;           // empty = write report to stdout
  OutputFormat format = OutputFormat::Csv;
  TrxProfile trx_profile = TrxProfile::Conservative;
};

// "kp-cp" / "np-cp" / "yp-xp" / "adaptive", case-insensitive, '-' and '_'
// interchangeable. Throws ConfigError listing the valid names.
std::optional<Strategy> parse_strategy(const std::string& text);

OutputFormat parse_format(const std::string& text);
TrxProfile parse_trx_profile(const std::string& text);

// Loads a JSON config file over the defaults. Sections (all optional):
// system, nop_presets, trx_anchors, budget, workload, strategy, out, format,
// trx_profile. NoP references may be preset labels or inline objects.
RunConfig load_config(const std::string& path);

// Applies one already-parsed JSON document (exposed for tests).
RunConfig config_from_json_text(const std::string& text, const std::string& origin);

}  // namespace nopx

#include "nopx/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "nopx/config.hpp"
#include "nopx/error.hpp"
#include "nopx/report.hpp"
#include "nopx/util.hpp"

namespace nopx {

namespace {

// Flag values shared by every subcommand, applied over the config file.
struct CommonFlags {
  std::string config_path;
  std::string workload;
  std::string out_path;
  std::string format;
  std::string strategy;
  std::string distribution;
  std::string collection;
  std::uint64_t chiplets = 0;
  std::uint64_t total_pes = 0;
  bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON config file (falls back to $NOP_EXPLORER_CONFIG)");
  cmd->add_option("--workload", flags.workload, "workload file (.csv or .json)");
  cmd->add_option("--out", flags.out_path, "write the report here instead of stdout");
  cmd->add_option("--format", flags.format, "report format: csv or json");
  cmd->add_option("--strategy", flags.strategy,
                  "partitioning strategy: kp-cp, np-cp, yp-xp, adaptive");
  cmd->add_option("--distribution", flags.distribution, "distribution NoP preset label");
  cmd->add_option("--collection", flags.collection, "collection NoP preset label");
  cmd->add_option("--chiplets", flags.chiplets, "chiplet count override");
  cmd->add_option("--total-pes", flags.total_pes, "total PE budget override");
  cmd->add_flag("--quiet", flags.quiet, "suppress summary and warnings");
}

RunConfig resolve_config(const CLI::App* cmd, const CommonFlags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = load_config(flags.config_path);
  } else if (const char* env = std::getenv("NOP_EXPLORER_CONFIG");
             env != nullptr && *env != '\0') {
    cfg = load_config(env);
  }
  if (!flags.workload.empty()) cfg.workload_path = flags.workload;
  if (cmd->count("--out") > 0) cfg.output_path = flags.out_path;
  if (!flags.format.empty()) cfg.format = parse_format(flags.format);
  if (!flags.strategy.empty()) cfg.strategy = parse_strategy(flags.strategy);
  if (!flags.distribution.empty()) {
    const NopModel* m = cfg.presets.find(flags.distribution);
    if (m == nullptr)
      throw config_error("unknown nop preset '" + flags.distribution +
                         "' for --distribution (available: " + cfg.presets.labels() + ")");
    cfg.system.distribution_nop = *m;
  }
  if (!flags.collection.empty()) {
    const NopModel* m = cfg.presets.find(flags.collection);
    if (m == nullptr)
      throw config_error("unknown nop preset '" + flags.collection +
                         "' for --collection (available: " + cfg.presets.labels() + ")");
    cfg.system.collection_nop = *m;
  }
  if (flags.total_pes > 0) cfg.system.total_pes = flags.total_pes;
  if (flags.chiplets > 0) cfg.system.chiplets = flags.chiplets;
  if ((flags.chiplets > 0 || flags.total_pes > 0) && cfg.system.chiplets >= 1 &&
      cfg.system.total_pes % cfg.system.chiplets == 0)
    cfg.system.pes_per_chiplet = cfg.system.total_pes / cfg.system.chiplets;
  return cfg;
}

std::vector<LayerSpec> load_required_workload(const RunConfig& cfg) {
  if (cfg.workload_path.empty())
    throw config_error("no workload given (use --workload or the config file)");
  return load_workload(cfg.workload_path);
}

void print_warnings(const RunConfig& cfg, bool quiet, std::ostream& err) {
  if (quiet) return;
  for (const std::string& w : cfg.system.soft_warnings()) err << "warning: " << w << "\n";
}

// Emits the report body to --out or the output stream, and the one-line
// summary to whichever of the two streams is not carrying the body.
void deliver(const RunConfig& cfg, const std::string& body, const std::string& summary,
             bool quiet, std::ostream& out, std::ostream& err) {
  if (cfg.output_path.empty()) {
    out << body;
    if (!quiet) err << summary << "\n";
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw io_error("cannot write output file: " + cfg.output_path);
  file << body;
  if (!file.flush()) throw io_error("cannot write output file: " + cfg.output_path);
  if (!quiet) out << "wrote " << cfg.output_path << "\n" << summary << "\n";
}

std::string run_summary(const RunReport& report, const SystemConfig& sys) {
  double ms = static_cast<double>(report.total_cycles) / (sys.clock_mhz * 1000.0);
  return std::to_string(report.layers.size()) + " layers: " +
         std::to_string(report.total_cycles) + " cycles (" + fmt_g6(ms) + " ms at " +
         fmt_g6(sys.clock_mhz) + " MHz), " + fmt_g6(report.avg_macs_per_cycle) +
         " MACs/cycle, distribution " + fmt_g6(report.total_distribution_energy_pj) +
         " pJ, collection " + fmt_g6(report.total_collection_energy_pj) + " pJ";
}

int cmd_run(const CLI::App* cmd, const CommonFlags& flags, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg = resolve_config(cmd, flags);
  std::vector<LayerSpec> workload = load_required_workload(cfg);
  print_warnings(cfg, flags.quiet, err);
  RunReport report = run_model(workload, cfg.strategy, cfg.system);
  std::string label = strategy_label(cfg.strategy);
  std::string body = cfg.format == OutputFormat::Csv
                         ? run_report_csv(report, cfg.system, label)
                         : run_report_json(report, cfg.system, label);
  deliver(cfg, body, run_summary(report, cfg.system), flags.quiet, out, err);
  return 0;
}

int cmd_sweep(const CLI::App* cmd, const CommonFlags& flags, const std::string& axis_name,
              const std::vector<double>& values, const std::vector<std::string>& strategy_names,
              std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(cmd, flags);
  std::vector<LayerSpec> workload = load_required_workload(cfg);
  print_warnings(cfg, flags.quiet, err);

  SweepAxis axis;
  if (axis_name == "bandwidth")
    axis = SweepAxis::DistributionBandwidth;
  else if (axis_name == "chiplets")
    axis = SweepAxis::ChipletCount;
  else
    throw config_error("unknown sweep axis '" + axis_name + "' (valid: bandwidth, chiplets)");

  std::vector<std::optional<Strategy>> strategies;
  for (const std::string& name : strategy_names) strategies.push_back(parse_strategy(name));
  if (strategies.empty()) strategies.push_back(cfg.strategy);

  SweepReport report = sweep(workload, cfg.system, axis, values, strategies);
  std::string body = cfg.format == OutputFormat::Csv ? sweep_report_csv(report)
                                                     : sweep_report_json(report);
  std::string summary = "swept " + std::string(to_string(axis)) + " over " +
                        std::to_string(values.size()) + " values x " +
                        std::to_string(strategies.size()) + " strategies: " +
                        std::to_string(report.rows.size()) + " rows";
  deliver(cfg, body, summary, flags.quiet, out, err);
  return 0;
}

int cmd_compare(const CLI::App* cmd, const CommonFlags& flags, const std::string& a_label,
                const std::string& b_label, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(cmd, flags);
  std::vector<LayerSpec> workload = load_required_workload(cfg);
  print_warnings(cfg, flags.quiet, err);
  const NopModel* a = cfg.presets.find(a_label);
  if (a == nullptr)
    throw config_error("unknown nop preset '" + a_label + "' for --a (available: " +
                       cfg.presets.labels() + ")");
  const NopModel* b = cfg.presets.find(b_label);
  if (b == nullptr)
    throw config_error("unknown nop preset '" + b_label + "' for --b (available: " +
                       cfg.presets.labels() + ")");
  CompareReport report = compare_models(workload, cfg.system, *a, *b, cfg.strategy);
  std::string body = cfg.format == OutputFormat::Csv ? compare_report_csv(report)
                                                     : compare_report_json(report);
  const CompareRow& total = report.rows.back();
  std::string summary = b_label + " over " + a_label + ": speedup " +
                        fmt_g6(total.speedup) + "x, distribution energy reduction " +
                        fmt_g6(report.energy_reduction_pct) + "%";
  deliver(cfg, body, summary, flags.quiet, out, err);
  return 0;
}

int cmd_resources(const CLI::App* cmd, const CommonFlags& flags,
                  const std::string& profile_name, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(cmd, flags);
  print_warnings(cfg, flags.quiet, err);
  TrxProfile profile = profile_name.empty() ? cfg.trx_profile
                                            : parse_trx_profile(profile_name);
  ResourceBudget budget = resource_budget(cfg.system, profile, cfg.budget, cfg.anchors);
  std::string body = cfg.format == OutputFormat::Csv ? resource_report_csv(budget)
                                                     : resource_report_json(budget);
  std::string summary = "total " + fmt_g6(budget.total_area_mm2) + " mm2, " +
                        fmt_g6(budget.total_power_mw) + " mW (trx profile " +
                        to_string(profile) + ")";
  deliver(cfg, body, summary, flags.quiet, out, err);
  return 0;
}

int cmd_classify(const CLI::App* cmd, const CommonFlags& flags, std::ostream& out,
                 std::ostream& err) {
  RunConfig cfg = resolve_config(cmd, flags);
  std::vector<LayerSpec> workload = load_required_workload(cfg);
  std::string body = cfg.format == OutputFormat::Csv ? classify_report_csv(workload)
                                                     : classify_report_json(workload);
  deliver(cfg, body, "classified " + std::to_string(workload.size()) + " layers",
          flags.quiet, out, err);
  return 0;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytical cost model for chiplet-based DNN accelerators and their "
               "network-on-package"};
  app.name("nop_explorer");
  app.require_subcommand(0, 1);

  CommonFlags flags;

  CLI::App* run = app.add_subcommand("run", "evaluate a workload layer by layer");
  add_common_flags(run, flags);

  CLI::App* swp = app.add_subcommand("sweep", "evaluate across an axis of values");
  add_common_flags(swp, flags);
  std::string axis_name;
  std::vector<double> values;
  std::vector<std::string> strategy_names;
  swp->add_option("--axis", axis_name, "sweep axis: bandwidth or chiplets")->required();
  swp->add_option("--values", values, "comma-separated axis values")
      ->required()
      ->delimiter(',');
  swp->add_option("--strategies", strategy_names,
                  "comma-separated strategies (default: the configured one)")
      ->delimiter(',');

  CLI::App* cmp = app.add_subcommand("compare", "evaluate under two distribution NoPs");
  add_common_flags(cmp, flags);
  std::string a_label, b_label;
  cmp->add_option("--a", a_label, "baseline NoP preset label")->required();
  cmp->add_option("--b", b_label, "candidate NoP preset label")->required();

  CLI::App* res = app.add_subcommand("resources", "area/power budget for the system");
  add_common_flags(res, flags);
  std::string profile_name;
  res->add_option("--trx-profile", profile_name,
                  "transceiver design profile: conservative or aggressive");

  CLI::App* cls = app.add_subcommand("classify", "print each layer's class");
  add_common_flags(cls, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (const CLI::App* sub : app.get_subcommands()) {
      out << sub->help();
      return 0;
    }
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(run, flags, out, err);
    if (swp->parsed())
      return cmd_sweep(swp, flags, axis_name, values, strategy_names, out, err);
    if (cmp->parsed()) return cmd_compare(cmp, flags, a_label, b_label, out, err);
    if (res->parsed()) return cmd_resources(res, flags, profile_name, out, err);
    if (cls->parsed()) return cmd_classify(cls, flags, out, err);
    out << app.help();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Error::Code::Io ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nopx

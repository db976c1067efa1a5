#include "nopx/report.hpp"

#include <json.hpp>

#include "nopx/util.hpp"

namespace nopx {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kSchemaLine = "# schema=1\n";

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct CsvRow {
  std::string line;
  void add(const std::string& s) {
    if (!line.empty()) line += ',';
    line += csv_field(s);
  }
  void add(const char* s) { add(std::string(s)); }
  void add(std::uint64_t v) { add(std::to_string(v)); }
  void add(double v) { add(fmt_g6(v)); }
};

// Aggregate multicast factor over a set of layers: total received bytes over
// total injected bytes, not a mean of per-layer ratios.
double aggregate_multicast(const std::vector<LayerCost>& layers) {
  std::uint64_t unique = 0, expanded = 0;
  for (const LayerCost& c : layers) {
    unique += c.distribution_bytes_unique;
    expanded += c.distribution_bytes_expanded;
  }
  return static_cast<double>(expanded) / static_cast<double>(unique);
}

}  // namespace

std::string run_report_csv(const RunReport& report, const SystemConfig& sys,
                           const std::string& strategy) {
  std::string out = kSchemaLine;
  out +=
      "layer,class,strategy,chiplets,pes_per_chiplet,bandwidth,distribution_cycles,"
      "compute_cycles,collection_cycles,total_cycles,macs_per_cycle,multicast_factor,"
      "distribution_energy_pj,collection_energy_pj\n";
  auto emit = [&](const std::string& layer, const std::string& cls,
                  const std::string& strat, std::uint64_t dist, std::uint64_t comp,
                  std::uint64_t coll, std::uint64_t total, double mpc, double mf,
                  double de, double ce) {
    CsvRow row;
    row.add(layer);
    row.add(cls);
    row.add(strat);
    row.add(sys.chiplets);
    row.add(sys.pes_per_chiplet);
    row.add(sys.distribution_nop.bandwidth_bytes_per_cycle);
    row.add(dist);
    row.add(comp);
    row.add(coll);
    row.add(total);
    row.add(mpc);
    row.add(mf);
    row.add(de);
    row.add(ce);
    out += row.line;
    out += '\n';
  };
  std::uint64_t dist = 0, comp = 0, coll = 0;
  for (const LayerCost& c : report.layers) {
    emit(c.layer_name, to_string(c.layer_class), to_string(c.strategy),
         c.distribution_cycles, c.compute_cycles, c.collection_cycles, c.total_cycles,
         c.macs_per_cycle, c.multicast_factor, c.distribution_energy_pj,
         c.collection_energy_pj);
    dist += c.distribution_cycles;
    comp += c.compute_cycles;
    coll += c.collection_cycles;
  }
  emit("TOTAL", "ALL", strategy, dist, comp, coll, report.total_cycles,
       report.avg_macs_per_cycle, aggregate_multicast(report.layers),
       report.total_distribution_energy_pj, report.total_collection_energy_pj);
  return out;
}

std::string run_report_json(const RunReport& report, const SystemConfig& sys,
                            const std::string& strategy) {
  ordered_json rows = ordered_json::array();
  auto emit = [&](const std::string& layer, const std::string& cls,
                  const std::string& strat, std::uint64_t dist, std::uint64_t comp,
                  std::uint64_t coll, std::uint64_t total, double mpc, double mf,
                  double de, double ce) {
    rows.push_back({{"layer", layer},
                    {"class", cls},
                    {"strategy", strat},
                    {"chiplets", sys.chiplets},
                    {"pes_per_chiplet", sys.pes_per_chiplet},
                    {"bandwidth", sys.distribution_nop.bandwidth_bytes_per_cycle},
                    {"distribution_cycles", dist},
                    {"compute_cycles", comp},
                    {"collection_cycles", coll},
                    {"total_cycles", total},
                    {"macs_per_cycle", mpc},
                    {"multicast_factor", mf},
                    {"distribution_energy_pj", de},
                    {"collection_energy_pj", ce}});
  };
  std::uint64_t dist = 0, comp = 0, coll = 0;
  for (const LayerCost& c : report.layers) {
    emit(c.layer_name, to_string(c.layer_class), to_string(c.strategy),
         c.distribution_cycles, c.compute_cycles, c.collection_cycles, c.total_cycles,
         c.macs_per_cycle, c.multicast_factor, c.distribution_energy_pj,
         c.collection_energy_pj);
    dist += c.distribution_cycles;
    comp += c.compute_cycles;
    coll += c.collection_cycles;
  }
  emit("TOTAL", "ALL", strategy, dist, comp, coll, report.total_cycles,
       report.avg_macs_per_cycle, aggregate_multicast(report.layers),
       report.total_distribution_energy_pj, report.total_collection_energy_pj);
  return rows.dump(2) + "\n";
}

std::string sweep_report_csv(const SweepReport& report) {
  std::string out = kSchemaLine;
  out +=
      "axis,value,strategy,scope,chiplets,pes_per_chiplet,bandwidth,distribution_cycles,"
      "compute_cycles,collection_cycles,total_cycles,macs_per_cycle,multicast_factor,"
      "distribution_energy_pj,collection_energy_pj\n";
  for (const SweepRow& r : report.rows) {
    CsvRow row;
    row.add(to_string(report.axis));
    row.add(r.value);
    row.add(r.strategy);
    row.add(r.scope);
    row.add(r.chiplets);
    row.add(r.pes_per_chiplet);
    row.add(r.bandwidth);
    row.add(r.distribution_cycles);
    row.add(r.compute_cycles);
    row.add(r.collection_cycles);
    row.add(r.total_cycles);
    row.add(r.macs_per_cycle);
    row.add(r.multicast_factor);
    row.add(r.distribution_energy_pj);
    row.add(r.collection_energy_pj);
    out += row.line;
    out += '\n';
  }
  return out;
}

std::string sweep_report_json(const SweepReport& report) {
  ordered_json rows = ordered_json::array();
  for (const SweepRow& r : report.rows)
    rows.push_back({{"axis", to_string(report.axis)},
                    {"value", r.value},
                    {"strategy", r.strategy},
                    {"scope", r.scope},
                    {"chiplets", r.chiplets},
                    {"pes_per_chiplet", r.pes_per_chiplet},
                    {"bandwidth", r.bandwidth},
                    {"distribution_cycles", r.distribution_cycles},
                    {"compute_cycles", r.compute_cycles},
                    {"collection_cycles", r.collection_cycles},
                    {"total_cycles", r.total_cycles},
                    {"macs_per_cycle", r.macs_per_cycle},
                    {"multicast_factor", r.multicast_factor},
                    {"distribution_energy_pj", r.distribution_energy_pj},
                    {"collection_energy_pj", r.collection_energy_pj}});
  return rows.dump(2) + "\n";
}

std::string compare_report_csv(const CompareReport& report) {
  std::string out = kSchemaLine;
  out += "# a=" + report.a_label + " b=" + report.b_label + "\n";
  out +=
      "scope,class,strategy,a_total_cycles,b_total_cycles,speedup,a_macs_per_cycle,"
      "b_macs_per_cycle,a_distribution_energy_pj,b_distribution_energy_pj,energy_ratio\n";
  for (const CompareRow& r : report.rows) {
    CsvRow row;
    row.add(r.scope);
    row.add(r.layer_class);
    row.add(r.strategy);
    row.add(r.a_total_cycles);
    row.add(r.b_total_cycles);
    row.add(r.speedup);
    row.add(r.a_macs_per_cycle);
    row.add(r.b_macs_per_cycle);
    row.add(r.a_distribution_energy_pj);
    row.add(r.b_distribution_energy_pj);
    row.add(r.energy_ratio);
    out += row.line;
    out += '\n';
  }
  return out;
}

std::string compare_report_json(const CompareReport& report) {
  ordered_json rows = ordered_json::array();
  for (const CompareRow& r : report.rows)
    rows.push_back({{"scope", r.scope},
                    {"class", r.layer_class},
                    {"strategy", r.strategy},
                    {"a", report.a_label},
                    {"b", report.b_label},
                    {"a_total_cycles", r.a_total_cycles},
                    {"b_total_cycles", r.b_total_cycles},
                    {"speedup", r.speedup},
                    {"a_macs_per_cycle", r.a_macs_per_cycle},
                    {"b_macs_per_cycle", r.b_macs_per_cycle},
                    {"a_distribution_energy_pj", r.a_distribution_energy_pj},
                    {"b_distribution_energy_pj", r.b_distribution_energy_pj},
                    {"energy_ratio", r.energy_ratio}});
  return rows.dump(2) + "\n";
}

std::string resource_report_csv(const ResourceBudget& budget) {
  std::string out = kSchemaLine;
  out += "component,area_mm2,area_pct,power_mw,power_pct\n";
  auto emit = [&](const std::string& name, double area, double power) {
    CsvRow row;
    row.add(name);
    row.add(area);
    row.add(area / budget.total_area_mm2 * 100.0);
    row.add(power);
    row.add(power / budget.total_power_mw * 100.0);
    out += row.line;
    out += '\n';
  };
  for (const ResourceComponent& c : budget.components) emit(c.name, c.area_mm2, c.power_mw);
  emit("TOTAL", budget.total_area_mm2, budget.total_power_mw);
  return out;
}

std::string resource_report_json(const ResourceBudget& budget) {
  ordered_json rows = ordered_json::array();
  auto emit = [&](const std::string& name, double area, double power) {
    rows.push_back({{"component", name},
                    {"area_mm2", area},
                    {"area_pct", area / budget.total_area_mm2 * 100.0},
                    {"power_mw", power},
                    {"power_pct", power / budget.total_power_mw * 100.0}});
  };
  for (const ResourceComponent& c : budget.components) emit(c.name, c.area_mm2, c.power_mw);
  emit("TOTAL", budget.total_area_mm2, budget.total_power_mw);
  return rows.dump(2) + "\n";
}

std::string classify_report_csv(const std::vector<LayerSpec>& workload) {
  std::string out = kSchemaLine;
  out += "layer,class\n";
  for (const LayerSpec& layer : workload) {
    CsvRow row;
    row.add(layer.name);
    row.add(to_string(classify_layer(layer)));
    out += row.line;
    out += '\n';
  }
  return out;
}

std::string classify_report_json(const std::vector<LayerSpec>& workload) {
  ordered_json rows = ordered_json::array();
  for (const LayerSpec& layer : workload)
    rows.push_back({{"layer", layer.name}, {"class", to_string(classify_layer(layer))}});
  return rows.dump(2) + "\n";
}

}  // namespace nopx

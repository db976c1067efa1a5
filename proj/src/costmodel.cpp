#include "nopx/costmodel.hpp"

#include <algorithm>
#include <cmath>

#include "nopx/error.hpp"
#include "nopx/util.hpp"

namespace nopx {

const NopModel* NopPresets::find(const std::string& label) const {
  for (const NopModel& m : models)
    if (m.label == label) return &m;
  return nullptr;
}

void NopPresets::upsert(NopModel model) {
  for (NopModel& m : models) {
    if (m.label == model.label) {
      m = std::move(model);
      return;
    }
  }
  models.push_back(std::move(model));
}

std::string NopPresets::labels() const {
  std::string out;
  for (const NopModel& m : models) {
    if (!out.empty()) out += ", ";
    out += m.label;
  }
  return out;
}

NopPresets NopPresets::defaults() {
  NopPresets p;
  p.models = {
      NopModel::wired_mesh("interposer-C", 8.0, 0.85),
      NopModel::wired_mesh("interposer-A", 16.0, 0.85),
      NopModel::wireless("wienna-C", 16.0, 4.01, 1.4),
      NopModel::wireless("wienna-A", 32.0, 4.01, 1.4),
  };
  return p;
}

NopModel default_distribution_nop() { return NopModel::wireless("wienna-C", 16.0, 4.01, 1.4); }

NopModel default_collection_nop() { return NopModel::wired_mesh("interposer-C", 8.0, 0.85); }

void SystemConfig::validate() const {
  if (chiplets < 1) throw validation_error("system config", "chiplet count must be >= 1");
  if (pes_per_chiplet < 1)
    throw validation_error("system config", "pes_per_chiplet must be >= 1");
  if (checked_mul(chiplets, pes_per_chiplet, "total PEs") != total_pes)
    throw validation_error("system config",
                           "chiplets (" + std::to_string(chiplets) + ") x pes_per_chiplet (" +
                               std::to_string(pes_per_chiplet) + ") must equal total_pes (" +
                               std::to_string(total_pes) + ")");
  if (sram_bytes < 1) throw validation_error("system config", "sram_bytes must be >= 1");
  if (!(clock_mhz > 0.0)) throw validation_error("system config", "clock must be > 0");
  distribution_nop.validate();
  collection_nop.validate();
  if (collection_nop.kind != NopKind::WiredMesh)
    throw validation_error("system config", "collection NoP must be a wired mesh");
}

std::vector<std::string> SystemConfig::soft_warnings() const {
  std::vector<std::string> out;
  if (chiplets < 32 || chiplets > 1024)
    out.push_back("chiplet count " + std::to_string(chiplets) +
                  " is outside the calibrated range [32, 1024]");
  if (pes_per_chiplet < 64 || pes_per_chiplet > 512)
    out.push_back("pes_per_chiplet " + std::to_string(pes_per_chiplet) +
                  " is outside the calibrated range [64, 512]");
  return out;
}

ChipletConfig SystemConfig::chiplet_for(Strategy strategy) const {
  ChipletConfig c;
  c.pes = pes_per_chiplet;
  c.style = style_for(strategy);
  c.clock_mhz = clock_mhz;
  return c;
}

LayerCost layer_cost(const LayerSpec& layer, Strategy strategy, const SystemConfig& sys) {
  PartitionPlan plan = build_plan(layer, strategy, sys.chiplets);
  std::vector<TensorTraffic> dist = distribution_traffic(plan);
  TensorTraffic out = output_traffic(plan);

  LayerCost cost;
  cost.layer_name = layer.name;
  cost.layer_class = classify_layer(layer);
  cost.strategy = strategy;
  cost.distribution_cycles = distribution_cycles(sys.distribution_nop, dist, sys.chiplets);
  cost.compute_cycles = layer_compute_cycles(plan, sys.chiplet_for(strategy));
  cost.collection_cycles = collection_cycles(sys.collection_nop, out.bytes_unique, sys.chiplets);
  cost.total_cycles = checked_add(cost.distribution_cycles,
                                  std::max(cost.compute_cycles, cost.collection_cycles),
                                  "layer cycles");
  cost.distribution_energy_pj = transfer_energy_pj(sys.distribution_nop, dist, sys.chiplets);
  cost.collection_energy_pj = transfer_energy_pj(sys.collection_nop, {out}, sys.chiplets);
  cost.multicast_factor = multicast_factor(plan);
  cost.macs = plan.volumes.macs;
  cost.macs_per_cycle =
      static_cast<double>(cost.macs) / static_cast<double>(cost.total_cycles);
  cost.distribution_bytes_unique = distribution_bytes_unique(plan);
  cost.distribution_bytes_expanded = distribution_bytes_expanded(plan);
  return cost;
}

std::pair<Strategy, LayerCost> adaptive_strategy(const LayerSpec& layer,
                                                 const SystemConfig& sys) {
  std::optional<std::pair<Strategy, LayerCost>> best;
  for (Strategy s : kAllStrategies) {
    LayerCost cost = layer_cost(layer, s, sys);
    if (!best || cost.total_cycles < best->second.total_cycles) best = {s, cost};
  }
  return *best;
}

RunReport run_model(const std::vector<LayerSpec>& workload, std::optional<Strategy> strategy,
                    const SystemConfig& sys) {
  sys.validate();
  if (workload.empty()) throw validation_error("run request", "workload has no layers");
  RunReport report;
  for (const LayerSpec& layer : workload) {
    LayerCost cost =
        strategy ? layer_cost(layer, *strategy, sys) : adaptive_strategy(layer, sys).second;
    report.total_cycles = checked_add(report.total_cycles, cost.total_cycles, "total cycles");
    report.total_macs = checked_add(report.total_macs, cost.macs, "total MACs");
    report.total_distribution_energy_pj += cost.distribution_energy_pj;
    report.total_collection_energy_pj += cost.collection_energy_pj;
    report.layers.push_back(std::move(cost));
  }
  report.avg_macs_per_cycle =
      static_cast<double>(report.total_macs) / static_cast<double>(report.total_cycles);
  return report;
}

const char* to_string(SweepAxis axis) {
  return axis == SweepAxis::DistributionBandwidth ? "bandwidth" : "chiplets";
}

std::string strategy_label(std::optional<Strategy> strategy) {
  return strategy ? to_string(*strategy) : "adaptive";
}

namespace {

SystemConfig config_for_value(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig sys = base;
  if (axis == SweepAxis::DistributionBandwidth) {
    if (!(value > 0.0))
      throw config_error("sweep bandwidth " + fmt_g6(value) + " must be > 0");
    sys.distribution_nop.bandwidth_bytes_per_cycle = value;
  } else {
    if (!(value >= 1.0) || value != std::floor(value))
      throw config_error("sweep chiplet count " + fmt_g6(value) +
                         " must be a positive integer");
    auto count = static_cast<std::uint64_t>(value);
    if (count > base.total_pes || base.total_pes % count != 0)
      throw config_error("sweep chiplet count " + std::to_string(count) +
                         " does not divide total PE count " +
                         std::to_string(base.total_pes));
    sys.chiplets = count;
    sys.pes_per_chiplet = base.total_pes / count;
  }
  sys.validate();
  return sys;
}

// Aggregates a subset of per-layer costs into one sweep row.
SweepRow aggregate_row(const std::vector<const LayerCost*>& costs, std::string scope,
                       double value, const std::string& strategy,
                       const SystemConfig& sys) {
  SweepRow row;
  row.value = value;
  row.strategy = strategy;
  row.scope = std::move(scope);
  row.chiplets = sys.chiplets;
  row.pes_per_chiplet = sys.pes_per_chiplet;
  row.bandwidth = sys.distribution_nop.bandwidth_bytes_per_cycle;
  std::uint64_t macs = 0, unique = 0, expanded = 0;
  for (const LayerCost* c : costs) {
    row.distribution_cycles += c->distribution_cycles;
    row.compute_cycles += c->compute_cycles;
    row.collection_cycles += c->collection_cycles;
    row.total_cycles += c->total_cycles;
    row.distribution_energy_pj += c->distribution_energy_pj;
    row.collection_energy_pj += c->collection_energy_pj;
    macs += c->macs;
    unique += c->distribution_bytes_unique;
    expanded += c->distribution_bytes_expanded;
  }
  row.macs_per_cycle = static_cast<double>(macs) / static_cast<double>(row.total_cycles);
  row.multicast_factor = static_cast<double>(expanded) / static_cast<double>(unique);
  return row;
}

constexpr LayerClass kClassOrder[] = {LayerClass::HighRes, LayerClass::LowRes,
                                      LayerClass::Residual, LayerClass::FullyConnected,
                                      LayerClass::UpConv};

}  // namespace

SweepReport sweep(const std::vector<LayerSpec>& workload, const SystemConfig& base,
                  SweepAxis axis, const std::vector<double>& values,
                  const std::vector<std::optional<Strategy>>& strategies) {
  if (values.empty()) throw config_error("sweep needs at least one axis value");
  if (strategies.empty()) throw config_error("sweep needs at least one strategy");
  SweepReport report;
  report.axis = axis;
  for (double value : values) {
    SystemConfig sys = config_for_value(base, axis, value);
    for (const auto& choice : strategies) {
      RunReport run = run_model(workload, choice, sys);
      std::string label = strategy_label(choice);
      std::vector<const LayerCost*> all;
      for (const LayerCost& c : run.layers) all.push_back(&c);
      for (LayerClass cls : kClassOrder) {
        std::vector<const LayerCost*> subset;
        for (const LayerCost& c : run.layers)
          if (c.layer_class == cls) subset.push_back(&c);
        if (subset.empty()) continue;
        report.rows.push_back(aggregate_row(subset, to_string(cls), value, label, sys));
      }
      report.rows.push_back(aggregate_row(all, "TOTAL", value, label, sys));
    }
  }
  return report;
}

CompareReport compare_models(const std::vector<LayerSpec>& workload,
                             const SystemConfig& base, const NopModel& a, const NopModel& b,
                             std::optional<Strategy> strategy) {
  SystemConfig sys_a = base;
  sys_a.distribution_nop = a;
  SystemConfig sys_b = base;
  sys_b.distribution_nop = b;
  RunReport run_a = run_model(workload, strategy, sys_a);
  RunReport run_b = run_model(workload, strategy, sys_b);

  CompareReport report;
  report.a_label = a.label;
  report.b_label = b.label;
  std::string label = strategy_label(strategy);
  for (std::size_t i = 0; i < run_a.layers.size(); ++i) {
    const LayerCost& ca = run_a.layers[i];
    const LayerCost& cb = run_b.layers[i];
    CompareRow row;
    row.scope = ca.layer_name;
    row.layer_class = to_string(ca.layer_class);
    row.strategy = label;
    row.a_total_cycles = ca.total_cycles;
    row.b_total_cycles = cb.total_cycles;
    row.speedup = static_cast<double>(ca.total_cycles) / static_cast<double>(cb.total_cycles);
    row.a_macs_per_cycle = ca.macs_per_cycle;
    row.b_macs_per_cycle = cb.macs_per_cycle;
    row.a_distribution_energy_pj = ca.distribution_energy_pj;
    row.b_distribution_energy_pj = cb.distribution_energy_pj;
    row.energy_ratio = ca.distribution_energy_pj / cb.distribution_energy_pj;
    report.rows.push_back(std::move(row));
  }
  CompareRow total;
  total.scope = "TOTAL";
  total.layer_class = "ALL";
  total.strategy = label;
  total.a_total_cycles = run_a.total_cycles;
  total.b_total_cycles = run_b.total_cycles;
  total.speedup =
      static_cast<double>(run_a.total_cycles) / static_cast<double>(run_b.total_cycles);
  total.a_macs_per_cycle = run_a.avg_macs_per_cycle;
  total.b_macs_per_cycle = run_b.avg_macs_per_cycle;
  total.a_distribution_energy_pj = run_a.total_distribution_energy_pj;
  total.b_distribution_energy_pj = run_b.total_distribution_energy_pj;
  total.energy_ratio =
      run_a.total_distribution_energy_pj / run_b.total_distribution_energy_pj;
  report.rows.push_back(std::move(total));
  report.energy_reduction_pct =
      (1.0 - run_b.total_distribution_energy_pj / run_a.total_distribution_energy_pj) * 100.0;
  return report;
}

ResourceBudget resource_budget(const SystemConfig& sys, TrxProfile profile,
                               const BudgetConstants& constants,
                               const TrxAnchorTable& anchors) {
  sys.validate();
  double n = static_cast<double>(sys.chiplets);
  double scale = static_cast<double>(sys.pes_per_chiplet) / 64.0;

  ResourceBudget budget;
  budget.components.push_back({"pe-array+local-memory", n * constants.pe_mem_area_mm2 * scale,
                               n * constants.pe_mem_power_mw * scale});
  if (sys.distribution_nop.kind == NopKind::Wireless) {
    double datarate_gbps =
        sys.distribution_nop.bandwidth_bytes_per_cycle * sys.clock_mhz * 8.0 / 1000.0;
    TrxFootprint trx = trx_footprint(datarate_gbps, profile, anchors);
    budget.components.push_back({"wireless-rx", n * constants.rx_share * trx.area_mm2,
                                 n * constants.rx_share * trx.energy_pj_per_bit *
                                     datarate_gbps});
  }
  budget.components.push_back({"collection-router", n * constants.router_area_mm2 * scale,
                               n * constants.router_power_mw * scale});
  budget.components.push_back(
      {"global-sram", constants.sram_area_mm2, constants.sram_power_mw});
  if (sys.distribution_nop.kind == NopKind::Wireless)
    budget.components.push_back({"wireless-tx", constants.tx_area_mm2, constants.tx_power_mw});

  for (const ResourceComponent& c : budget.components) {
    budget.total_area_mm2 += c.area_mm2;
    budget.total_power_mw += c.power_mw;
  }
  return budget;
}

}  // namespace nopx

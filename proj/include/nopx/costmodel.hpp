#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nopx/chiplet.hpp"
#include "nopx/nop.hpp"
#include "nopx/partition.hpp"
#include "nopx/workload.hpp"

namespace nopx {

// Built-in interconnect presets addressable by label.
struct NopPresets {
  std::vector<NopModel> models;

  const NopModel* find(const std::string& label) const;
  void upsert(NopModel model);  // replaces the same-label entry or appends
  std::string labels() const;   // comma-separated, for diagnostics

  // interposer-C/A (wired mesh, 8/16 B/cycle/link, 0.85 pJ/bit/hop) and
  // wienna-C/A (wireless broadcast, 16/32 B/cycle, 4.01 pJ/bit unicast,
  // 1.4 pJ/bit per receiver).
  static NopPresets defaults();
};

NopModel default_distribution_nop();  // wienna-C
NopModel default_collection_nop();    // interposer-C

struct SystemConfig {
  std::uint64_t total_pes = 16384;
  std::uint64_t chiplets = 256;
  std::uint64_t pes_per_chiplet = 64;
  NopModel distribution_nop = default_distribution_nop();
  NopModel collection_nop = default_collection_nop();  // must stay a wired mesh
  std::uint64_t sram_bytes = 13ull * 1024 * 1024;
  double clock_mhz = 500.0;

  // Throws ValidationError on inconsistent fields (chiplets x pes_per_chiplet
  // must equal total_pes; collection must ride a wired mesh).
  void validate() const;

  // Unusual-but-legal configurations worth flagging (outside the calibrated
  // 32..1024 chiplets / 64..512 PEs-per-chiplet envelope).
  std::vector<std::string> soft_warnings() const;

  ChipletConfig chiplet_for(Strategy strategy) const;
};

struct LayerCost {
  std::string layer_name;
  LayerClass layer_class = LayerClass::LowRes;
  Strategy strategy = Strategy::KP_CP;
  std::uint64_t distribution_cycles = 0;
  std::uint64_t compute_cycles = 0;
  std::uint64_t collection_cycles = 0;
  std::uint64_t total_cycles = 0;
  double distribution_energy_pj = 0.0;
  double collection_energy_pj = 0.0;
  double macs_per_cycle = 0.0;
  double multicast_factor = 1.0;
  std::uint64_t macs = 0;
  // Distribution byte totals, kept for multicast-factor aggregation.
  std::uint64_t distribution_bytes_unique = 0;
  std::uint64_t distribution_bytes_expanded = 0;
};

// Cost of one layer under one fixed strategy:
// total = distribution + max(compute, collection); distribution rides
// sys.distribution_nop, collection always rides sys.collection_nop.
LayerCost layer_cost(const LayerSpec& layer, Strategy strategy, const SystemConfig& sys);

// Cheapest fixed strategy by total_cycles; ties break KP_CP < NP_CP < YP_XP.
std::pair<Strategy, LayerCost> adaptive_strategy(const LayerSpec& layer,
                                                 const SystemConfig& sys);

struct RunReport {
  std::vector<LayerCost> layers;
  std::uint64_t total_cycles = 0;
  std::uint64_t total_macs = 0;
  double avg_macs_per_cycle = 0.0;
  double total_distribution_energy_pj = 0.0;
  double total_collection_energy_pj = 0.0;
};

// Evaluates the workload layer by layer (strictly sequential execution).
// A nullopt strategy selects the per-layer minimum (adaptive).
RunReport run_model(const std::vector<LayerSpec>& workload,
                    std::optional<Strategy> strategy, const SystemConfig& sys);

enum class SweepAxis { DistributionBandwidth, ChipletCount };

const char* to_string(SweepAxis axis);

// "adaptive" when the row came from per-layer selection, else the fixed
// strategy's label.
std::string strategy_label(std::optional<Strategy> strategy);

struct SweepRow {
  double value = 0.0;       // swept axis value
  std::string strategy;     // strategy label (fixed name or "adaptive")
  std::string scope;        // layer-class label, or "TOTAL" for end-to-end
  std::uint64_t chiplets = 0;
  std::uint64_t pes_per_chiplet = 0;
  double bandwidth = 0.0;   // distribution bandwidth, bytes/cycle/link
  std::uint64_t distribution_cycles = 0;
  std::uint64_t compute_cycles = 0;
  std::uint64_t collection_cycles = 0;
  std::uint64_t total_cycles = 0;
  double macs_per_cycle = 0.0;
  double multicast_factor = 1.0;
  double distribution_energy_pj = 0.0;
  double collection_energy_pj = 0.0;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::DistributionBandwidth;
  std::vector<SweepRow> rows;
};

// One row per (value, strategy, layer-class) plus a TOTAL row per
// (value, strategy); row order is value-major, strategy-minor, classes in
// declaration order. DistributionBandwidth replaces the distribution NoP's
// per-link bandwidth; ChipletCount re-tiles total_pes (values must divide it,
// ConfigError otherwise).
SweepReport sweep(const std::vector<LayerSpec>& workload, const SystemConfig& base,
                  SweepAxis axis, const std::vector<double>& values,
                  const std::vector<std::optional<Strategy>>& strategies);

struct CompareRow {
  std::string scope;        // layer name, or "TOTAL"
  std::string layer_class;  // class label, or "ALL" on the TOTAL row
  std::string strategy;
  std::uint64_t a_total_cycles = 0;
  std::uint64_t b_total_cycles = 0;
  double speedup = 1.0;  // a_total_cycles / b_total_cycles
  double a_macs_per_cycle = 0.0;
  double b_macs_per_cycle = 0.0;
  double a_distribution_energy_pj = 0.0;
  double b_distribution_energy_pj = 0.0;
  double energy_ratio = 1.0;  // a distribution energy / b distribution energy
};

struct CompareReport {
  std::string a_label;
  std::string b_label;
  std::vector<CompareRow> rows;  // per-layer rows then TOTAL
  double energy_reduction_pct = 0.0;  // (1 - b/a) * 100 over distribution energy
};

// Same workload and system evaluated under two distribution NoPs; collection
// stays on the base system's wired mesh for both sides so the comparison
// isolates the distribution fabric.
CompareReport compare_models(const std::vector<LayerSpec>& workload,
                             const SystemConfig& base, const NopModel& a,
                             const NopModel& b, std::optional<Strategy> strategy);

// Calibration constants for the area/power budget. Per-chiplet PE+memory and
// router entries are stated at 64 PEs per chiplet and scale linearly with
// pes_per_chiplet/64; SRAM and TX are package-level constants.
struct BudgetConstants {
  double pe_mem_area_mm2 = 5.0;
  double pe_mem_power_mw = 90.0;
  double router_area_mm2 = 0.43;
  double router_power_mw = 170.0;
  double sram_area_mm2 = 51.0;
  double sram_power_mw = 10000.0;
  double tx_area_mm2 = 2.0;
  double tx_power_mw = 167.0;
  // Fraction of a transceiver's area/energy attributed to the receive side.
  double rx_share = 1.4 / 4.01;
};

struct ResourceComponent {
  std::string name;
  double area_mm2 = 0.0;
  double power_mw = 0.0;
};

struct ResourceBudget {
  std::vector<ResourceComponent> components;
  double total_area_mm2 = 0.0;
  double total_power_mw = 0.0;
};

// Area/power roll-up: per-chiplet PE+memory and collection router (scaled by
// PE count), per-chiplet wireless RX plus one package TX when distribution is
// wireless (RX sized as rx_share of a transceiver at the distribution
// datarate), and the global SRAM.
ResourceBudget resource_budget(const SystemConfig& sys, TrxProfile profile,
                               const BudgetConstants& constants = {},
                               const TrxAnchorTable& anchors = TrxAnchorTable::defaults());

}  // namespace nopx

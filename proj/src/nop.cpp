#include "nopx/nop.hpp"

#include <algorithm>
#include <cmath>

#include "nopx/error.hpp"
#include "nopx/util.hpp"

namespace nopx {

const char* to_string(NopKind kind) {
  return kind == NopKind::WiredMesh ? "wired-mesh" : "wireless";
}

const char* to_string(TrxProfile profile) {
  return profile == TrxProfile::Conservative ? "conservative" : "aggressive";
}

void NopModel::validate() const {
  const std::string subject = "nop model '" + label + "'";
  if (!(bandwidth_bytes_per_cycle > 0.0))
    throw validation_error(subject, "bandwidth must be > 0");
  if (injection_links < 1) throw validation_error(subject, "injection_links must be >= 1");
  if (!(per_bit_energy_pj > 0.0))
    throw validation_error(subject, "per-bit energy must be > 0");
  if (kind == NopKind::WiredMesh) {
    if (multicast_capable)
      throw validation_error(subject, "a wired mesh cannot be multicast-capable");
  } else {
    if (!multicast_capable)
      throw validation_error(subject, "a wireless medium is inherently multicast-capable");
    if (!(rx_per_bit_energy_pj > 0.0))
      throw validation_error(subject, "receiver per-bit energy must be > 0");
    if (!(rx_per_bit_energy_pj < per_bit_energy_pj))
      throw validation_error(subject,
                             "receiver per-bit energy must be below the unicast per-bit "
                             "energy (the TX share is the remainder)");
  }
}

NopModel NopModel::wired_mesh(std::string label, double bandwidth_bytes_per_cycle,
                              double per_bit_energy_pj) {
  NopModel m;
  m.label = std::move(label);
  m.kind = NopKind::WiredMesh;
  m.bandwidth_bytes_per_cycle = bandwidth_bytes_per_cycle;
  m.multicast_capable = false;
  m.per_bit_energy_pj = per_bit_energy_pj;
  m.validate();
  return m;
}

NopModel NopModel::wireless(std::string label, double bandwidth_bytes_per_cycle,
                            double per_bit_energy_pj, double rx_per_bit_energy_pj) {
  NopModel m;
  m.label = std::move(label);
  m.kind = NopKind::Wireless;
  m.bandwidth_bytes_per_cycle = bandwidth_bytes_per_cycle;
  m.multicast_capable = true;
  m.per_bit_energy_pj = per_bit_energy_pj;
  m.rx_per_bit_energy_pj = rx_per_bit_energy_pj;
  m.validate();
  return m;
}

namespace {

// Mean Manhattan distance from the floor-center node of the most nearly
// square rows x cols factorization of `chiplets`. For perfect even squares
// this coincides with sqrt(chiplets)/2 (e.g. 256 -> 16x16 -> 8.0).
double grid_exact_mean_hops(std::uint64_t chiplets) {
  std::uint64_t rows = 1;
  for (std::uint64_t r = 1; r * r <= chiplets; ++r)
    if (chiplets % r == 0) rows = r;
  std::uint64_t cols = chiplets / rows;
  auto axis_mean = [](std::uint64_t n) {
    std::uint64_t center = (n - 1) / 2;
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < n; ++i) sum += i > center ? i - center : center - i;
    return static_cast<double>(sum) / static_cast<double>(n);
  };
  return axis_mean(rows) + axis_mean(cols);
}

std::uint64_t ceil_hops(double hops) {
  return static_cast<std::uint64_t>(std::ceil(hops));
}

}  // namespace

double avg_hops(const NopModel& model, std::uint64_t chiplets) {
  if (chiplets < 1) throw validation_error("hop query", "chiplet count must be >= 1");
  if (model.kind == NopKind::Wireless) return 1.0;
  if (model.grid_exact_hops) return grid_exact_mean_hops(chiplets);
  return std::sqrt(static_cast<double>(chiplets)) / 2.0;
}

std::uint64_t distribution_cycles(const NopModel& model,
                                  const std::vector<TensorTraffic>& traffic,
                                  std::uint64_t chiplets) {
  std::uint64_t bytes = 0;
  for (const TensorTraffic& t : traffic)
    bytes = checked_add(bytes, model.multicast_capable ? t.bytes_unique : t.bytes_expanded,
                        "injected bytes");
  return checked_add(ceil_cycles(bytes, model.injection_bandwidth()),
                     ceil_hops(avg_hops(model, chiplets)), "distribution cycles");
}

std::uint64_t collection_cycles(const NopModel& wired, std::uint64_t output_bytes,
                                std::uint64_t chiplets) {
  if (wired.kind != NopKind::WiredMesh)
    throw kind_error("collection must use the wired mesh, got wireless model '" +
                     wired.label + "'");
  return checked_add(ceil_cycles(output_bytes, wired.injection_bandwidth()),
                     ceil_hops(avg_hops(wired, chiplets)), "collection cycles");
}

double transfer_energy_pj(const NopModel& model, const std::vector<TensorTraffic>& traffic,
                          std::uint64_t chiplets) {
  double total = 0.0;
  if (model.kind == NopKind::WiredMesh) {
    double hops = avg_hops(model, chiplets);
    for (const TensorTraffic& t : traffic)
      total += static_cast<double>(t.bytes_expanded) * 8.0 * model.per_bit_energy_pj * hops;
    return total;
  }
  double tx_share = model.per_bit_energy_pj - model.rx_per_bit_energy_pj;
  for (const TensorTraffic& t : traffic) {
    double bits = static_cast<double>(t.bytes_unique) * 8.0;
    if (t.mode == TrafficMode::Broadcast)
      total += bits * (tx_share + static_cast<double>(t.receivers) * model.rx_per_bit_energy_pj);
    else
      total += bits * model.per_bit_energy_pj;
  }
  return total;
}

TrxAnchorTable TrxAnchorTable::defaults() {
  TrxAnchorTable t;
  t.conservative = {
      {16.0, 0.35, 1.20},
      {48.0, 0.80, 1.95},
      {64.0, 3.00, 4.01},
      {128.0, 12.0, 8.00},
  };
  t.aggressive = {
      {16.0, 0.30, 0.90},
      {48.0, 0.80, 1.95},
      {128.0, 1.60, 2.60},
  };
  return t;
}

TrxFootprint trx_footprint(double datarate_gbps, TrxProfile profile,
                           const TrxAnchorTable& table) {
  if (!(datarate_gbps > 0.0))
    throw validation_error("trx query", "datarate must be > 0");
  std::vector<TrxDesignPoint> pts = table.points(profile);
  if (pts.empty())
    throw config_error(std::string("trx anchor table for profile '") + to_string(profile) +
                       "' is empty");
  std::sort(pts.begin(), pts.end(), [](const TrxDesignPoint& a, const TrxDesignPoint& b) {
    return a.datarate_gbps < b.datarate_gbps;
  });
  for (const TrxDesignPoint& p : pts)
    if (!(p.datarate_gbps > 0.0) || !(p.area_mm2 > 0.0) || !(p.energy_pj_per_bit > 0.0))
      throw config_error("trx anchor points must be positive");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].datarate_gbps == pts[i - 1].datarate_gbps)
      throw config_error("trx anchor datarates must be distinct");

  if (pts.size() == 1) return {pts[0].area_mm2, pts[0].energy_pj_per_bit};

  // Pick the segment containing the query; clamp to the first/last segment
  // outside the range (log-log extrapolation along it).
  std::size_t hi = 1;
  while (hi + 1 < pts.size() && pts[hi].datarate_gbps < datarate_gbps) ++hi;
  const TrxDesignPoint& a = pts[hi - 1];
  const TrxDesignPoint& b = pts[hi];
  double t = (std::log(datarate_gbps) - std::log(a.datarate_gbps)) /
             (std::log(b.datarate_gbps) - std::log(a.datarate_gbps));
  auto lerp = [t](double lo, double hi_v) {
    return std::exp(std::log(lo) + t * (std::log(hi_v) - std::log(lo)));
  };
  return {lerp(a.area_mm2, b.area_mm2), lerp(a.energy_pj_per_bit, b.energy_pj_per_bit)};
}

}  // namespace nopx

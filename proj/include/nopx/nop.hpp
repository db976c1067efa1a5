#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nopx/partition.hpp"

namespace nopx {

enum class NopKind { WiredMesh, Wireless };

enum class TrxProfile { Conservative, Aggressive };

const char* to_string(NopKind kind);
const char* to_string(TrxProfile profile);

// One interconnect technology between the global SRAM and the chiplets.
// WiredMesh is a 2D mesh on the package substrate: every replica of a tensor
// is injected separately and travels avg_hops hops. Wireless is a single-hop
// broadcast medium: replicated data is injected once and every listener
// picks it up, so only unique bytes cross the injection port.
struct NopModel {
  std::string label;
  NopKind kind = NopKind::WiredMesh;
  double bandwidth_bytes_per_cycle = 0.0;  // per injection link
  std::uint64_t injection_links = 1;
  bool multicast_capable = false;
  double per_bit_energy_pj = 0.0;     // wired: per hop; wireless: unicast TX+RX
  double rx_per_bit_energy_pj = 0.0;  // wireless only: per active receiver
  // Replace the sqrt(chiplets)/2 closed form with the exact mean Manhattan
  // distance from the center of a near-square grid (sensitivity checks only).
  bool grid_exact_hops = false;

  double injection_bandwidth() const {
    return bandwidth_bytes_per_cycle * static_cast<double>(injection_links);
  }

  // Throws ValidationError when fields violate the kind's contract.
  void validate() const;

  static NopModel wired_mesh(std::string label, double bandwidth_bytes_per_cycle,
                             double per_bit_energy_pj);
  static NopModel wireless(std::string label, double bandwidth_bytes_per_cycle,
                           double per_bit_energy_pj, double rx_per_bit_energy_pj);
};

// Average source-to-chiplet distance in hops. WiredMesh: sqrt(chiplets)/2
// (exact square root for non-square counts), or the grid-exact mean Manhattan
// distance when the model opts in. Wireless: always 1.
double avg_hops(const NopModel& model, std::uint64_t chiplets);

// Cycles to push a distribution traffic list through the injection port plus
// the pipeline-fill term ceil(avg_hops). Multicast-capable fabrics inject
// unique bytes once; serializing fabrics inject every receiver's copy.
std::uint64_t distribution_cycles(const NopModel& model,
                                  const std::vector<TensorTraffic>& traffic,
                                  std::uint64_t chiplets);

// Cycles to drain output_bytes back to the SRAM over the wired mesh.
// Collection always rides the wired plane; passing a Wireless model is a
// KindError.
std::uint64_t collection_cycles(const NopModel& wired, std::uint64_t output_bytes,
                                std::uint64_t chiplets);

// Transfer energy for a traffic list, in picojoules.
//   WiredMesh: sum of bytes_expanded * 8 * per_bit * avg_hops.
//   Wireless unicast: bits * per_bit (one TX, one RX; idle radios stay off).
//   Wireless broadcast: bits * (tx_share + receivers * rx_per_bit) where
//   tx_share = per_bit - rx_per_bit.
double transfer_energy_pj(const NopModel& model, const std::vector<TensorTraffic>& traffic,
                          std::uint64_t chiplets);

// One measured transceiver design point used to scale area/energy with
// datarate.
struct TrxDesignPoint {
  double datarate_gbps = 0.0;
  double area_mm2 = 0.0;
  double energy_pj_per_bit = 0.0;
};

struct TrxFootprint {
  double area_mm2 = 0.0;
  double energy_pj_per_bit = 0.0;
};

struct TrxAnchorTable {
  std::vector<TrxDesignPoint> conservative;
  std::vector<TrxDesignPoint> aggressive;

  const std::vector<TrxDesignPoint>& points(TrxProfile profile) const {
    return profile == TrxProfile::Conservative ? conservative : aggressive;
  }

  static TrxAnchorTable defaults();
};

// Transceiver area and per-bit energy at a datarate, by log-log linear
// interpolation over the profile's anchor points; outside the anchor range
// the nearest segment is extended. ConfigError on an empty table.
TrxFootprint trx_footprint(double datarate_gbps, TrxProfile profile,
                           const TrxAnchorTable& table = TrxAnchorTable::defaults());

}  // namespace nopx

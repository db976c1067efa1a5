#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nopx/workload.hpp"

namespace nopx {

// How one layer is spread across chiplets.
//   KP_CP: output channels (filters) split across chiplets, input broadcast.
//   NP_CP: batch split across chiplets, filters broadcast.
//   YP_XP: output activation plane tiled across chiplets on a near-square
//          grid; both input and filters are streamed by broadcast and every
//          chiplet consumes the region it needs.
enum class Strategy { KP_CP, NP_CP, YP_XP };

inline constexpr std::array<Strategy, 3> kAllStrategies = {
    Strategy::KP_CP, Strategy::NP_CP, Strategy::YP_XP};

const char* to_string(Strategy strategy);

enum class TensorId { Input, Input2, Filter, Output };
enum class TrafficMode { Broadcast, Unicast };

const char* to_string(TensorId tensor);

// Distribution/collection footprint of one tensor under a plan. A broadcast
// tensor is injected once (bytes_unique) and lands on `receivers` chiplets
// (bytes_expanded = receivers * bytes_unique). A unicast tensor is delivered
// in disjoint slices, so bytes_expanded == bytes_unique.
struct TensorTraffic {
  TensorId tensor = TensorId::Input;
  TrafficMode mode = TrafficMode::Unicast;
  std::uint64_t bytes_unique = 0;
  std::uint64_t bytes_expanded = 0;
  std::uint64_t receivers = 0;
};

// Work and receive/produce byte counts for one chiplet. For residual layers
// both input operands are folded into input_bytes. The *_local extents feed
// the chiplet compute model's spatial dimensions.
struct ChipletShare {
  std::uint64_t macs = 0;
  std::uint64_t elementwise_ops = 0;
  std::uint64_t input_bytes = 0;
  std::uint64_t filter_bytes = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t k_local = 0;
  std::uint64_t out_y_local = 0, out_x_local = 0;
};

struct PartitionPlan {
  LayerSpec layer;
  TensorVolumes volumes;
  Strategy strategy = Strategy::KP_CP;
  std::uint64_t chiplets_total = 0;
  // Planned chiplets: min(chiplets_total, partition_axis_extent). All planned
  // chiplets listen to broadcast streams, including any the ceiling split
  // leaves without work. The one exception is a YP_XP plane too small to
  // factor into a valid grid at that count, which falls back to the largest
  // factorable count (see build_plan).
  std::uint64_t chiplets_used = 0;
  std::uint64_t partition_axis_extent = 0;
  std::uint64_t per_chiplet_macs_max = 0;
  std::vector<TensorTraffic> traffic;  // distribution tensors plus one Output entry
  // YP_XP tile grid; grid_rows * grid_cols == chiplets_used. Unused otherwise.
  std::uint64_t grid_rows = 0, grid_cols = 0;
  // Residual layers: strategy-specific elementwise split, all tensors unicast.
  bool elementwise = false;
};

PartitionPlan build_plan(const LayerSpec& layer, Strategy strategy, std::uint64_t chiplets);

// Bytes landed on chiplets / bytes injected at the source, over distribution
// tensors only (Output is collected, not distributed). 1.0 means no
// replication; broadcast-heavy plans approach the chiplet count.
double multicast_factor(const PartitionPlan& plan);

// O(1) per-chiplet lookup. Indices in [chiplets_used, chiplets_total) get an
// all-zero share; indices >= chiplets_total are an error.
ChipletShare per_chiplet_assignment(const PartitionPlan& plan, std::uint64_t chiplet_index);

// plan.traffic without the Output entry / only the Output entry.
std::vector<TensorTraffic> distribution_traffic(const PartitionPlan& plan);
TensorTraffic output_traffic(const PartitionPlan& plan);

std::uint64_t distribution_bytes_unique(const PartitionPlan& plan);
std::uint64_t distribution_bytes_expanded(const PartitionPlan& plan);

}  // namespace nopx

#include "nopx/partition.hpp"

#include <algorithm>
#include <optional>

#include "nopx/error.hpp"
#include "nopx/util.hpp"

namespace nopx {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::KP_CP: return "kp-cp";
    case Strategy::NP_CP: return "np-cp";
    case Strategy::YP_XP: return "yp-xp";
  }
  return "?";
}

const char* to_string(TensorId tensor) {
  switch (tensor) {
    case TensorId::Input: return "input";
    case TensorId::Input2: return "input2";
    case TensorId::Filter: return "filter";
    case TensorId::Output: return "output";
  }
  return "?";
}

namespace {

// Contiguous split with ceiling-sized leading groups: extent 10 over 4 parts
// gives 3,3,3,1. Trailing parts can end up empty when the ceiling is greedy
// (10 over 6 gives 2,2,2,2,2,0); those chiplets stay planned and still listen
// to broadcasts, they just carry no work.
std::uint64_t greedy_share(std::uint64_t extent, std::uint64_t parts, std::uint64_t index) {
  std::uint64_t g = ceil_div(extent, parts);
  std::uint64_t start = index * g;
  if (start >= extent) return 0;
  return std::min(g, extent - start);
}

// Balanced contiguous split (sizes differ by at most one, ceiling-sized
// groups first): used for grid rows/columns so every tile is non-empty.
std::uint64_t balanced_share(std::uint64_t extent, std::uint64_t parts, std::uint64_t index) {
  std::uint64_t q = extent / parts;
  std::uint64_t rem = extent % parts;
  return q + (index < rem ? 1 : 0);
}

struct Grid {
  std::uint64_t rows = 0, cols = 0;
};

std::optional<Grid> best_grid(std::uint64_t used, std::uint64_t oy, std::uint64_t ox) {
  std::optional<Grid> best;
  for (std::uint64_t rows = 1; rows <= used; ++rows) {
    if (used % rows != 0) continue;
    std::uint64_t cols = used / rows;
    if (rows > oy || cols > ox) continue;
    if (!best) {
      best = Grid{rows, cols};
      continue;
    }
    auto diff = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };
    std::uint64_t cur = diff(rows, cols);
    std::uint64_t old = diff(best->rows, best->cols);
    if (cur < old || (cur == old && rows < best->rows)) best = Grid{rows, cols};
  }
  return best;
}

// Near-square tiling of an oy*ox plane over at most `want` chiplets. Falls
// back to smaller counts only when no factor pair fits the plane (tiny,
// prime-ish planes), which keeps every tile non-empty.
std::pair<std::uint64_t, Grid> select_grid(std::uint64_t want, std::uint64_t oy,
                                           std::uint64_t ox) {
  for (std::uint64_t used = want; used >= 1; --used) {
    if (auto g = best_grid(used, oy, ox)) return {used, *g};
  }
  return {1, Grid{1, 1}};  // unreachable: used=1 always factors as 1x1
}

std::uint64_t exact_div(std::uint64_t value, std::uint64_t den) {
  return value / den;  // callers only divide by an axis the product contains
}

}  // namespace

PartitionPlan build_plan(const LayerSpec& layer, Strategy strategy, std::uint64_t chiplets) {
  layer.validate();
  if (chiplets == 0)
    throw validation_error("partition request", "chiplet count must be >= 1");

  PartitionPlan plan;
  plan.layer = layer;
  plan.volumes = tensor_volumes(layer);
  plan.strategy = strategy;
  plan.chiplets_total = chiplets;

  const TensorVolumes& v = plan.volumes;

  if (layer.kind == LayerKind::Residual) {
    // Elementwise adds have no filter reuse to exploit, so every strategy
    // delivers disjoint slices of both operands: all tensors unicast. Only
    // the split axis differs (raw elements / batch / activation plane).
    plan.elementwise = true;
    std::uint64_t active = 0;
    switch (strategy) {
      case Strategy::KP_CP: {
        plan.partition_axis_extent = v.elementwise_ops;
        plan.chiplets_used = std::min(chiplets, plan.partition_axis_extent);
        std::uint64_t g = ceil_div(plan.partition_axis_extent, plan.chiplets_used);
        active = ceil_div(plan.partition_axis_extent, g);
        break;
      }
      case Strategy::NP_CP: {
        plan.partition_axis_extent = layer.n;
        plan.chiplets_used = std::min(chiplets, layer.n);
        std::uint64_t g = ceil_div(layer.n, plan.chiplets_used);
        active = ceil_div(layer.n, g);
        break;
      }
      case Strategy::YP_XP: {
        plan.partition_axis_extent = checked_mul(layer.y, layer.x, "plane extent");
        auto [used, grid] = select_grid(std::min(chiplets, plan.partition_axis_extent),
                                        layer.y, layer.x);
        plan.chiplets_used = used;
        plan.grid_rows = grid.rows;
        plan.grid_cols = grid.cols;
        active = used;
        break;
      }
    }
    plan.per_chiplet_macs_max = 0;
    plan.traffic = {
        {TensorId::Input, TrafficMode::Unicast, v.input_bytes, v.input_bytes, active},
        {TensorId::Input2, TrafficMode::Unicast, v.input2_bytes, v.input2_bytes, active},
        {TensorId::Output, TrafficMode::Unicast, v.output_bytes, v.output_bytes, active},
    };
    return plan;
  }

  switch (strategy) {
    case Strategy::KP_CP: {
      plan.partition_axis_extent = layer.k;
      plan.chiplets_used = std::min(chiplets, layer.k);
      std::uint64_t g = ceil_div(layer.k, plan.chiplets_used);
      std::uint64_t active = ceil_div(layer.k, g);
      plan.per_chiplet_macs_max = checked_mul(exact_div(v.macs, layer.k), g, "macs share");
      plan.traffic = {
          {TensorId::Input, TrafficMode::Broadcast, v.input_bytes,
           checked_mul(v.input_bytes, plan.chiplets_used, "expanded input"),
           plan.chiplets_used},
          {TensorId::Filter, TrafficMode::Unicast, v.filter_bytes, v.filter_bytes, active},
          {TensorId::Output, TrafficMode::Unicast, v.output_bytes, v.output_bytes, active},
      };
      break;
    }
    case Strategy::NP_CP: {
      plan.partition_axis_extent = layer.n;
      plan.chiplets_used = std::min(chiplets, layer.n);
      std::uint64_t g = ceil_div(layer.n, plan.chiplets_used);
      std::uint64_t active = ceil_div(layer.n, g);
      plan.per_chiplet_macs_max = checked_mul(exact_div(v.macs, layer.n), g, "macs share");
      plan.traffic = {
          {TensorId::Input, TrafficMode::Unicast, v.input_bytes, v.input_bytes, active},
          {TensorId::Filter, TrafficMode::Broadcast, v.filter_bytes,
           checked_mul(v.filter_bytes, plan.chiplets_used, "expanded filter"),
           plan.chiplets_used},
          {TensorId::Output, TrafficMode::Unicast, v.output_bytes, v.output_bytes, active},
      };
      break;
    }
    case Strategy::YP_XP: {
      plan.partition_axis_extent = checked_mul(v.out_y, v.out_x, "plane extent");
      auto [used, grid] =
          select_grid(std::min(chiplets, plan.partition_axis_extent), v.out_y, v.out_x);
      plan.chiplets_used = used;
      plan.grid_rows = grid.rows;
      plan.grid_cols = grid.cols;
      std::uint64_t tile_max = checked_mul(ceil_div(v.out_y, grid.rows),
                                           ceil_div(v.out_x, grid.cols), "max tile");
      plan.per_chiplet_macs_max =
          checked_mul(exact_div(v.macs, plan.partition_axis_extent), tile_max, "macs share");
      // The whole input and the whole filter set are streamed by broadcast;
      // each chiplet keeps the region its tile consumes. Output tiles are
      // disjoint by construction.
      plan.traffic = {
          {TensorId::Input, TrafficMode::Broadcast, v.input_bytes,
           checked_mul(v.input_bytes, used, "expanded input"), used},
          {TensorId::Filter, TrafficMode::Broadcast, v.filter_bytes,
           checked_mul(v.filter_bytes, used, "expanded filter"), used},
          {TensorId::Output, TrafficMode::Unicast, v.output_bytes, v.output_bytes, used},
      };
      break;
    }
  }
  return plan;
}

double multicast_factor(const PartitionPlan& plan) {
  std::uint64_t unique = 0, expanded = 0;
  for (const TensorTraffic& t : plan.traffic) {
    if (t.tensor == TensorId::Output) continue;
    unique = checked_add(unique, t.bytes_unique, "unique bytes");
    expanded = checked_add(expanded, t.bytes_expanded, "expanded bytes");
  }
  if (unique == 0)
    throw validation_error("plan for layer '" + plan.layer.name + "'",
                           "no distribution bytes");
  return static_cast<double>(expanded) / static_cast<double>(unique);
}

ChipletShare per_chiplet_assignment(const PartitionPlan& plan, std::uint64_t chiplet_index) {
  if (chiplet_index >= plan.chiplets_total)
    throw index_error("chiplet index " + std::to_string(chiplet_index) +
                      " out of range (plan has " + std::to_string(plan.chiplets_total) +
                      " chiplets)");
  ChipletShare share;
  if (chiplet_index >= plan.chiplets_used) return share;

  const LayerSpec& layer = plan.layer;
  const TensorVolumes& v = plan.volumes;

  if (plan.elementwise) {
    std::uint64_t elems = 0;
    switch (plan.strategy) {
      case Strategy::KP_CP:
        elems = greedy_share(v.elementwise_ops, plan.chiplets_used, chiplet_index);
        break;
      case Strategy::NP_CP: {
        std::uint64_t n_i = greedy_share(layer.n, plan.chiplets_used, chiplet_index);
        elems = n_i * exact_div(v.elementwise_ops, layer.n);
        break;
      }
      case Strategy::YP_XP: {
        std::uint64_t ty = chiplet_index / plan.grid_cols;
        std::uint64_t tx = chiplet_index % plan.grid_cols;
        share.out_y_local = balanced_share(layer.y, plan.grid_rows, ty);
        share.out_x_local = balanced_share(layer.x, plan.grid_cols, tx);
        elems = share.out_y_local * share.out_x_local * layer.n * layer.c;
        break;
      }
    }
    share.elementwise_ops = elems;
    share.input_bytes = 2 * elems * layer.bytes_per_element;  // both operands
    share.output_bytes = elems * layer.bytes_per_element;
    return share;
  }

  switch (plan.strategy) {
    case Strategy::KP_CP: {
      std::uint64_t k_i = greedy_share(layer.k, plan.chiplets_used, chiplet_index);
      share.k_local = k_i;
      share.out_y_local = v.out_y;
      share.out_x_local = v.out_x;
      share.macs = k_i * exact_div(v.macs, layer.k);
      share.filter_bytes = k_i * exact_div(v.filter_bytes, layer.k);
      share.output_bytes = k_i * exact_div(v.output_bytes, layer.k);
      share.input_bytes = v.input_bytes;  // broadcast listener, work or not
      break;
    }
    case Strategy::NP_CP: {
      std::uint64_t n_i = greedy_share(layer.n, plan.chiplets_used, chiplet_index);
      share.k_local = layer.k;
      share.out_y_local = v.out_y;
      share.out_x_local = v.out_x;
      share.macs = n_i * exact_div(v.macs, layer.n);
      share.input_bytes = n_i * exact_div(v.input_bytes, layer.n);
      share.output_bytes = n_i * exact_div(v.output_bytes, layer.n);
      share.filter_bytes = v.filter_bytes;  // broadcast listener
      break;
    }
    case Strategy::YP_XP: {
      std::uint64_t ty = chiplet_index / plan.grid_cols;
      std::uint64_t tx = chiplet_index % plan.grid_cols;
      share.k_local = layer.k;
      share.out_y_local = balanced_share(v.out_y, plan.grid_rows, ty);
      share.out_x_local = balanced_share(v.out_x, plan.grid_cols, tx);
      std::uint64_t tile = share.out_y_local * share.out_x_local;
      share.macs = tile * exact_div(v.macs, plan.partition_axis_extent);
      share.output_bytes = tile * exact_div(v.output_bytes, plan.partition_axis_extent);
      share.input_bytes = v.input_bytes;    // broadcast stream
      share.filter_bytes = v.filter_bytes;  // broadcast stream
      break;
    }
  }
  return share;
}

std::vector<TensorTraffic> distribution_traffic(const PartitionPlan& plan) {
  std::vector<TensorTraffic> out;
  for (const TensorTraffic& t : plan.traffic)
    if (t.tensor != TensorId::Output) out.push_back(t);
  return out;
}

TensorTraffic output_traffic(const PartitionPlan& plan) {
  for (const TensorTraffic& t : plan.traffic)
    if (t.tensor == TensorId::Output) return t;
  throw validation_error("plan for layer '" + plan.layer.name + "'", "missing output traffic");
}

std::uint64_t distribution_bytes_unique(const PartitionPlan& plan) {
  std::uint64_t sum = 0;
  for (const TensorTraffic& t : plan.traffic)
    if (t.tensor != TensorId::Output) sum = checked_add(sum, t.bytes_unique, "unique bytes");
  return sum;
}

std::uint64_t distribution_bytes_expanded(const PartitionPlan& plan) {
  std::uint64_t sum = 0;
  for (const TensorTraffic& t : plan.traffic)
    if (t.tensor != TensorId::Output)
      sum = checked_add(sum, t.bytes_expanded, "expanded bytes");
  return sum;
}

}  // namespace nopx

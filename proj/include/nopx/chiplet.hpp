#pragma once

#include <cstdint>

#include "nopx/partition.hpp"

namespace nopx {

// The two chiplet microarchitecture styles, distinguished by which loop
// dimensions they map onto the PE array spatially.
enum class ChipletStyle {
  NvdlaLike,       // spatial = local K x C (filter-parallel)
  ShidiannaoLike,  // spatial = local output plane (output-parallel)
};

const char* to_string(ChipletStyle style);

struct ChipletConfig {
  std::uint64_t pes = 64;
  ChipletStyle style = ChipletStyle::NvdlaLike;
  double clock_mhz = 500.0;

  void validate() const;
};

// Each partitioning strategy is paired with the chiplet style whose spatial
// mapping matches the partitioned dimensions.
ChipletStyle style_for(Strategy strategy);

// Cycles for one chiplet to execute its share: the spatial dimensions fold
// onto the PE array in ceil(spatial/pes) passes, each pass pipelining the
// temporal loop at one MAC per PE per cycle. Elementwise shares are charged
// one op per PE per cycle.
std::uint64_t compute_cycles(const ChipletShare& share, const PartitionPlan& plan,
                             const ChipletConfig& chiplet);

// Straggler bound: the slowest chiplet's compute time.
std::uint64_t layer_compute_cycles(const PartitionPlan& plan, const ChipletConfig& chiplet);

}  // namespace nopx

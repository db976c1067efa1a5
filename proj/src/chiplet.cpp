#include "nopx/chiplet.hpp"

#include <algorithm>

#include "nopx/error.hpp"
#include "nopx/util.hpp"

namespace nopx {

const char* to_string(ChipletStyle style) {
  return style == ChipletStyle::NvdlaLike ? "nvdla-like" : "shidiannao-like";
}

void ChipletConfig::validate() const {
  if (pes < 1) throw validation_error("chiplet config", "pe count must be >= 1");
  if (!(clock_mhz > 0.0)) throw validation_error("chiplet config", "clock must be > 0");
}

ChipletStyle style_for(Strategy strategy) {
  return strategy == Strategy::YP_XP ? ChipletStyle::ShidiannaoLike
                                     : ChipletStyle::NvdlaLike;
}

std::uint64_t compute_cycles(const ChipletShare& share, const PartitionPlan& plan,
                             const ChipletConfig& chiplet) {
  if (plan.elementwise) return ceil_div(share.elementwise_ops, chiplet.pes);
  if (share.macs == 0) return 0;
  std::uint64_t spatial = chiplet.style == ChipletStyle::NvdlaLike
                              ? checked_mul(share.k_local, plan.layer.c, "spatial extent")
                              : checked_mul(share.out_y_local, share.out_x_local,
                                            "spatial extent");
  if (spatial == 0) return 0;  // no spatial footprint means no assigned work
  std::uint64_t temporal = ceil_div(share.macs, spatial);
  return checked_mul(ceil_div(spatial, chiplet.pes), temporal, "compute cycles");
}

std::uint64_t layer_compute_cycles(const PartitionPlan& plan, const ChipletConfig& chiplet) {
  std::uint64_t worst = 0;
  for (std::uint64_t i = 0; i < plan.chiplets_used; ++i)
    worst = std::max(worst, compute_cycles(per_chiplet_assignment(plan, i), plan, chiplet));
  return worst;
}

}  // namespace nopx

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nopx {

enum class LayerKind { Conv2D, FullyConnected, UpConv, Residual };

// Classes drive per-class report aggregation and the adaptive strategy
// figures. Conv2D splits on activation width vs. channel depth: early layers
// with wide activations and few channels behave very differently from deep
// layers with many channels on a scaled-out system.
enum class LayerClass { HighRes, LowRes, Residual, FullyConnected, UpConv };

const char* to_string(LayerKind kind);
const char* to_string(LayerClass cls);
LayerKind layer_kind_from_string(const std::string& text);

// One DNN layer in the usual convolution nomenclature: n batch, k output
// channels, c input channels, y/x input height/width, r/s filter
// height/width. FullyConnected folds to y=x=r=s=1. Residual is the
// elementwise skip-connection add (two inputs, no filter). UpConv is a
// transposed convolution whose stride is the upsampling factor.
struct LayerSpec {
  std::string name;
  LayerKind kind = LayerKind::Conv2D;
  std::uint64_t n = 1, k = 1, c = 1;
  std::uint64_t y = 1, x = 1;
  std::uint64_t r = 1, s = 1;
  std::uint64_t stride = 1;
  std::uint64_t padding = 0;
  std::uint64_t bytes_per_element = 1;

  void validate() const;  // throws validation_error naming the layer
};

struct TensorVolumes {
  std::uint64_t input_bytes = 0;
  std::uint64_t input2_bytes = 0;  // second operand of a residual add, else 0
  std::uint64_t filter_bytes = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t macs = 0;
  std::uint64_t elementwise_ops = 0;  // residual adds, one PE-cycle each
  std::uint64_t out_y = 0, out_x = 0;
};

LayerClass classify_layer(const LayerSpec& layer);

// Analytical operand/result footprints and op counts. Convolution output
// extent follows floor((y + 2*padding - r) / stride) + 1; UpConv produces
// y*stride by x*stride and is charged at output resolution. Throws on
// arithmetic overflow so absurd dimensions fail loudly instead of wrapping.
TensorVolumes tensor_volumes(const LayerSpec& layer);

// Workload files: CSV with header
//   name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element
// or a JSON array of objects with the same field names. Dispatch is by file
// extension. Every parsed layer is validated before it is returned.
std::vector<LayerSpec> load_workload(const std::filesystem::path& path);
std::vector<LayerSpec> parse_workload_csv(std::istream& in);
std::vector<LayerSpec> parse_workload_json(std::istream& in);

}  // namespace nopx

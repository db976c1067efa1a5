#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nopx/error.hpp"
#include "nopx/workload.hpp"
#include "oracles.hpp"

using nopx::Error;
using nopx::LayerKind;
using nopx::LayerClass;
using nopx::LayerSpec;

namespace {

LayerSpec conv(std::string name, std::uint64_t n, std::uint64_t k, std::uint64_t c,
               std::uint64_t y, std::uint64_t x, std::uint64_t r, std::uint64_t s,
               std::uint64_t stride = 1, std::uint64_t padding = 0) {
  LayerSpec l;
  l.name = std::move(name);
  l.kind = LayerKind::Conv2D;
  l.n = n;
  l.k = k;
  l.c = c;
  l.y = y;
  l.x = x;
  l.r = r;
  l.s = s;
  l.stride = stride;
  l.padding = padding;
  return l;
}

std::filesystem::path write_temp(const std::string& filename, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / filename;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("layer classification follows kind, then activation width vs channel depth") {
  CHECK(classify_layer(conv("early", 1, 64, 3, 224, 224, 7, 7, 2, 3)) == LayerClass::HighRes);
  CHECK(classify_layer(conv("deep", 1, 512, 512, 7, 7, 3, 3, 1, 1)) == LayerClass::LowRes);
  // Equal depth and width counts as LowRes: the activations no longer dominate.
  CHECK(classify_layer(conv("boundary", 1, 64, 64, 64, 64, 3, 3)) == LayerClass::LowRes);

  LayerSpec fc;
  fc.name = "fc";
  fc.kind = LayerKind::FullyConnected;
  fc.k = 1000;
  fc.c = 2048;
  CHECK(classify_layer(fc) == LayerClass::FullyConnected);

  LayerSpec add;
  add.name = "add";
  add.kind = LayerKind::Residual;
  add.k = add.c = 256;
  add.y = add.x = 56;
  CHECK(classify_layer(add) == LayerClass::Residual);

  LayerSpec up;
  up.name = "up";
  up.kind = LayerKind::UpConv;
  up.k = 512;
  up.c = 1024;
  up.y = up.x = 28;
  up.r = up.s = 2;
  up.stride = 2;
  CHECK(classify_layer(up) == LayerClass::UpConv);
}

TEST_CASE("tensor volumes match hand counts") {
  SUBCASE("single filter window") {
    auto v = tensor_volumes(conv("one", 1, 1, 1, 3, 3, 3, 3));
    CHECK(v.out_y == 1);
    CHECK(v.out_x == 1);
    CHECK(v.macs == 9);
    CHECK(v.input_bytes == 9);
    CHECK(v.filter_bytes == 9);
    CHECK(v.output_bytes == 1);
    CHECK(v.elementwise_ops == 0);
  }

  SUBCASE("mid-network convolution") {
    auto v = tensor_volumes(conv("mid", 1, 64, 64, 56, 56, 3, 3, 1, 1));
    CHECK(v.out_y == 56);
    CHECK(v.out_x == 56);
    CHECK(v.macs == 115'605'504);  // 64 * 64 * 56 * 56 * 9
    CHECK(v.input_bytes == 200'704);
    CHECK(v.filter_bytes == 36'864);
    CHECK(v.output_bytes == 200'704);
  }

  SUBCASE("strided convolution with padding") {
    auto v = tensor_volumes(conv("stem", 1, 64, 3, 224, 224, 7, 7, 2, 3));
    CHECK(v.out_y == 112);  // (224 + 6 - 7) / 2 + 1
    CHECK(v.out_x == 112);
    CHECK(v.macs == 118'013'952);
  }

  SUBCASE("fully connected") {
    LayerSpec fc;
    fc.name = "fc";
    fc.kind = LayerKind::FullyConnected;
    fc.k = 1000;
    fc.c = 2048;
    auto v = tensor_volumes(fc);
    CHECK(v.macs == 2'048'000);
    CHECK(v.input_bytes == 2048);
    CHECK(v.filter_bytes == 2'048'000);
    CHECK(v.output_bytes == 1000);
  }

  SUBCASE("transposed convolution is charged at output resolution") {
    LayerSpec up;
    up.name = "up";
    up.kind = LayerKind::UpConv;
    up.k = 64;
    up.c = 128;
    up.y = up.x = 28;
    up.r = up.s = 2;
    up.stride = 2;
    auto v = tensor_volumes(up);
    CHECK(v.out_y == 56);
    CHECK(v.out_x == 56);
    CHECK(v.macs == 102'760'448);  // 64 * 128 * 56 * 56 * 4
    CHECK(v.output_bytes == 64 * 56 * 56);
  }

  SUBCASE("residual add has two operands and no filter") {
    LayerSpec add;
    add.name = "add";
    add.kind = LayerKind::Residual;
    add.k = add.c = 256;
    add.y = add.x = 56;
    auto v = tensor_volumes(add);
    CHECK(v.macs == 0);
    CHECK(v.filter_bytes == 0);
    CHECK(v.elementwise_ops == 802'816);
    CHECK(v.input_bytes == 802'816);
    CHECK(v.input2_bytes == v.input_bytes);
    CHECK(v.output_bytes == v.input_bytes);
  }
}

TEST_CASE("tensor volumes throw on arithmetic overflow") {
  auto big = conv("big", 1, 1ull << 16, 1ull << 16, 1ull << 16, 1ull << 16, 1, 1);
  CHECK_THROWS_AS(tensor_volumes(big), Error);
  try {
    tensor_volumes(big);
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Overflow);
  }
}

TEST_CASE("layer validation rejects malformed specs") {
  auto expect_validation = [](const LayerSpec& layer) {
    CHECK_THROWS_AS(layer.validate(), Error);
    try {
      layer.validate();
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Validation);
    }
  };

  auto zero_stride = conv("zs", 1, 8, 8, 8, 8, 3, 3);
  zero_stride.stride = 0;
  expect_validation(zero_stride);

  auto zero_dim = conv("zd", 1, 0, 8, 8, 8, 3, 3);
  expect_validation(zero_dim);

  LayerSpec nameless = conv("x", 1, 8, 8, 8, 8, 3, 3);
  nameless.name.clear();
  expect_validation(nameless);

  auto zero_bytes = conv("zb", 1, 8, 8, 8, 8, 3, 3);
  zero_bytes.bytes_per_element = 0;
  expect_validation(zero_bytes);

  // Filter window larger than the padded input.
  expect_validation(conv("overrun", 1, 8, 8, 3, 3, 5, 5));
  // ... but padding can rescue it.
  CHECK_NOTHROW(conv("padded", 1, 8, 8, 3, 3, 5, 5, 1, 1).validate());

  LayerSpec fc;
  fc.name = "fc";
  fc.kind = LayerKind::FullyConnected;
  fc.k = 10;
  fc.c = 10;
  fc.y = 2;
  expect_validation(fc);

  LayerSpec add;
  add.name = "add";
  add.kind = LayerKind::Residual;
  add.k = 8;
  add.c = 16;
  add.y = add.x = 4;
  expect_validation(add);

  add.c = 8;
  add.r = 2;
  expect_validation(add);
}

TEST_CASE("CSV workload parsing") {
  SUBCASE("parses rows, skipping comments and blank lines") {
    std::istringstream in(
        "# comment first\r\n"
        "\r\n"
        "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\r\n"
        "conv1, Conv2D, 1, 64, 3, 224, 224, 7, 7, 2, 3, 1\r\n"
        "# mid-file comment\n"
        "fc,FullyConnected,1,1000,2048,1,1,1,1,1,0,1\n");
    auto layers = nopx::parse_workload_csv(in);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0].name == "conv1");
    CHECK(layers[0].kind == LayerKind::Conv2D);
    CHECK(layers[0].k == 64);
    CHECK(layers[0].padding == 3);
    CHECK(layers[1].name == "fc");
    CHECK(layers[1].kind == LayerKind::FullyConnected);
  }

  SUBCASE("empty input yields an empty workload") {
    std::istringstream in("# nothing here\n");
    CHECK(nopx::parse_workload_csv(in).empty());
  }

  SUBCASE("rejects a wrong header") {
    std::istringstream in("layer,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n");
    try {
      nopx::parse_workload_csv(in);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Parse);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }

  SUBCASE("reports the line and field of a bad integer") {
    std::istringstream in(
        "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n"
        "conv1,Conv2D,1,sixty-four,3,224,224,7,7,2,3,1\n");
    try {
      nopx::parse_workload_csv(in);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Parse);
      std::string what = e.what();
      CHECK(what.find("line 2") != std::string::npos);
      CHECK(what.find("'k'") != std::string::npos);
    }
  }

  SUBCASE("rejects a row with the wrong field count") {
    std::istringstream in(
        "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n"
        "conv1,Conv2D,1,64,3\n");
    try {
      nopx::parse_workload_csv(in);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Parse);
    }
  }

  SUBCASE("rejects an unknown layer kind") {
    std::istringstream in(
        "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n"
        "conv1,Conv3D,1,64,3,224,224,7,7,2,3,1\n");
    try {
      nopx::parse_workload_csv(in);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Parse);
      CHECK(std::string(e.what()).find("Conv3D") != std::string::npos);
    }
  }

  SUBCASE("validates every parsed row") {
    std::istringstream in(
        "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n"
        "bad,Conv2D,1,64,3,224,224,7,7,0,3,1\n");
    try {
      nopx::parse_workload_csv(in);
      FAIL("expected validation error");
    } catch (const Error& e) {
      CHECK(e.code() == Error::Code::Validation);
      CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
  }
}

TEST_CASE("JSON workload parsing applies field defaults") {
  std::istringstream in(R"([
    {"name": "fc", "kind": "FullyConnected", "k": 10, "c": 20},
    {"name": "conv", "kind": "Conv2D", "n": 2, "k": 4, "c": 3, "y": 8, "x": 8,
     "r": 3, "s": 3, "stride": 1, "padding": 1, "bytes_per_element": 2}
  ])");
  auto layers = nopx::parse_workload_json(in);
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].n == 1);
  CHECK(layers[0].y == 1);
  CHECK(layers[0].bytes_per_element == 1);
  CHECK(layers[1].bytes_per_element == 2);
  CHECK(layers[1].padding == 1);

  std::istringstream not_array(R"({"name": "fc"})");
  CHECK_THROWS_AS(nopx::parse_workload_json(not_array), Error);

  std::istringstream missing_name(R"([{"kind": "Conv2D"}])");
  try {
    nopx::parse_workload_json(missing_name);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Parse);
  }
}

TEST_CASE("load_workload dispatches on extension and reports I/O failures") {
  auto csv_path = write_temp("nopx_test_workload.csv",
                             "name,kind,n,k,c,y,x,r,s,stride,padding,bytes_per_element\n"
                             "conv,Conv2D,1,4,2,6,6,3,3,1,0,1\n");
  auto layers = nopx::load_workload(csv_path);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0].k == 4);
  std::filesystem::remove(csv_path);

  auto json_path = write_temp("nopx_test_workload.json",
                              R"([{"name": "fc", "kind": "FullyConnected", "k": 5, "c": 7}])");
  layers = nopx::load_workload(json_path);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0].c == 7);
  std::filesystem::remove(json_path);

  try {
    nopx::load_workload("/nonexistent/nopx_missing.csv");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Io);
    CHECK(std::string(e.what()).find("nopx_missing.csv") != std::string::npos);
  }

  auto txt_path = write_temp("nopx_test_workload.txt", "hello\n");
  try {
    nopx::load_workload(txt_path);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Config);
  }
  std::filesystem::remove(txt_path);
}

TEST_CASE("bundled workloads load and classify as expected") {
  const std::filesystem::path src_dir = NOPX_SOURCE_DIR;

  auto resnet = nopx::load_workload(src_dir / "workloads" / "resnet50.csv");
  CHECK(resnet.size() == 70);
  CHECK(resnet.front().name == "conv1");
  CHECK(classify_layer(resnet.front()) == LayerClass::HighRes);
  CHECK(resnet.back().kind == LayerKind::FullyConnected);

  std::size_t residuals = 0, fcs = 0, highres = 0;
  for (const auto& layer : resnet) {
    CHECK_NOTHROW(layer.validate());
    switch (classify_layer(layer)) {
      case LayerClass::Residual: ++residuals; break;
      case LayerClass::FullyConnected: ++fcs; break;
      case LayerClass::HighRes: ++highres; break;
      default: break;
    }
  }
  CHECK(residuals == 16);  // one skip-connection add per bottleneck block
  CHECK(fcs == 1);
  CHECK(highres == 1);  // only the stem convolution sees wide activations

  auto unet = nopx::load_workload(src_dir / "workloads" / "unet.csv");
  CHECK(unet.size() == 23);
  std::size_t upconvs = 0;
  for (const auto& layer : unet) {
    CHECK_NOTHROW(layer.validate());
    if (layer.kind == LayerKind::UpConv) ++upconvs;
  }
  CHECK(upconvs == 4);
}

TEST_CASE("analytical mac counts equal brute-force loop-nest enumeration") {
  std::mt19937 rng(20240901);
  std::uniform_int_distribution<std::uint64_t> dim(1, 8);
  std::uniform_int_distribution<int> kind_pick(0, 3);

  for (int i = 0; i < 200; ++i) {
    LayerSpec l;
    l.name = "rand" + std::to_string(i);
    switch (kind_pick(rng)) {
      case 0: {
        l.kind = LayerKind::Conv2D;
        l.n = dim(rng);
        l.k = dim(rng);
        l.c = dim(rng);
        l.y = dim(rng);
        l.x = dim(rng);
        l.r = std::uniform_int_distribution<std::uint64_t>(1, l.y)(rng);
        l.s = std::uniform_int_distribution<std::uint64_t>(1, l.x)(rng);
        l.stride = std::uniform_int_distribution<std::uint64_t>(1, 3)(rng);
        l.padding = std::uniform_int_distribution<std::uint64_t>(0, 2)(rng);
        break;
      }
      case 1: {
        l.kind = LayerKind::UpConv;
        l.n = dim(rng);
        l.k = dim(rng);
        l.c = dim(rng);
        l.y = dim(rng);
        l.x = dim(rng);
        l.r = dim(rng);
        l.s = dim(rng);
        l.stride = std::uniform_int_distribution<std::uint64_t>(1, 3)(rng);
        break;
      }
      case 2: {
        l.kind = LayerKind::FullyConnected;
        l.n = dim(rng);
        l.k = dim(rng);
        l.c = dim(rng);
        break;
      }
      default: {
        l.kind = LayerKind::Residual;
        l.n = dim(rng);
        l.k = l.c = dim(rng);
        l.y = dim(rng);
        l.x = dim(rng);
        break;
      }
    }
    CAPTURE(l.name);
    CAPTURE(static_cast<int>(l.kind));
    auto v = tensor_volumes(l);
    CHECK(v.macs == nopx::oracle::macs(l));
    CHECK(v.elementwise_ops == nopx::oracle::elementwise_ops(l));
  }
}

TEST_CASE("mac count scales linearly with the batch dimension") {
  auto base = conv("base", 1, 6, 5, 9, 9, 3, 3, 2, 1);
  auto v1 = tensor_volumes(base);
  base.n = 4;
  auto v4 = tensor_volumes(base);
  CHECK(v4.macs == 4 * v1.macs);
  CHECK(v4.input_bytes == 4 * v1.input_bytes);
  CHECK(v4.output_bytes == 4 * v1.output_bytes);
  CHECK(v4.filter_bytes == v1.filter_bytes);  // weights are batch-invariant
}

#include "nopx/workload.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nopx/error.hpp"
#include "nopx/util.hpp"

namespace nopx {

const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Conv2D: return "Conv2D";
    case LayerKind::FullyConnected: return "FullyConnected";
    case LayerKind::UpConv: return "UpConv";
    case LayerKind::Residual: return "Residual";
  }
  return "?";
}

const char* to_string(LayerClass cls) {
  switch (cls) {
    case LayerClass::HighRes: return "HighRes";
    case LayerClass::LowRes: return "LowRes";
    case LayerClass::Residual: return "Residual";
    case LayerClass::FullyConnected: return "FullyConnected";
    case LayerClass::UpConv: return "UpConv";
  }
  return "?";
}

LayerKind layer_kind_from_string(const std::string& text) {
  if (text == "Conv2D") return LayerKind::Conv2D;
  if (text == "FullyConnected") return LayerKind::FullyConnected;
  if (text == "UpConv") return LayerKind::UpConv;
  if (text == "Residual") return LayerKind::Residual;
  throw validation_error("layer kind '" + text + "'",
                         "expected Conv2D, FullyConnected, UpConv or Residual");
}

void LayerSpec::validate() const {
  auto fail = [this](const std::string& why) {
    throw validation_error("layer '" + name + "'", why);
  };
  if (name.empty()) throw validation_error("layer", "empty name");
  if (n == 0 || k == 0 || c == 0 || y == 0 || x == 0 || r == 0 || s == 0)
    fail("all dimensions must be >= 1");
  if (stride == 0) fail("stride must be >= 1");
  if (bytes_per_element == 0) fail("bytes_per_element must be >= 1");
  switch (kind) {
    case LayerKind::FullyConnected:
      if (y != 1 || x != 1 || r != 1 || s != 1 || stride != 1)
        fail("FullyConnected requires y=x=r=s=1 and stride=1");
      break;
    case LayerKind::Residual:
      if (k != c) fail("Residual requires k=c");
      if (r != 1 || s != 1 || stride != 1)
        fail("Residual requires r=s=1 and stride=1");
      break;
    case LayerKind::Conv2D:
      if (y + 2 * padding < r || x + 2 * padding < s)
        fail("filter extends past the padded input");
      break;
    case LayerKind::UpConv:
      break;
  }
}

LayerClass classify_layer(const LayerSpec& layer) {
  switch (layer.kind) {
    case LayerKind::Residual: return LayerClass::Residual;
    case LayerKind::FullyConnected: return LayerClass::FullyConnected;
    case LayerKind::UpConv: return LayerClass::UpConv;
    case LayerKind::Conv2D: break;
  }
  return layer.c < layer.x ? LayerClass::HighRes : LayerClass::LowRes;
}

namespace {

std::uint64_t mul_many(std::initializer_list<std::uint64_t> factors, const char* what) {
  std::uint64_t acc = 1;
  for (std::uint64_t f : factors) acc = checked_mul(acc, f, what);
  return acc;
}

}  // namespace

TensorVolumes tensor_volumes(const LayerSpec& layer) {
  layer.validate();
  const std::uint64_t b = layer.bytes_per_element;
  TensorVolumes v;
  switch (layer.kind) {
    case LayerKind::Conv2D: {
      v.out_y = (layer.y + 2 * layer.padding - layer.r) / layer.stride + 1;
      v.out_x = (layer.x + 2 * layer.padding - layer.s) / layer.stride + 1;
      v.input_bytes = mul_many({layer.n, layer.c, layer.y, layer.x, b}, "input bytes");
      v.filter_bytes = mul_many({layer.k, layer.c, layer.r, layer.s, b}, "filter bytes");
      v.output_bytes = mul_many({layer.n, layer.k, v.out_y, v.out_x, b}, "output bytes");
      v.macs = mul_many({layer.n, layer.k, layer.c, v.out_y, v.out_x, layer.r, layer.s},
                        "mac count");
      break;
    }
    case LayerKind::UpConv: {
      v.out_y = checked_mul(layer.y, layer.stride, "output height");
      v.out_x = checked_mul(layer.x, layer.stride, "output width");
      v.input_bytes = mul_many({layer.n, layer.c, layer.y, layer.x, b}, "input bytes");
      v.filter_bytes = mul_many({layer.k, layer.c, layer.r, layer.s, b}, "filter bytes");
      v.output_bytes = mul_many({layer.n, layer.k, v.out_y, v.out_x, b}, "output bytes");
      v.macs = mul_many({layer.n, layer.k, layer.c, v.out_y, v.out_x, layer.r, layer.s},
                        "mac count");
      break;
    }
    case LayerKind::FullyConnected: {
      v.out_y = 1;
      v.out_x = 1;
      v.input_bytes = mul_many({layer.n, layer.c, b}, "input bytes");
      v.filter_bytes = mul_many({layer.k, layer.c, b}, "filter bytes");
      v.output_bytes = mul_many({layer.n, layer.k, b}, "output bytes");
      v.macs = mul_many({layer.n, layer.k, layer.c}, "mac count");
      break;
    }
    case LayerKind::Residual: {
      v.out_y = layer.y;
      v.out_x = layer.x;
      v.input_bytes = mul_many({layer.n, layer.c, layer.y, layer.x, b}, "input bytes");
      v.input2_bytes = v.input_bytes;
      v.output_bytes = v.input_bytes;
      v.elementwise_ops = mul_many({layer.n, layer.c, layer.y, layer.x}, "elementwise ops");
      break;
    }
  }
  return v;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::uint64_t parse_u64(const std::string& text, std::size_t line, const char* field) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw parse_error(line, std::string("field '") + field + "' is not an unsigned integer: '" +
                                text + "'");
  return value;
}

const std::vector<std::string> kCsvHeader = {
    "name", "kind", "n", "k", "c", "y", "x", "r", "s", "stride", "padding",
    "bytes_per_element"};

}  // namespace

std::vector<LayerSpec> parse_workload_csv(std::istream& in) {
  std::vector<LayerSpec> layers;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> fields = split_fields(body);
    if (!saw_header) {
      if (fields != kCsvHeader)
        throw parse_error(lineno,
                          "expected header 'name,kind,n,k,c,y,x,r,s,stride,padding,"
                          "bytes_per_element'");
      saw_header = true;
      continue;
    }
    if (fields.size() != kCsvHeader.size())
      throw parse_error(lineno, "expected " + std::to_string(kCsvHeader.size()) +
                                    " fields, got " + std::to_string(fields.size()));
    LayerSpec layer;
    layer.name = fields[0];
    try {
      layer.kind = layer_kind_from_string(fields[1]);
    } catch (const Error& e) {
      throw parse_error(lineno, e.what());
    }
    layer.n = parse_u64(fields[2], lineno, "n");
    layer.k = parse_u64(fields[3], lineno, "k");
    layer.c = parse_u64(fields[4], lineno, "c");
    layer.y = parse_u64(fields[5], lineno, "y");
    layer.x = parse_u64(fields[6], lineno, "x");
    layer.r = parse_u64(fields[7], lineno, "r");
    layer.s = parse_u64(fields[8], lineno, "s");
    layer.stride = parse_u64(fields[9], lineno, "stride");
    layer.padding = parse_u64(fields[10], lineno, "padding");
    layer.bytes_per_element = parse_u64(fields[11], lineno, "bytes_per_element");
    layer.validate();
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<LayerSpec> parse_workload_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("workload JSON: ") + e.what());
  }
  if (!doc.is_array()) throw parse_error("workload JSON must be an array of layer objects");
  std::vector<LayerSpec> layers;
  for (const auto& item : doc) {
    if (!item.is_object()) throw parse_error("workload JSON entries must be objects");
    LayerSpec layer;
    try {
      layer.name = item.at("name").get<std::string>();
      layer.kind = layer_kind_from_string(item.at("kind").get<std::string>());
      layer.n = item.value("n", std::uint64_t{1});
      layer.k = item.value("k", std::uint64_t{1});
      layer.c = item.value("c", std::uint64_t{1});
      layer.y = item.value("y", std::uint64_t{1});
      layer.x = item.value("x", std::uint64_t{1});
      layer.r = item.value("r", std::uint64_t{1});
      layer.s = item.value("s", std::uint64_t{1});
      layer.stride = item.value("stride", std::uint64_t{1});
      layer.padding = item.value("padding", std::uint64_t{0});
      layer.bytes_per_element = item.value("bytes_per_element", std::uint64_t{1});
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("workload JSON: ") + e.what());
    }
    layer.validate();
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<LayerSpec> load_workload(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open workload file: " + path.string());
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (ext == ".csv") return parse_workload_csv(in);
  if (ext == ".json") return parse_workload_json(in);
  throw config_error("unsupported workload extension '" + ext + "' (expected .csv or .json): " +
                     path.string());
}

}  // namespace nopx

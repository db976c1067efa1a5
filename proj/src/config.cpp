#include "nopx/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nopx/error.hpp"

namespace nopx {

namespace {

using nlohmann::json;

std::string normalized(const std::string& text) {
  std::string out;
  for (char c : text)
    out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

NopKind parse_nop_kind(const std::string& text) {
  std::string t = normalized(text);
  if (t == "wired-mesh" || t == "wired" || t == "mesh") return NopKind::WiredMesh;
  if (t == "wireless") return NopKind::Wireless;
  throw config_error("unknown nop kind '" + text + "' (valid: wired-mesh, wireless)");
}

NopModel nop_from_json(const json& obj, const std::string& fallback_label) {
  NopModel m;
  m.label = obj.value("label", fallback_label);
  if (!obj.contains("kind")) throw config_error("nop model '" + m.label + "' needs a kind");
  m.kind = parse_nop_kind(obj.at("kind").get<std::string>());
  m.multicast_capable = obj.value("multicast_capable", m.kind == NopKind::Wireless);
  if (!obj.contains("bandwidth_bytes_per_cycle"))
    throw config_error("nop model '" + m.label + "' needs bandwidth_bytes_per_cycle");
  m.bandwidth_bytes_per_cycle = obj.at("bandwidth_bytes_per_cycle").get<double>();
  m.injection_links = obj.value("injection_links", std::uint64_t{1});
  if (!obj.contains("per_bit_energy_pj"))
    throw config_error("nop model '" + m.label + "' needs per_bit_energy_pj");
  m.per_bit_energy_pj = obj.at("per_bit_energy_pj").get<double>();
  m.rx_per_bit_energy_pj = obj.value("rx_per_bit_energy_pj", 0.0);
  m.grid_exact_hops = obj.value("grid_exact_hops", false);
  m.validate();
  return m;
}

// A NoP reference is either a preset label or an inline model object.
NopModel resolve_nop(const json& ref, const NopPresets& presets, const std::string& role) {
  if (ref.is_string()) {
    const std::string label = ref.get<std::string>();
    if (const NopModel* m = presets.find(label)) return *m;
    throw config_error("unknown nop preset '" + label + "' for " + role +
                       " (available: " + presets.labels() + ")");
  }
  if (ref.is_object()) return nop_from_json(ref, role);
  throw config_error(role + " must be a preset label or a nop model object");
}

std::vector<TrxDesignPoint> anchors_from_json(const json& arr, const std::string& profile) {
  if (!arr.is_array())
    throw config_error("trx_anchors." + profile + " must be an array of design points");
  std::vector<TrxDesignPoint> out;
  for (const json& p : arr) {
    TrxDesignPoint point;
    point.datarate_gbps = p.at("datarate_gbps").get<double>();
    point.area_mm2 = p.at("area_mm2").get<double>();
    point.energy_pj_per_bit = p.at("energy_pj_per_bit").get<double>();
    out.push_back(point);
  }
  return out;
}

void apply_system(const json& obj, RunConfig& cfg) {
  SystemConfig& sys = cfg.system;
  bool chiplets_given = obj.contains("chiplets");
  bool ppc_given = obj.contains("pes_per_chiplet");
  sys.total_pes = obj.value("total_pes", sys.total_pes);
  if (chiplets_given) sys.chiplets = obj.at("chiplets").get<std::uint64_t>();
  if (ppc_given) sys.pes_per_chiplet = obj.at("pes_per_chiplet").get<std::uint64_t>();
  // Giving only one of the pair re-derives the other from total_pes.
  if (chiplets_given && !ppc_given && sys.chiplets >= 1 &&
      sys.total_pes % sys.chiplets == 0)
    sys.pes_per_chiplet = sys.total_pes / sys.chiplets;
  if (ppc_given && !chiplets_given && sys.pes_per_chiplet >= 1 &&
      sys.total_pes % sys.pes_per_chiplet == 0)
    sys.chiplets = sys.total_pes / sys.pes_per_chiplet;
  if (obj.contains("distribution_nop"))
    sys.distribution_nop = resolve_nop(obj.at("distribution_nop"), cfg.presets,
                                       "distribution_nop");
  if (obj.contains("collection_nop"))
    sys.collection_nop = resolve_nop(obj.at("collection_nop"), cfg.presets,
                                     "collection_nop");
  sys.sram_bytes = obj.value("sram_bytes", sys.sram_bytes);
  sys.clock_mhz = obj.value("clock_mhz", sys.clock_mhz);
}

void apply_budget(const json& obj, BudgetConstants& b) {
  b.pe_mem_area_mm2 = obj.value("pe_mem_area_mm2", b.pe_mem_area_mm2);
  b.pe_mem_power_mw = obj.value("pe_mem_power_mw", b.pe_mem_power_mw);
  b.router_area_mm2 = obj.value("router_area_mm2", b.router_area_mm2);
  b.router_power_mw = obj.value("router_power_mw", b.router_power_mw);
  b.sram_area_mm2 = obj.value("sram_area_mm2", b.sram_area_mm2);
  b.sram_power_mw = obj.value("sram_power_mw", b.sram_power_mw);
  b.tx_area_mm2 = obj.value("tx_area_mm2", b.tx_area_mm2);
  b.tx_power_mw = obj.value("tx_power_mw", b.tx_power_mw);
  b.rx_share = obj.value("rx_share", b.rx_share);
}

}  // namespace

const char* to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

std::optional<Strategy> parse_strategy(const std::string& text) {
  std::string t = normalized(text);
  if (t == "kp-cp") return Strategy::KP_CP;
  if (t == "np-cp") return Strategy::NP_CP;
  if (t == "yp-xp") return Strategy::YP_XP;
  if (t == "adaptive") return std::nullopt;
  throw config_error("unknown strategy '" + text +
                     "' (valid: kp-cp, np-cp, yp-xp, adaptive)");
}

OutputFormat parse_format(const std::string& text) {
  std::string t = normalized(text);
  if (t == "csv") return OutputFormat::Csv;
  if (t == "json") return OutputFormat::Json;
  throw config_error("unknown output format '" + text + "' (valid: csv, json)");
}

TrxProfile parse_trx_profile(const std::string& text) {
  std::string t = normalized(text);
  if (t == "conservative" || t == "c") return TrxProfile::Conservative;
  if (t == "aggressive" || t == "a") return TrxProfile::Aggressive;
  throw config_error("unknown trx profile '" + text +
                     "' (valid: conservative, aggressive)");
}

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error("config parse error in " + origin + ": " + e.what());
  }
  if (!doc.is_object()) throw config_error("config root in " + origin + " must be an object");

  RunConfig cfg;
  try {
    if (doc.contains("nop_presets")) {
      const json& arr = doc.at("nop_presets");
      if (!arr.is_array()) throw config_error("nop_presets must be an array");
      for (const json& obj : arr)
        cfg.presets.upsert(
            nop_from_json(obj, "preset-" + std::to_string(cfg.presets.models.size())));
    }
    if (doc.contains("trx_anchors")) {
      const json& obj = doc.at("trx_anchors");
      if (!obj.is_object())
        throw config_error("trx_anchors must be an object with profile arrays");
      if (obj.contains("conservative"))
        cfg.anchors.conservative = anchors_from_json(obj.at("conservative"), "conservative");
      if (obj.contains("aggressive"))
        cfg.anchors.aggressive = anchors_from_json(obj.at("aggressive"), "aggressive");
    }
    if (doc.contains("budget")) apply_budget(doc.at("budget"), cfg.budget);
    if (doc.contains("system")) apply_system(doc.at("system"), cfg);
    if (doc.contains("workload")) cfg.workload_path = doc.at("workload").get<std::string>();
    if (doc.contains("strategy"))
      cfg.strategy = parse_strategy(doc.at("strategy").get<std::string>());
    if (doc.contains("out")) cfg.output_path = doc.at("out").get<std::string>();
    if (doc.contains("format")) cfg.format = parse_format(doc.at("format").get<std::string>());
    if (doc.contains("trx_profile"))
      cfg.trx_profile = parse_trx_profile(doc.at("trx_profile").get<std::string>());
  } catch (const json::exception& e) {
    throw config_error("config error in " + origin + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str(), path);
}

}  // namespace nopx

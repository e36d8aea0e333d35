#include <fmt/format.h>

#include <fstream>
#include <map>

#include "gevrey_bbm/rng.h"
#include "internal.h"

namespace gevrey_bbm::cli {
namespace {

using Table = std::vector<std::pair<std::string, std::string>>;

const std::string kSigmaGrid = "0.01,0.0176,0.031,0.0547,0.0964,0.17,0.3";

Table data_keys() {
  return {{"profile", "gaussian"}, {"amplitude", "-1"}, {"width", "2"}, {"cosine_mode", "1"}};
}

Table grid_keys(const std::string& n, const std::string& length) {
  return {{"n_points", n}, {"domain_length", length}};
}

Table join(std::initializer_list<Table> parts) {
  Table out;
  for (const Table& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::map<std::string, Table>& tables() {
  static const std::map<std::string, Table> t = [] {
    const std::string seed = std::to_string(kDefaultSeed);
    std::map<std::string, Table> m;
    m["simulate"] = join({grid_keys("256", "64"), data_keys(),
                          {{"alpha", "2"},
                           {"dt", "0.001"},
                           {"t_end", "10"},
                           {"sigma", "0.1"},
                           {"sample_every", "100"},
                           {"linear_only", "false"},
                           {"noise_floor", "1e-14"},
                           {"seed", seed},
                           {"output_dir", "out"}}});
    m["verify-identities"] = {{"k_max", "20"},
                              {"coordinate_range", "10"},
                              {"symbolic_k_max", "20"},
                              {"fab_samples", "10000"},
                              {"fab_sigmas", "0.01,0.1,0.5"},
                              {"triad_range", "20"},
                              {"psi_samples", "10000"},
                              {"seed", seed},
                              {"output_dir", "out"}};
    m["conservation"] = join({grid_keys("256", "64"), data_keys(),
                              {{"alpha", "2"},
                               {"dt", "0.001"},
                               {"sigma_list", kSigmaGrid},
                               {"delta", "0"},
                               {"calibration_file", "data/calibration.cfg"},
                               {"calibrate", "false"},
                               {"calib_alphas", "2,3"},
                               {"calib_sigmas", "0.4,0.5"},
                               {"bilinear_samples", "200"},
                               {"bilinear_band", "8"},
                               {"resolutions", "64,128,256"},
                               {"series_every", "10"},
                               {"seed", seed},
                               {"output_dir", "out"}}});
    m["radius"] = join({grid_keys("512", "128"), data_keys(),
                        {{"alpha", "2"},
                         {"dt", "0.05"},
                         {"t_end", "100"},
                         {"sigma", "0.1"},
                         {"sample_every", "20"},
                         {"linear_only", "false"},
                         {"noise_floor", "1e-14"},
                         {"t_min", "1"},
                         {"seed", seed},
                         {"output_dir", "out"}}});
    m["schedule"] = join({grid_keys("256", "64"), data_keys(),
                          {{"alpha", "2"},
                           {"horizons", "1,2,5,10,20,50,100,200,500,1000,2000,5000,10000"},
                           {"sigma0", "0.5"},
                           {"c1", ""},
                           {"c2", ""},
                           {"initial_norm", ""},
                           {"calibration_file", "data/calibration.cfg"},
                           {"check_trajectory", "false"},
                           {"dt", "0.01"},
                           {"sample_every", "10"},
                           {"seed", seed},
                           {"output_dir", "out"}}});
    m["sweep"] = join({grid_keys("256", "64"), data_keys(),
                       {{"dt", "0.001"},
                        {"alpha_list", "2,3"},
                        {"sigma_list", kSigmaGrid},
                        {"delta", "0"},
                        {"calibration_file", "data/calibration.cfg"},
                        {"jobs", "1"},
                        {"seed", seed},
                        {"output_dir", "out"}}});
    return m;
  }();
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "verify-identities", "conservation",
                                              "radius",   "schedule",          "sweep"};
  return names;
}

const std::vector<std::pair<std::string, std::string>>& default_table(const std::string& command) {
  const auto it = tables().find(command);
  if (it == tables().end()) throw_invalid_input("unknown command '" + command + "'");
  return it->second;
}

RunConfig resolve_config(const std::string& command, const std::string& config_path,
                         const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.command = command;
  cfg.config_path = config_path;
  const auto& table = default_table(command);
  for (const auto& [k, v] : table) cfg.values.set(k, v);
  auto known = [&](const std::string& key) { return cfg.values.has(key); };

  if (!config_path.empty()) {
    const KeyValueFile file = KeyValueFile::load(config_path);
    for (const auto& [k, v] : file.values()) {
      if (!known(k)) {
        throw_invalid_input(fmt::format("{}: unknown key '{}' for command {}", config_path, k,
                                        command));
      }
      cfg.values.set(k, v);
    }
  }
  for (const auto& [k, v] : overrides) {
    if (!known(k)) throw_invalid_input(fmt::format("unknown option --{} for command {}", k, command));
    cfg.values.set(k, v);
  }
  return cfg;
}

Grid grid_from(const KeyValueFile& v) {
  return Grid(static_cast<int>(v.get_int("n_points")), v.get_double("domain_length"));
}

InitialData data_from(const KeyValueFile& v) {
  InitialData d;
  d.profile = parse_profile(v.get("profile"));
  d.amplitude = v.get_double("amplitude");
  d.width = v.get_double("width");
  d.cosine_mode = static_cast<int>(v.get_int("cosine_mode"));
  return d;
}

ModelParams params_from(const KeyValueFile& v) {
  ModelParams p(v.get_double("alpha"), grid_from(v), v.get_double("dt"),
                v.has("t_end") ? v.get_double("t_end") : 0.0);
  p.linear_only = v.get_bool("linear_only", false);
  p.validate();
  return p;
}

std::vector<double> list_from(const KeyValueFile& v, const std::string& key) {
  return v.get_double_list(key);
}

bool is_set(const KeyValueFile& v, const std::string& key) {
  return v.has(key) && !v.get(key).empty();
}

std::filesystem::path output_dir(const KeyValueFile& v) {
  std::filesystem::path dir(v.get("output_dir"));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw_invalid_input("cannot create output directory '" + dir.string() + "'");
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_invalid_input("cannot write '" + path.string() + "'");
  f << text;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

Json report_header(const RunConfig& cfg) {
  Json config = Json::object();
  for (const auto& [k, v] : cfg.values.values()) config[k] = v;
  Json doc;
  doc["command"] = cfg.command;
  doc["config"] = config;
  doc["seed"] = cfg.values.get_uint64("seed");
  return doc;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) { return fmt::format("{}", v); }

}  // namespace gevrey_bbm::cli

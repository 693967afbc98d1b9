// Strict JSON run configuration: every key is known, every violation names
// its key path, and an empty document yields the documented defaults.

#include "magsq/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "magsq/errors.hpp"

namespace magsq {

using nlohmann::json;

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(steps));
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < steps; ++i)
    out.push_back(start + (stop - start) * static_cast<double>(i) / (steps - 1));
  return out;
}

void RunConfig::validate() const {
  model.validate();
  if (grid_n < 1) throw ConfigError("lattice.grid must be >= 1");
  if (path.labels.size() < 2) throw ConfigError("path.points needs >= 2 labels");
  if (path.samples_per_segment < 1) throw ConfigError("path.samples_per_segment must be >= 1");
  auto check_sweep = [](const SweepRange& s, const std::string& key) {
    if (s.steps < 1) throw ConfigError(key + ".steps must be >= 1");
    if (s.steps > 1 && s.stop == s.start) throw ConfigError(key + ": degenerate range");
  };
  check_sweep(sweep_kBT, "sweep.kBT");
  check_sweep(sweep_Kz, "sweep.Kz");
  if (sweep_kBT.start < 0.0 || sweep_kBT.stop < 0.0) throw ConfigError("sweep.kBT must be >= 0");
  if (sweep_Kz.start < 0.0 || sweep_Kz.stop < 0.0) throw ConfigError("sweep.Kz must be >= 0");
  for (const auto& [n, m] : states)
    if (n < 0 || m < 0) throw ConfigError("states entries must be >= 0");
  if (!(eps_trunc > 0.0)) throw ConfigError("eps_trunc must be > 0");
  if (!(solver.tol > 0.0)) throw ConfigError("solver.tol must be > 0");
  if (solver.max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
  if (!(solver.damping > 0.0) || solver.damping > 1.0)
    throw ConfigError("solver.damping must be in (0, 1]");
  if (!(T_floor > 0.0)) throw ConfigError("solver.T_floor must be > 0");
  if (!(K_floor > 0.0)) throw ConfigError("solver.K_floor must be > 0");
  if (oracle_cutoff < 4) throw ConfigError("oracle.cutoff must be >= 4");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  const std::vector<std::string> known = {"fig1", "fig2", "fig3",  "fig4",  "fig5",  "fig6",
                                          "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"};
  for (const auto& f : figures)
    if (std::find(known.begin(), known.end(), f) == known.end())
      throw ConfigError("outputs.figures: unknown figure id '" + f + "'");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!known.count(key))
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
}

double get_num(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError("'" + where + "." + key + "' must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError("'" + where + "." + key + "' must be an integer");
  return obj[key].get<int>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (trimmed.empty()) {
    cfg.validate();
    return cfg;
  }

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("config syntax error at line " + std::to_string(line) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown(root, {"model", "lattice", "path", "sweep", "states", "eps_trunc", "solver",
                        "oracle", "outputs", "workers", "seed"},
                 "");

  if (root.contains("model")) {
    const json& m = root["model"];
    reject_unknown(m, {"S", "J", "Kz", "kBT"}, "model");
    cfg.model.S = get_num(m, "S", cfg.model.S, "model");
    cfg.model.J = get_num(m, "J", cfg.model.J, "model");
    cfg.model.Kz = get_num(m, "Kz", cfg.model.Kz, "model");
    cfg.model.kBT = get_num(m, "kBT", cfg.model.kBT, "model");
  }
  if (root.contains("lattice")) {
    const json& l = root["lattice"];
    reject_unknown(l, {"kind", "a_c", "grid"}, "lattice");
    if (l.contains("kind")) {
      const std::string kind = l["kind"].get<std::string>();
      if (kind == "square")
        cfg.model.lattice.kind = LatticeKind::Square;
      else if (kind == "hexagonal")
        cfg.model.lattice.kind = LatticeKind::Hexagonal;
      else
        throw ConfigError("'lattice.kind' must be 'square' or 'hexagonal'");
    }
    cfg.model.lattice.a_c = get_num(l, "a_c", cfg.model.lattice.a_c, "lattice");
    cfg.grid_n = get_int(l, "grid", cfg.grid_n, "lattice");
  }
  if (root.contains("path")) {
    const json& pp = root["path"];
    reject_unknown(pp, {"points", "samples_per_segment"}, "path");
    if (pp.contains("points")) {
      if (!pp["points"].is_array()) throw ConfigError("'path.points' must be an array");
      cfg.path.labels.clear();
      for (const auto& lbl : pp["points"]) cfg.path.labels.push_back(lbl.get<std::string>());
    }
    cfg.path.samples_per_segment =
        get_int(pp, "samples_per_segment", cfg.path.samples_per_segment, "path");
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown(s, {"kBT", "Kz"}, "sweep");
    auto read_range = [&](const char* key, SweepRange& out) {
      if (!s.contains(key)) return;
      const json& r = s[key];
      reject_unknown(r, {"start", "stop", "steps"}, std::string("sweep.") + key);
      out.start = get_num(r, "start", out.start, std::string("sweep.") + key);
      out.stop = get_num(r, "stop", out.stop, std::string("sweep.") + key);
      out.steps = get_int(r, "steps", out.steps, std::string("sweep.") + key);
    };
    read_range("kBT", cfg.sweep_kBT);
    read_range("Kz", cfg.sweep_Kz);
  }
  if (root.contains("states")) {
    if (!root["states"].is_array()) throw ConfigError("'states' must be an array of [n, m]");
    cfg.states.clear();
    for (const auto& st : root["states"]) {
      if (!st.is_array() || st.size() != 2)
        throw ConfigError("'states' entries must be [n, m] pairs");
      cfg.states.emplace_back(st[0].get<int>(), st[1].get<int>());
    }
  }
  if (root.contains("eps_trunc")) cfg.eps_trunc = root["eps_trunc"].get<double>();
  if (root.contains("solver")) {
    const json& s = root["solver"];
    reject_unknown(s, {"tol", "max_iter", "damping", "renormalize_uv", "T_floor", "K_floor"},
                   "solver");
    cfg.solver.tol = get_num(s, "tol", cfg.solver.tol, "solver");
    cfg.solver.max_iter = get_int(s, "max_iter", cfg.solver.max_iter, "solver");
    cfg.solver.damping = get_num(s, "damping", cfg.solver.damping, "solver");
    if (s.contains("renormalize_uv")) cfg.solver.renormalize_uv = s["renormalize_uv"].get<bool>();
    cfg.T_floor = get_num(s, "T_floor", cfg.T_floor, "solver");
    cfg.K_floor = get_num(s, "K_floor", cfg.K_floor, "solver");
  }
  if (root.contains("oracle")) {
    const json& o = root["oracle"];
    reject_unknown(o, {"cutoff"}, "oracle");
    cfg.oracle_cutoff = get_int(o, "cutoff", cfg.oracle_cutoff, "oracle");
  }
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    reject_unknown(o, {"dir", "figures"}, "outputs");
    if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
    if (o.contains("figures")) {
      if (!o["figures"].is_array()) throw ConfigError("'outputs.figures' must be an array");
      cfg.figures.clear();
      for (const auto& f : o["figures"]) cfg.figures.push_back(f.get<std::string>());
    }
  }
  if (root.contains("workers")) cfg.workers = get_int(root, "workers", cfg.workers, "");
  if (root.contains("seed")) cfg.seed = root["seed"].get<long long>();

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["model"] = {{"S", cfg.model.S}, {"J", cfg.model.J}, {"Kz", cfg.model.Kz},
                {"kBT", cfg.model.kBT}};
  j["lattice"] = {
      {"kind", cfg.model.lattice.kind == LatticeKind::Square ? "square" : "hexagonal"},
      {"a_c", cfg.model.lattice.a_c},
      {"grid", cfg.grid_n}};
  j["path"] = {{"points", cfg.path.labels},
               {"samples_per_segment", cfg.path.samples_per_segment}};
  j["sweep"] = {
      {"kBT", {{"start", cfg.sweep_kBT.start}, {"stop", cfg.sweep_kBT.stop},
               {"steps", cfg.sweep_kBT.steps}}},
      {"Kz", {{"start", cfg.sweep_Kz.start}, {"stop", cfg.sweep_Kz.stop},
              {"steps", cfg.sweep_Kz.steps}}}};
  json states = json::array();
  for (const auto& [n, m] : cfg.states) states.push_back({n, m});
  j["states"] = states;
  j["eps_trunc"] = cfg.eps_trunc;
  j["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"damping", cfg.solver.damping},
                 {"renormalize_uv", cfg.solver.renormalize_uv},
                 {"T_floor", cfg.T_floor},
                 {"K_floor", cfg.K_floor}};
  j["oracle"] = {{"cutoff", cfg.oracle_cutoff}};
  j["outputs"] = {{"dir", cfg.out_dir}, {"figures", cfg.figures}};
  j["workers"] = cfg.workers;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

}  // namespace magsq

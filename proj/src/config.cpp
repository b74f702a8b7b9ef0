#include "optomag/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace optomag {

using nlohmann::json;

const Axis* RunConfig::find_axis(const std::string& name) const {
  for (const auto& a : axes)
    if (a.name == name) return &a;
  return nullptr;
}

namespace {

// Presets put ω_c at 0, so mu reads directly as μ - ω_c in units of g_a.
RunConfig lobes_preset(double g_m, double delta_m) {
  RunConfig c;
  c.command = "lobes";
  c.params.g_m = g_m;
  c.params.delta_m = delta_m;
  c.params.n_max = 20;
  c.axes = {{"delta_a", -3.0, 3.0, 121}};
  c.n_list = {0, 1, 2, 3, 4};
  return c;
}

RunConfig phase_preset(double g_m, double delta_a, double delta_m) {
  RunConfig c;
  c.command = "phase-diagram";
  c.params.g_m = g_m;
  c.params.delta_a = delta_a;
  c.params.delta_m = delta_m;
  c.params.n_max = 8;
  c.axes = {{"kappa", 0.0, 2.0 / c.params.z, 60}, {"mu", -3.5, 0.0, 60}};
  return c;
}

RunConfig observables_preset(double g_m, double delta_a, double delta_m) {
  RunConfig c;
  c.command = "observables";
  c.params.g_m = g_m;
  c.params.delta_a = delta_a;
  c.params.delta_m = delta_m;
  c.params.kappa = 0.01 / c.params.z;
  c.params.n_max = 12;
  c.axes = {{"mu", -3.0, 0.0, 151}};
  return c;
}

RunConfig repulsion_preset(const Axis& axis, double g_m, double delta_a) {
  RunConfig c;
  c.command = "repulsion";
  c.params.g_m = g_m;
  c.params.delta_a = delta_a;
  c.params.n_max = 20;
  c.axes = {axis};
  c.n_list = {0, 1, 2, 3};
  return c;
}

const std::map<std::string, RunConfig>& presets() {
  static const std::map<std::string, RunConfig> table = [] {
    std::map<std::string, RunConfig> t;
    t["fig2a"] = lobes_preset(0.8, 0.0);
    t["fig2b"] = lobes_preset(0.8, 0.5);
    t["fig2c"] = lobes_preset(0.8, 1.0);
    t["fig2d"] = lobes_preset(0.8, -0.5);
    t["fig2e"] = lobes_preset(0.8, -1.0);
    t["fig3a"] = lobes_preset(0.0, 0.5);
    t["fig3b"] = lobes_preset(0.5, 0.5);
    t["fig3c"] = lobes_preset(1.0, 0.5);
    t["fig3d"] = lobes_preset(1.2, 0.5);
    t["fig5a"] = phase_preset(0.0, 0.0, 0.0);
    t["fig5b"] = phase_preset(0.2, 0.0, 0.0);
    t["fig5c"] = phase_preset(0.8, 0.0, 0.0);
    t["fig5d"] = phase_preset(1.2, 0.0, 0.0);
    t["fig6a"] = phase_preset(0.2, 0.5, 0.0);
    t["fig6b"] = phase_preset(0.2, 0.5, -0.5);
    t["fig6c"] = phase_preset(0.2, 0.5, 0.5);
    t["fig6d"] = phase_preset(0.2, 0.5, -1.0);
    t["fig6e"] = phase_preset(0.2, 0.5, 1.0);
    t["fig7a"] = observables_preset(0.8, 0.5, 0.5);
    t["fig7b"] = observables_preset(0.2, 0.5, 0.0);
    t["fig8a"] = repulsion_preset({"g_m", 0.0, 1.2, 61}, 0.0, 0.0);
    t["fig8b"] = repulsion_preset({"delta_m", -1.0, 1.0, 81}, 0.2, 0.5);
    for (auto& [name, cfg] : t) cfg.preset = name;
    return t;
  }();
  return table;
}

template <typename T>
void read(const json& j, const char* key, T& out, std::vector<std::string>& errors) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    errors.push_back(std::string(key) + ": wrong type");
  }
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, cfg] : presets()) out.push_back(name);
  return out;
}

RunConfig preset_config(const std::string& name) {
  const auto& t = presets();
  const auto it = t.find(name);
  if (it == t.end()) throw ConfigError({"preset: unknown preset '" + name + "'"});
  return it->second;
}

RunConfig apply_config_json(const std::string& json_text, RunConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"config: top level must be an object"});

  std::vector<std::string> errors;
  if (j.contains("preset")) {
    std::string name;
    read(j, "preset", name, errors);
    if (errors.empty()) {
      const std::string keep_command = base.command;
      base = preset_config(name);
      if (!keep_command.empty()) base.command = keep_command;
    }
  }
  auto& p = base.params;
  read(j, "command", base.command, errors);
  read(j, "omega_c", p.omega_c, errors);
  read(j, "delta_a", p.delta_a, errors);
  read(j, "delta_m", p.delta_m, errors);
  read(j, "g_a", p.g_a, errors);
  read(j, "g_m", p.g_m, errors);
  read(j, "mu", p.mu, errors);
  read(j, "kappa", p.kappa, errors);
  read(j, "z", p.z, errors);
  read(j, "n_max", p.n_max, errors);
  read(j, "n_list", base.n_list, errors);
  read(j, "output", base.output_path, errors);
  read(j, "plot", base.emit_plot, errors);
  read(j, "threads", base.threads, errors);
  read(j, "scan_points", base.minimizer.scan_points, errors);
  read(j, "psi_tolerance", base.minimizer.psi_tolerance, errors);
  read(j, "phase_tolerance", base.minimizer.phase_tolerance, errors);

  if (j.contains("axes")) {
    if (!j["axes"].is_array()) {
      errors.emplace_back("axes: must be an array");
    } else {
      std::vector<Axis> axes;
      for (std::size_t i = 0; i < j["axes"].size(); ++i) {
        const auto& a = j["axes"][i];
        const std::string where = "axes[" + std::to_string(i) + "]";
        try {
          axes.push_back({a.at("name").get<std::string>(), a.at("min").get<double>(),
                          a.at("max").get<double>(), a.at("count").get<int>()});
        } catch (const json::exception&) {
          errors.push_back(where + ": needs name, min, max, count");
        }
      }
      // Listed axes replace same-named ones and keep the others.
      for (const auto& a : axes) {
        auto it = std::find_if(base.axes.begin(), base.axes.end(),
                               [&](const Axis& b) { return b.name == a.name; });
        if (it != base.axes.end()) *it = a;
        else base.axes.push_back(a);
      }
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"config: cannot read '" + path + "'"});
  std::ostringstream s;
  s << f.rdbuf();
  return apply_config_json(s.str(), std::move(base));
}

void validate_run_config(const RunConfig& c) {
  std::vector<std::string> errors;
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    errors.push_back("command: unknown command '" + c.command + "'");
  try {
    validate_params(c.params);
  } catch (const ParamError& e) {
    for (const auto& v : e.violations()) errors.push_back("params: " + v);
  }
  for (const auto& a : c.axes) {
    if (a.count < 1) errors.push_back("axes." + a.name + ": count must be at least 1");
    if (!std::isfinite(a.min) || !std::isfinite(a.max))
      errors.push_back("axes." + a.name + ": bounds must be finite");
  }
  auto need = [&](const char* axis) {
    if (!c.find_axis(axis)) errors.push_back(c.command + ": needs a '" + axis + "' axis");
  };
  if (c.command == "phase-diagram") {
    need("kappa");
    need("mu");
  } else if (c.command == "lobes") {
    need("delta_a");
  } else if (c.command == "observables") {
    need("mu");
  } else if (c.command == "repulsion") {
    if (!c.find_axis("g_m") && !c.find_axis("delta_m"))
      errors.emplace_back("repulsion: needs a 'g_m' or 'delta_m' axis");
  }
  if (c.command == "lobes" || c.command == "repulsion") {
    if (c.n_list.empty()) errors.emplace_back("n_list: must be nonempty");
    for (int N : c.n_list)
      if (N < 0 || N + 1 > c.params.n_max)
        errors.push_back("n_list: N=" + std::to_string(N) + " needs N+1 <= n_max");
  }
  if (c.threads < 1) errors.emplace_back("threads: must be at least 1");
  if (c.minimizer.scan_points < 3) errors.emplace_back("scan_points: must be at least 3");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

}  // namespace optomag

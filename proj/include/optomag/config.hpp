// config.hpp - run configuration, JSON loading and built-in figure presets

#pragma once

#include <string>
#include <vector>

#include "optomag/errors.hpp"
#include "optomag/meanfield.hpp"
#include "optomag/model.hpp"
#include "optomag/sweep.hpp"

namespace optomag {

inline const std::vector<std::string> kCommands = {"lobes",     "phase-diagram", "observables",
                                                   "repulsion", "analytic",      "verify"};

struct RunConfig {
  std::string command;
  std::string preset;
  ModelParams params;
  std::vector<Axis> axes;
  std::vector<int> n_list{0, 1, 2, 3};
  std::string output_path;
  bool emit_plot{false};
  int threads{1};
  MinimizerOptions minimizer;

  const Axis* find_axis(const std::string& name) const;
};

/// Field-level configuration problems, one message each.
class ConfigError : public ParamError {
 public:
  using ParamError::ParamError;
};

std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
RunConfig preset_config(const std::string& name);

/// Overlays a JSON document onto `base`. Keys mirror ModelParams fields plus
/// command, preset, axes [{name, min, max, count}], n_list, output, plot,
/// threads, scan_points, psi_tolerance, phase_tolerance. A "preset" key
/// restarts from that preset before the remaining keys are applied.
RunConfig apply_config_json(const std::string& json_text, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Throws ConfigError listing every problem (unknown command, missing axes, bad params).
void validate_run_config(const RunConfig& config);

}  // namespace optomag

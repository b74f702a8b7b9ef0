// sweep.hpp - parameter grids, concurrent evaluation and CSV persistence

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "optomag/meanfield.hpp"
#include "optomag/model.hpp"

namespace optomag {

inline constexpr const char* kEngineVersion = "optomag 1.0.0";

struct Axis {
  std::string name;  // a ModelParams field: kappa, mu, delta_a, delta_m, g_m, g_a, omega_c
  double min{0.0};
  double max{0.0};
  int count{1};

  /// Grid value at index i; the single formula used everywhere, so rows
  /// reconstruct bit-exactly from (axis, index).
  double value(int i) const {
    return count == 1 ? min : min + (max - min) * static_cast<double>(i) / (count - 1);
  }

  bool operator==(const Axis&) const = default;
};

/// Writes `value` into the ModelParams field named by `name`; throws on unknown names.
void set_param(ModelParams& p, const std::string& name, double value);

struct SweepRow {
  std::vector<int> index;           // one entry per axis
  std::vector<double> values;       // aligned with SweepResult::value_columns
  std::vector<std::string> labels;  // aligned with SweepResult::label_columns
};

struct SweepMetadata {
  std::string command;
  std::string preset;
  ModelParams params;
  MinimizerOptions minimizer;
  std::string engine_version{kEngineVersion};
  double wall_seconds{0.0};
  int threads{1};
  std::size_t failed_cells{0};
};

struct SweepResult {
  std::vector<Axis> axes;
  std::vector<std::string> value_columns;
  std::vector<std::string> label_columns;
  std::vector<SweepRow> rows;
  SweepMetadata metadata;

  std::size_t column(const std::string& name) const;
  double value(std::size_t row, const std::string& name) const {
    return rows[row].values[column(name)];
  }
  std::size_t label_column(const std::string& name) const;
};

struct SweepOptions {
  int threads{1};
  MinimizerOptions minimizer{};
};

/// Mean-field minimization over the (κ, μ) grid; κ is the outer index.
SweepResult sweep_phase_diagram(const ModelParams& p, const Axis& kappa_axis, const Axis& mu_axis,
                                const SweepOptions& opts = {});

/// κ → 0 lobe boundaries μ_N(Δ_a) for every N in n_list.
SweepResult sweep_lobes(const ModelParams& p, const Axis& delta_a_axis,
                        const std::vector<int>& n_list, const SweepOptions& opts = {});

/// Mean-field observables along μ at the κ held in p.
SweepResult sweep_observables(const ModelParams& p, const Axis& mu_axis,
                              const SweepOptions& opts = {});

/// U_N along a g_m or delta_m axis for every N in n_list.
SweepResult sweep_repulsion(const ModelParams& p, const Axis& axis, const std::vector<int>& n_list,
                            const SweepOptions& opts = {});

/// '#' metadata block, header, then one line per row with 17 significant digits.
void write_csv(std::ostream& out, const SweepResult& result);
void write_csv(const std::string& path, const SweepResult& result);

/// The CSV without the '#' block; what determinism is judged on.
std::string csv_body(const SweepResult& result);

}  // namespace optomag

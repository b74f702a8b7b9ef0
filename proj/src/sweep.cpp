#include "optomag/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "optomag/analytics.hpp"

namespace optomag {

void set_param(ModelParams& p, const std::string& name, double value) {
  if (name == "kappa") p.kappa = value;
  else if (name == "mu") p.mu = value;
  else if (name == "delta_a") p.delta_a = value;
  else if (name == "delta_m") p.delta_m = value;
  else if (name == "g_m") p.g_m = value;
  else if (name == "g_a") p.g_a = value;
  else if (name == "omega_c") p.omega_c = value;
  else throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::size_t SweepResult::column(const std::string& name) const {
  for (std::size_t i = 0; i < value_columns.size(); ++i)
    if (value_columns[i] == name) return i;
  throw std::out_of_range("no value column '" + name + "'");
}

std::size_t SweepResult::label_column(const std::string& name) const {
  for (std::size_t i = 0; i < label_columns.size(); ++i)
    if (label_columns[i] == name) return i;
  throw std::out_of_range("no label column '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

/// Evaluates cell(i) for i in [0, n) on up to `threads` workers. Rows land at
/// their own index, so output order never depends on scheduling.
template <typename Cell>
std::vector<SweepRow> run_cells(std::size_t n, int threads, Cell&& cell) {
  std::vector<SweepRow> rows(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        rows[i] = cell(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  if (count == 1 || n < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(count, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

const std::vector<std::string> kPointColumns = {
    "kappa", "mu",     "mu_minus_omega_c", "zkappa",  "psi",        "energy",
    "n_tot", "n_photon", "n_magnon",       "n_atom", "sc_residual"};
const std::vector<std::string> kPointLabels = {"phase", "status"};

std::string status_of(const std::exception& e) {
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "error:degenerate";
  if (dynamic_cast<const LobeInapplicable*>(&e)) return "error:inapplicable";
  if (dynamic_cast<const ParamError*>(&e)) return "error:params";
  return "error:solver";
}

SweepRow point_row(const ModelParams& q, std::vector<int> index, const MinimizerOptions& opts) {
  auto fill = [&](const MeanFieldPoint& pt, const char* status) {
    return SweepRow{std::move(index),
                    {q.kappa, q.mu, q.mu - q.omega_c, q.zkappa(), pt.psi_star, pt.ground_energy,
                     pt.ntot_avg, pt.n_avg, pt.m_avg, pt.sigma_avg, pt.sc_residual},
                    {to_string(pt.phase), status}};
  };
  try {
    return fill(minimize_order_parameter(q, opts), "ok");
  } catch (const TruncationError& e) {
    return fill(e.point(), "truncated");
  } catch (const std::exception& e) {
    return SweepRow{std::move(index),
                    {q.kappa, q.mu, q.mu - q.omega_c, q.zkappa(), 0, 0, 0, 0, 0, 0, 0},
                    {"none", status_of(e)}};
  }
}

void count_failures(SweepResult& r) {
  const std::size_t status = r.label_column("status");
  r.metadata.failed_cells = 0;
  for (const auto& row : r.rows)
    if (row.labels[status] != "ok") ++r.metadata.failed_cells;
}

SweepResult start(const char* command, const ModelParams& p, const SweepOptions& opts) {
  validate_params(p);
  SweepResult r;
  r.metadata.command = command;
  r.metadata.params = p;
  r.metadata.minimizer = opts.minimizer;
  r.metadata.threads = std::max(1, opts.threads);
  return r;
}

void require_axis(const Axis& axis) {
  if (axis.count < 1) throw std::invalid_argument("axis '" + axis.name + "' must be nonempty");
}

}  // namespace

SweepResult sweep_phase_diagram(const ModelParams& p, const Axis& kappa_axis, const Axis& mu_axis,
                                const SweepOptions& opts) {
  require_axis(kappa_axis);
  require_axis(mu_axis);
  const auto t0 = Clock::now();
  auto r = start("phase-diagram", p, opts);
  r.axes = {kappa_axis, mu_axis};
  r.value_columns = kPointColumns;
  r.label_columns = kPointLabels;
  const auto nmu = static_cast<std::size_t>(mu_axis.count);
  r.rows = run_cells(static_cast<std::size_t>(kappa_axis.count) * nmu, opts.threads,
                     [&](std::size_t cell) {
                       const int ik = static_cast<int>(cell / nmu);
                       const int im = static_cast<int>(cell % nmu);
                       ModelParams q = p;
                       set_param(q, kappa_axis.name, kappa_axis.value(ik));
                       set_param(q, mu_axis.name, mu_axis.value(im));
                       return point_row(q, {ik, im}, opts.minimizer);
                     });
  count_failures(r);
  r.metadata.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

SweepResult sweep_observables(const ModelParams& p, const Axis& mu_axis, const SweepOptions& opts) {
  require_axis(mu_axis);
  const auto t0 = Clock::now();
  auto r = start("observables", p, opts);
  r.axes = {mu_axis};
  r.value_columns = kPointColumns;
  r.label_columns = kPointLabels;
  r.rows = run_cells(static_cast<std::size_t>(mu_axis.count), opts.threads, [&](std::size_t cell) {
    const int im = static_cast<int>(cell);
    ModelParams q = p;
    set_param(q, mu_axis.name, mu_axis.value(im));
    return point_row(q, {im}, opts.minimizer);
  });
  count_failures(r);
  r.metadata.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

namespace {

/// Rows over (axis index, N) with a single scalar per cell.
template <typename Eval>
SweepResult curve_sweep(const char* command, const char* value_name, const ModelParams& p,
                        const Axis& axis, const std::vector<int>& n_list, const SweepOptions& opts,
                        Eval&& eval, bool with_relative_mu) {
  require_axis(axis);
  if (n_list.empty()) throw std::invalid_argument("N list must be nonempty");
  for (int N : n_list)
    if (N < 0 || N + 1 > p.n_max)
      throw std::invalid_argument("every N in the list needs N+1 <= n_max");
  const auto t0 = Clock::now();
  auto r = start(command, p, opts);
  r.axes = {axis};
  r.value_columns = {axis.name, "N", value_name};
  if (with_relative_mu) r.value_columns.emplace_back("mu_minus_omega_c");
  r.label_columns = {"status"};
  const auto nn = n_list.size();
  r.rows = run_cells(static_cast<std::size_t>(axis.count) * nn, opts.threads, [&](std::size_t cell) {
    const int ia = static_cast<int>(cell / nn);
    const int N = n_list[cell % nn];
    ModelParams q = p;
    const double x = axis.value(ia);
    set_param(q, axis.name, x);
    SweepRow row{{ia}, {x, static_cast<double>(N), 0.0}, {"ok"}};
    if (with_relative_mu) row.values.push_back(0.0);
    try {
      const double v = eval(q, N);
      row.values[2] = v;
      if (with_relative_mu) row.values[3] = v - q.omega_c;
    } catch (const std::exception& e) {
      row.labels[0] = status_of(e);
    }
    return row;
  });
  count_failures(r);
  r.metadata.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

SweepResult sweep_lobes(const ModelParams& p, const Axis& delta_a_axis,
                        const std::vector<int>& n_list, const SweepOptions& opts) {
  if (delta_a_axis.name != "delta_a") throw std::invalid_argument("lobes sweep needs a delta_a axis");
  if (!std::isfinite(delta_a_axis.min) || !std::isfinite(delta_a_axis.max))
    throw std::invalid_argument("delta_a axis must be finite");
  return curve_sweep(
      "lobes", "mu_boundary", p, delta_a_axis, n_list, opts,
      [](const ModelParams& q, int N) { return lobe_boundary_mu(q, N); }, true);
}

SweepResult sweep_repulsion(const ModelParams& p, const Axis& axis, const std::vector<int>& n_list,
                            const SweepOptions& opts) {
  if (axis.name != "g_m" && axis.name != "delta_m")
    throw std::invalid_argument("repulsion sweep runs over g_m or delta_m");
  return curve_sweep(
      "repulsion", "U", p, axis, n_list, opts,
      [](const ModelParams& q, int N) { return effective_repulsion(q, N); }, false);
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_body(std::ostream& out, const SweepResult& r) {
  bool first = true;
  auto cell = [&](const std::string& s) {
    if (!first) out << ',';
    out << s;
    first = false;
  };
  for (const auto& a : r.axes) cell(a.name + "_index");
  for (const auto& c : r.value_columns) cell(c);
  for (const auto& c : r.label_columns) cell(c);
  out << '\n';
  for (const auto& row : r.rows) {
    first = true;
    for (int i : row.index) cell(std::to_string(i));
    for (double v : row.values) cell(format_number(v));
    for (const auto& l : row.labels) cell(l);
    out << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& r) {
  const auto& m = r.metadata;
  const auto& p = m.params;
  out << "# command: " << m.command << '\n';
  if (!m.preset.empty()) out << "# preset: " << m.preset << '\n';
  out << "# engine: " << m.engine_version << '\n';
  out << "# params: omega_c=" << format_number(p.omega_c) << " delta_a=" << format_number(p.delta_a)
      << " delta_m=" << format_number(p.delta_m) << " g_a=" << format_number(p.g_a)
      << " g_m=" << format_number(p.g_m) << " mu=" << format_number(p.mu)
      << " kappa=" << format_number(p.kappa) << " z=" << p.z << '\n';
  out << "# cutoff: n_max=" << p.n_max << " dim=" << sector_offset(p.n_max + 1) << '\n';
  out << "# tolerances: scan_points=" << m.minimizer.scan_points
      << " psi_tolerance=" << format_number(m.minimizer.psi_tolerance)
      << " phase_tolerance=" << format_number(m.minimizer.phase_tolerance)
      << " degeneracy_guard=" << format_number(kDegeneracyGuard) << '\n';
  for (const auto& a : r.axes)
    out << "# axis: " << a.name << " min=" << format_number(a.min) << " max=" << format_number(a.max)
        << " count=" << a.count << '\n';
  out << "# threads: " << m.threads << '\n';
  out << "# wall_seconds: " << format_number(m.wall_seconds) << '\n';
  out << "# failed_cells: " << m.failed_cells << (m.failed_cells ? " (partial)" : "") << '\n';
  write_body(out, r);
}

void write_csv(const std::string& path, const SweepResult& r) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, r);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string csv_body(const SweepResult& r) {
  std::ostringstream s;
  write_body(s, r);
  return s.str();
}

}  // namespace optomag

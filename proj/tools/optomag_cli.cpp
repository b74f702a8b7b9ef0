// optomag - mean-field phase diagrams of a cavity-magnon-atom lattice

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optomag/analytics.hpp"
#include "optomag/config.hpp"
#include "optomag/meanfield.hpp"
#include "optomag/svg.hpp"
#include "optomag/sweep.hpp"
#include "optomag/verify.hpp"

using namespace optomag;

namespace {

struct Overrides {
  std::string config_path;
  std::string preset;
  std::optional<std::string> out;
  bool plot{false};
  std::optional<int> threads;
  std::optional<int> n_max;
  std::optional<double> omega_c, delta_a, delta_m, g_a, g_m, mu, kappa;
  std::optional<int> z;
  std::vector<std::string> axes;
  std::optional<std::vector<int>> n_list;
};

Axis parse_axis(const std::string& spec) {
  // name:min:max:count
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError({"--axis '" + spec + "': expected name:min:max:count"});
  try {
    return {parts[0], std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3])};
  } catch (const std::exception&) {
    throw ConfigError({"--axis '" + spec + "': bad number"});
  }
}

RunConfig resolve(const std::string& command, const Overrides& o) {
  RunConfig c;
  if (!o.preset.empty()) c = preset_config(o.preset);
  if (!o.config_path.empty()) c = load_config_file(o.config_path, c);
  c.command = command;
  auto& p = c.params;
  if (o.omega_c) p.omega_c = *o.omega_c;
  if (o.delta_a) p.delta_a = *o.delta_a;
  if (o.delta_m) p.delta_m = *o.delta_m;
  if (o.g_a) p.g_a = *o.g_a;
  if (o.g_m) p.g_m = *o.g_m;
  if (o.mu) p.mu = *o.mu;
  if (o.kappa) p.kappa = *o.kappa;
  if (o.z) p.z = *o.z;
  if (o.n_max) p.n_max = *o.n_max;
  if (o.threads) c.threads = *o.threads;
  if (o.n_list) c.n_list = *o.n_list;
  if (o.out) c.output_path = *o.out;
  if (o.plot) c.emit_plot = true;
  for (const auto& spec : o.axes) {
    const Axis a = parse_axis(spec);
    bool replaced = false;
    for (auto& b : c.axes)
      if (b.name == a.name) {
        b = a;
        replaced = true;
      }
    if (!replaced) c.axes.push_back(a);
  }
  if (c.output_path.empty()) c.output_path = (c.preset.empty() ? command : c.preset) + ".csv";
  return c;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// name,value table printed to stdout and mirrored to the CSV.
class Table {
 public:
  void add(const std::string& name, double v) { rows_.emplace_back(name, fmt(v)); }
  void add(const std::string& name, const std::string& v) { rows_.emplace_back(name, v); }
  void attempt(const std::string& name, const std::function<double()>& f) {
    try {
      add(name, f());
    } catch (const std::exception& e) {
      add(name, std::string("n/a (") + e.what() + ")");
    }
  }

  void print(std::ostream& out) const {
    for (const auto& [k, v] : rows_) out << k << " = " << v << '\n';
  }
  void write_csv(const std::string& path, const RunConfig& c) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << "# command: " << c.command << '\n' << "# engine: " << kEngineVersion << '\n';
    f << "name,value\n";
    for (const auto& [k, v] : rows_) {
      std::string cell = v;
      for (auto& ch : cell)
        if (ch == ',' || ch == '\n') ch = ';';
      f << k << ',' << cell << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

int run_analytic(const RunConfig& c) {
  const auto& p = c.params;
  Table t;
  t.add("omega_minus_mu", p.omega_c - p.mu);
  if (has_equal_detunings(p)) {
    const auto d = detuned_n1_spectrum(p);
    t.add("E1,0' (detuned)", d.e10);
    t.add("E1,-' (detuned)", d.e1m);
    t.add("E1,+' (detuned)", d.e1p);
    t.add("delta_E", polariton_splitting(p));
    t.add("note", "detuned N=1 forms keep omega_c on the photon diagonal; they match the full "
                  "spectrum when omega_c = 0");
  } else {
    t.add("E1' (detuned)", "n/a (needs delta_a = delta_m)");
  }
  if (!is_resonant(p)) {
    t.add("resonant closed forms", "n/a (needs delta_a = delta_m = 0)");
  } else {
    const auto s = resonant_spectrum(p);
    const double r1 = s.e1p - s.e10;
    t.add("E0,0", s.e00);
    t.add("E1,0", s.e10);
    t.add("E1,-", s.e1m);
    t.add("E1,+", s.e1p);
    t.add("E1 splitting sqrt(g_a^2+G_m^2)", r1);
    t.add("E2,0", s.e20);
    t.add("E2,-'", s.e2m_inner);
    t.add("E2,+'", s.e2p_inner);
    t.add("E2,-", s.e2m);
    t.add("E2,+", s.e2p);
    if (p.g_m > 0.0) {
      const auto c1 = phi1(p);
      t.add("phi1 a1", c1.a1);
      t.add("phi1 d1", c1.d1);
      t.add("phi1 B1", c1.b1_norm);
    }
    try {
      const auto c2 = phi2(p);
      t.add("phi2 a (numeric)", c2.numeric.a);
      t.add("phi2 b (numeric)", c2.numeric.b);
      t.add("phi2 c (numeric)", c2.numeric.c);
      t.add("phi2 d (numeric)", c2.numeric.d);
      t.add("phi2 B2 (numeric)", c2.numeric.b2_norm);
      if (c2.printed) {
        t.add("phi2 a (printed)", c2.printed->a);
        t.add("phi2 b=c (printed)", c2.printed->b);
        t.add("phi2 d (printed)", c2.printed->d);
        t.add("phi2 B2 (printed)", c2.printed->b2_norm);
      }
    } catch (const std::exception& e) {
      t.add("phi2", std::string("n/a (") + e.what() + ")");
    }
    const auto pe = perturbation_elements(p);
    t.add("t2 = <phi2|a+|phi1>", pe.t2);
    t.add("t0 = <phi0|a|phi1>", pe.t0);
    if (pe.t2_printed) t.add("t2 (printed coefficients)", *pe.t2_printed);
    if (pe.t0_printed) t.add("t0 (printed coefficients)", *pe.t0_printed);
    t.attempt("psi^2 coefficient", [&] { return psi_squared_coefficient(p); });
    if (p.kappa > 0.0) {
      t.attempt("E(2) at psi=1", [&] { return second_order_energy(p, 1.0); });
      try {
        const auto op = order_parameter_analytic(p);
        t.add("order parameter (analytic)", op.psi);
        t.add("phase (analytic)", to_string(op.phase));
      } catch (const std::exception& e) {
        t.add("order parameter (analytic)", std::string("n/a (") + e.what() + ")");
      }
    }
    t.attempt("kappa_c N=0", [&] { return critical_hopping(p, LobeBranch::N0); });
    t.attempt("kappa_c N=1", [&] { return critical_hopping(p, LobeBranch::N1); });
    t.attempt("kappa_c N=1 (E2- denominator variant)",
              [&] { return critical_hopping_n1_alternate(p); });
  }
  for (int N = 0; N + 1 <= p.n_max && N <= 3; ++N) {
    t.add("mu_" + std::to_string(N) + " - omega_c (kappa->0)", lobe_boundary_mu(p, N) - p.omega_c);
    t.add("U_" + std::to_string(N), effective_repulsion(p, N));
  }
  t.print(std::cout);
  t.write_csv(c.output_path, c);
  return 0;
}

int run_verify_command(const RunConfig& c) {
  const auto report = run_verify(c.params);
  Table t;
  for (const auto& ch : report.checks) {
    std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": max deviation " << fmt(ch.max_deviation)
              << " (tolerance " << ch.tolerance << ")\n";
    t.add(ch.name, ch.max_deviation);
  }
  const bool ok = report.all_pass();
  std::cout << "max analytic/numeric deviation " << (ok ? "<= 1e-10" : "exceeds tolerance") << " ("
            << fmt(report.max_deviation()) << ")\n";
  t.write_csv(c.output_path, c);
  return ok ? 0 : 1;
}

int run_sweep(const RunConfig& c) {
  SweepOptions opts{c.threads, c.minimizer};
  SweepResult r;
  if (c.command == "phase-diagram") {
    r = sweep_phase_diagram(c.params, *c.find_axis("kappa"), *c.find_axis("mu"), opts);
  } else if (c.command == "observables") {
    r = sweep_observables(c.params, *c.find_axis("mu"), opts);
  } else if (c.command == "lobes") {
    r = sweep_lobes(c.params, *c.find_axis("delta_a"), c.n_list, opts);
  } else {
    const Axis* a = c.find_axis("g_m");
    if (!a) a = c.find_axis("delta_m");
    r = sweep_repulsion(c.params, *a, c.n_list, opts);
  }
  r.metadata.preset = c.preset;
  write_csv(c.output_path, r);
  std::cout << "wrote " << r.rows.size() << " rows to " << c.output_path << " in "
            << fmt(r.metadata.wall_seconds) << " s\n";
  if (c.emit_plot) {
    auto svg_path = c.output_path;
    if (svg_path.size() > 4 && svg_path.substr(svg_path.size() - 4) == ".csv")
      svg_path.resize(svg_path.size() - 4);
    svg_path += ".svg";
    std::ofstream f(svg_path);
    f << render_default_plot(r);
    std::cout << "wrote plot " << svg_path << '\n';
  }
  if (r.metadata.failed_cells > 0) {
    std::cerr << r.metadata.failed_cells << " cells did not solve cleanly (see status column)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field superfluid/Mott solver for a cavity photon-magnon-atom lattice"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--preset", o.preset, "built-in preset (fig2a ... fig8b)");
  app.add_option("--out", o.out, "output CSV path");
  app.add_flag("--plot", o.plot, "also write an SVG next to the CSV");
  app.add_option("--threads", o.threads, "worker threads for sweeps");
  app.add_option("--n-max", o.n_max, "total-excitation cutoff");
  app.add_option("--omega-c", o.omega_c, "photon frequency");
  app.add_option("--delta-a", o.delta_a, "atom-photon detuning");
  app.add_option("--delta-m", o.delta_m, "magnon-photon detuning");
  app.add_option("--g-a", o.g_a, "atom-photon coupling");
  app.add_option("--g-m", o.g_m, "magnon-photon coupling");
  app.add_option("--mu", o.mu, "chemical potential");
  app.add_option("--kappa", o.kappa, "hopping rate");
  app.add_option("--z", o.z, "coordination number");
  app.add_option("--axis", o.axes, "grid axis name:min:max:count (repeatable)");
  app.add_option("--n-list", o.n_list, "sector list for lobes/repulsion")->delimiter(',');

  std::vector<CLI::App*> subs;
  for (const auto& name : kCommands) subs.push_back(app.add_subcommand(name));
  app.add_subcommand("presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("presets")) {
    for (const auto& n : preset_names()) {
      const auto c = preset_config(n);
      std::cout << n << "  " << c.command << '\n';
    }
    return 0;
  }

  std::string command;
  for (auto* s : subs)
    if (s->parsed()) command = s->get_name();

  try {
    const RunConfig c = resolve(command, o);
    validate_run_config(c);
    if (command == "analytic") return run_analytic(c);
    if (command == "verify") return run_verify_command(c);
    return run_sweep(c);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "config error: " << v << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

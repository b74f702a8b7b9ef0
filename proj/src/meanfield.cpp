#include "optomag/meanfield.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "optomag/eigensolver.hpp"
#include "optomag/golden.hpp"
#include "optomag/hamiltonian.hpp"

namespace optomag {

namespace {

// Without hopping the matrix is block diagonal; solving sector by sector makes
// the result independent of the cutoff once the ground sector is included.
EigenPair<double> sector_ground(const ModelParams& p) {
  EigenPair<double> best{std::numeric_limits<double>::infinity(), {}};
  int best_sector = 0;
  for (int N = 0; N <= p.n_max; ++N) {
    auto g = eigen_ground(onsite_block<double>(p, N));
    if (g.value < best.value) {
      best = std::move(g);
      best_sector = N;
    }
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sector_offset(p.n_max + 1)));
  full.segment(static_cast<Eigen::Index>(sector_offset(best_sector)), best.vector.size()) = best.vector;
  return {best.value, full};
}

EigenPair<double> mf_ground(const ModelParams& p, double psi) {
  if (p.zkappa() * psi == 0.0) {
    auto g = sector_ground(p);
    g.value += p.zkappa() * psi * psi;
    return g;
  }
  return eigen_ground(assemble_mf_hamiltonian<double>(p, psi));
}

}  // namespace

double ground_energy(const ModelParams& p, double psi) {
  if (p.zkappa() * psi == 0.0) return sector_ground(p).value + p.zkappa() * psi * psi;
  return ground_value(assemble_mf_hamiltonian<double>(p, psi));
}

double psi_max(const ModelParams& p) { return std::sqrt(static_cast<double>(p.n_max)); }

Phase classify_phase(double psi_star, double psi_tol) {
  return psi_star < psi_tol ? Phase::Mott : Phase::Superfluid;
}

Observables observables(const Eigen::VectorXd& ground_vector, const Basis& basis) {
  const auto diag = number_diagonals(basis);
  const Eigen::ArrayXd w = ground_vector.array().square();
  Observables o{};
  o.n_photon = (w * diag.photon.array()).sum();
  o.n_magnon = (w * diag.magnon.array()).sum();
  o.n_atom = (w * diag.atom.array()).sum();
  o.n_tot = (w * diag.total().array()).sum();
  o.a = photon_annihilation_expectation(ground_vector, basis.n_max());
  return o;
}

namespace {

MeanFieldPoint finish_point(const ModelParams& p, double psi, const MinimizerOptions& opts) {
  const auto ground = mf_ground(p, psi);
  const auto o = observables(ground.vector, build_full_basis(p.n_max));
  MeanFieldPoint pt;
  pt.psi_star = psi;
  pt.ground_energy = ground.value;
  pt.ground_vector = ground.vector;
  pt.n_avg = o.n_photon;
  pt.m_avg = o.n_magnon;
  pt.sigma_avg = o.n_atom;
  pt.ntot_avg = o.n_tot;
  pt.sc_residual = std::abs(psi - o.a);
  pt.phase = classify_phase(psi, opts.phase_tolerance);
  return pt;
}

}  // namespace

MeanFieldPoint minimize_order_parameter(const ModelParams& p, const MinimizerOptions& opts) {
  validate_params(p);
  if (opts.scan_points < 3) throw std::invalid_argument("scan needs at least 3 points");
  const double top = psi_max(p);
  const int n = opts.scan_points;
  const double step = top / (n - 1);

  auto energy = [&](double psi) { return ground_energy(p, psi); };

  std::vector<double> scan(static_cast<std::size_t>(n));
  int best = 0;
  for (int i = 0; i < n; ++i) {
    scan[static_cast<std::size_t>(i)] = energy(i * step);
    if (scan[static_cast<std::size_t>(i)] < scan[static_cast<std::size_t>(best)]) best = i;
  }
  if (best == n - 1) throw TruncationError(finish_point(p, top, opts));

  const double e_zero = scan.front();
  const double lo = best == 0 ? 0.0 : (best - 1) * step;
  const double hi = (best + 1) * step;
  const auto refined = golden_section_minimize(energy, lo, hi, opts.psi_tolerance);

  // Energy gains within the eigensolver's rounding (about dim·ε·‖H‖) do not
  // count as a superfluid minimum; ties resolve to ψ = 0.
  const auto h0 = assemble_mf_hamiltonian<double>(p, 0.0).matrix();
  const double norm = h0.cwiseAbs().rowwise().sum().maxCoeff();
  const double resolution = static_cast<double>(h0.rows()) *
                            std::numeric_limits<double>::epsilon() * std::max(1.0, norm);
  double psi = 0.0;
  if (refined.fx < e_zero - resolution) psi = refined.x;
  else if (best != 0 && scan[static_cast<std::size_t>(best)] < e_zero - resolution)
    psi = best * step;
  return finish_point(p, psi, opts);
}

double effective_repulsion(const ModelParams& p, int N) {
  return lobe_boundary_mu(p, N) - p.omega_c;
}

CutoffConvergence cutoff_convergence(const ModelParams& p, const MinimizerOptions& opts) {
  const auto base = minimize_order_parameter(p, opts);
  ModelParams larger = p;
  larger.n_max = p.n_max + 4;
  const auto wide = minimize_order_parameter(larger, opts);
  return {std::abs(base.psi_star - wide.psi_star),
          std::abs(base.ground_energy - wide.ground_energy)};
}

double numeric_critical_hopping(const ModelParams& p, double kappa_hi, double rel_tol,
                                const MinimizerOptions& opts) {
  auto superfluid = [&](double kappa) {
    ModelParams q = p;
    q.kappa = kappa;
    return minimize_order_parameter(q, opts).psi_star >= opts.phase_tolerance;
  };
  double lo = 0.0;
  double hi = kappa_hi;
  if (superfluid(lo)) throw LobeInapplicable("superfluid already at kappa = 0");
  if (!superfluid(hi)) throw LobeInapplicable("no superfluid onset below kappa_hi");
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (superfluid(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace optomag

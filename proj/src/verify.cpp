#include "optomag/verify.hpp"

#include <algorithm>
#include <cmath>

#include "optomag/analytics.hpp"
#include "optomag/eigensolver.hpp"
#include "optomag/hamiltonian.hpp"

namespace optomag {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

double VerifyReport::max_deviation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.max_deviation);
  return m;
}

namespace {

const double kCouplings[] = {0.0, 0.2, 0.5, 0.8, 1.0, 1.2};
const double kDetunings[] = {-2.0, -1.0, 0.0, 1.0, 2.0};  // ω - μ in units of g_a

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

ModelParams resonant(const ModelParams& base, double g_m, double omega_minus_mu) {
  ModelParams p = base;
  p.delta_a = 0.0;
  p.delta_m = 0.0;
  p.g_m = g_m * base.g_a;
  p.mu = p.omega_c - omega_minus_mu * base.g_a;
  p.n_max = std::max(2, base.n_max);
  return p;
}

VerifyCheck check(std::string name, double deviation, double tol) {
  return {std::move(name), deviation, tol, deviation <= tol};
}

}  // namespace

VerifyReport run_verify(const ModelParams& base) {
  VerifyReport report;

  double spectral = 0.0;
  for (double G : kCouplings)
    for (double x : kDetunings) {
      const auto p = resonant(base, G, x);
      const auto closed = resonant_spectrum(p);
      for (int N = 0; N <= 2; ++N) {
        const auto numeric = eigen_values(onsite_block<double>(p, N));
        const auto expect = closed.sector(N);
        for (std::size_t k = 0; k < expect.size(); ++k)
          spectral = std::max(spectral, relative(expect[k], numeric(static_cast<Eigen::Index>(k))));
      }
    }
  report.checks.push_back(check("resonant sectors 0-2 vs diagonalization", spectral, 1e-10));

  double detuned = 0.0;
  double splitting = 0.0;
  for (double G : kCouplings)
    for (double d : {-1.5, -0.5, 0.0, 0.7}) {
      for (double wc : {0.0, 0.3, 1.0}) {
        ModelParams p = base;
        p.g_m = G * base.g_a;
        p.delta_a = p.delta_m = d * base.g_a;
        p.omega_c = wc;
        p.mu = -0.25;
        const auto closed = detuned_n1_spectrum(p);
        const auto numeric = eigen_values(detuned_n1_matrix(p));
        std::vector<double> expect{closed.e10, closed.e1m, closed.e1p};
        std::sort(expect.begin(), expect.end());
        for (std::size_t k = 0; k < 3; ++k)
          detuned = std::max(detuned, relative(expect[k], numeric(static_cast<Eigen::Index>(k))));
        splitting = std::max(splitting,
                             relative(polariton_splitting(p), closed.e1p - closed.e1m));
      }
    }
  report.checks.push_back(check("detuned N=1 closed form vs diagonalization", detuned, 1e-10));
  report.checks.push_back(check("polariton splitting vs E'+ - E'-", splitting, 1e-10));

  double phi1_residual = 0.0;
  double weights = 0.0;
  double phi2_residual = 0.0;
  double t2_route = 0.0;
  double kc_identity = 0.0;
  for (double G : {0.2, 0.5, 0.8, 1.0, 1.2}) {
    for (double x : kDetunings) {
      const auto p = resonant(base, G, x);
      const auto spec = resonant_spectrum(p);
      const auto c1 = phi1(p);
      const Eigen::Vector3d v1 = c1.vector();
      const auto h1 = onsite_block<double>(p, 1).matrix();
      phi1_residual = std::max(phi1_residual, (h1 * v1 - spec.e1m * v1).norm());
      const auto t = perturbation_elements(p);
      weights = std::max({weights, std::abs(c1.a1 * c1.a1 / c1.b1_norm - 0.5),
                          std::abs(t.t0 * t.t0 - 0.5)});

      const Eigen::VectorXd v2 = phi2(p).numeric.vector();
      const auto h2 = onsite_block<double>(p, 2).matrix();
      phi2_residual = std::max(phi2_residual, (h2 * v2 - spec.e2m * v2).norm());

      // ⟨φ₂|a†|φ₁⟩ from the states embedded in the full basis.
      const auto basis = build_full_basis(p.n_max);
      Eigen::VectorXd f1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dim()));
      Eigen::VectorXd f2 = f1;
      f1.segment(1, 3) = lowest_sector_state(p, 1);
      f2.segment(4, 5) = lowest_sector_state(p, 2);
      double brute = 0.0;
      for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto& s = basis[i];
        const auto j = basis.index_of({s.n + 1, s.m, s.atom});
        if (j) brute += f2(static_cast<Eigen::Index>(*j)) * std::sqrt(s.n + 1.0) *
                        f1(static_cast<Eigen::Index>(i));
      }
      t2_route = std::max(t2_route, std::abs(brute - t.t2));

      if (spec.e1m > 0.0) {
        const double printed = c1.b1_norm * spec.e1m / (c1.a1 * c1.a1) / p.z;
        kc_identity = std::max(kc_identity, relative(critical_hopping(p, LobeBranch::N0), printed));
      }
    }
  }
  report.checks.push_back(check("phi1 eigen-residual", phi1_residual, 1e-12));
  report.checks.push_back(check("phi1 photon weight and |t0|^2 equal 1/2", weights, 1e-12));
  report.checks.push_back(check("phi2 eigen-residual", phi2_residual, 1e-10));
  report.checks.push_back(check("t2 vs full-basis matrix element", t2_route, 1e-10));
  report.checks.push_back(check("N0 critical hopping B1*E1/a1^2 identity", kc_identity, 1e-10));

  // Structure of the assembled matrix at ψ = 0.
  {
    ModelParams p = resonant(base, 0.8, 0.5);
    p.kappa = 0.3;
    const auto h = assemble_mf_hamiltonian<double>(p, 0.0).matrix();
    const auto basis = build_full_basis(p.n_max);
    const Eigen::VectorXd n = number_diagonals(basis).total();
    const Eigen::MatrixXd commutator = h * n.asDiagonal() - n.asDiagonal() * h;
    const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    report.checks.push_back(
        check("psi=0 commutator with total number", commutator.cwiseAbs().maxCoeff() + asym, 0.0));
  }
  return report;
}

}  // namespace optomag

// meanfield.hpp - variational order-parameter minimization at one parameter point

#pragma once

#include <Eigen/Dense>

#include "optomag/analytics.hpp"
#include "optomag/errors.hpp"
#include "optomag/model.hpp"

namespace optomag {

struct MinimizerOptions {
  int scan_points{41};
  double psi_tolerance{1e-8};    // golden-section bracket width
  double phase_tolerance{1e-4};  // Mott iff ψ* below this
};

struct Observables {
  double n_tot;
  double n_photon;
  double n_magnon;
  double n_atom;
  double a;  // ⟨a⟩
};

struct MeanFieldPoint {
  double psi_star{0.0};
  double ground_energy{0.0};
  Eigen::VectorXd ground_vector;
  double n_avg{0.0};
  double m_avg{0.0};
  double sigma_avg{0.0};
  double ntot_avg{0.0};
  double sc_residual{0.0};  // |ψ* - ⟨a⟩|
  Phase phase{Phase::Mott};
};

/// The coarse scan put the minimum on ψ_max = sqrt(n_max); the point is kept
/// so sweeps can still record what was found.
class TruncationError : public Error {
 public:
  explicit TruncationError(MeanFieldPoint point)
      : Error("order parameter reached psi_max = sqrt(n_max); raise n_max"),
        point_(std::move(point)) {}
  const MeanFieldPoint& point() const noexcept { return point_; }

 private:
  MeanFieldPoint point_;
};

/// Lowest eigenvalue of the assembled mean-field Hamiltonian (includes zκψ²).
double ground_energy(const ModelParams& p, double psi);

double psi_max(const ModelParams& p);

MeanFieldPoint minimize_order_parameter(const ModelParams& p, const MinimizerOptions& opts = {});

Observables observables(const Eigen::VectorXd& ground_vector, const Basis& basis);

Phase classify_phase(double psi_star, double psi_tol = 1e-4);

/// U_N = Ẽ_{N+1} - Ẽ_N - ω_c with bare (μ = 0) sector grounds.
double effective_repulsion(const ModelParams& p, int N);

struct CutoffConvergence {
  double delta_psi;
  double delta_energy;
};

/// Re-solves at n_max + 4 and reports the change in ψ* and E_g.
CutoffConvergence cutoff_convergence(const ModelParams& p, const MinimizerOptions& opts = {});

/// Smallest κ with ψ* ≥ phase_tolerance, by bisection on [0, kappa_hi].
/// Requires a Mott point at κ = 0 and a superfluid one at kappa_hi.
double numeric_critical_hopping(const ModelParams& p, double kappa_hi, double rel_tol = 1e-9,
                                const MinimizerOptions& opts = {});

}  // namespace optomag

// analytics.hpp - closed-form spectra, low-sector eigenstates, second-order
// perturbation theory and critical hopping rates.
//
// Resonant results assume ω_a = ω_m = ω_c ≡ ω. All energies include the -Nμ
// grand-canonical shift unless a function says it works with bare energies.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "optomag/hamiltonian.hpp"
#include "optomag/model.hpp"

namespace optomag {

enum class Phase { Mott, Superfluid };

const char* to_string(Phase phase);

/// Perturbative energy denominators smaller than this raise DegenerateDenominator.
inline constexpr double kDegeneracyGuard = 1e-12;

bool is_resonant(const ModelParams& p);
bool has_equal_detunings(const ModelParams& p);

// --- N = 1 sector with equal detunings -------------------------------------

struct DetunedN1Spectrum {
  double e10;    // Δ - μ
  double e1m;    // lower polariton
  double e1p;    // upper polariton
};

/// The N = 1 matrix with detunings on the atom and magnon diagonals and the
/// bare ω_c on the photon diagonal, in the order (|0,0,e⟩, |1,0,g⟩, |0,1,g⟩).
SymmetricMatrix<double> detuned_n1_matrix(const ModelParams& p);

/// Closed-form eigenvalues of detuned_n1_matrix. Requires Δ_a = Δ_m.
DetunedN1Spectrum detuned_n1_spectrum(const ModelParams& p);

/// δ_E = E'₊ - E'₋ evaluated from its own closed form. Requires Δ_a = Δ_m.
double polariton_splitting(const ModelParams& p);

// --- resonant spectra of sectors 0..2 ---------------------------------------

struct ResonantSpectrum {
  double e00;
  double e10;
  double e1m;
  double e1p;
  double e20;
  double e2m_inner;  // 2(ω-μ) - sqrt((3g²+5G²-S)/2)
  double e2p_inner;  // 2(ω-μ) + sqrt((3g²+5G²-S)/2)
  double e2m;        // 2(ω-μ) - sqrt((3g²+5G²+S)/2), sector-2 ground
  double e2p;

  /// All values of sector N (0, 1 or 2), ascending.
  std::vector<double> sector(int N) const;
};

ResonantSpectrum resonant_spectrum(const ModelParams& p);

// --- low-sector eigenstates --------------------------------------------------

enum class CoefficientSource { printed_formula, numeric_eigenvector };

/// φ₁ = (|0,1,g⟩ + a1 |1,0,g⟩ + d1 |0,0,e⟩) / sqrt(B₁)
struct Phi1Coefficients {
  double a1;
  double d1;
  double b1_norm;

  /// Normalized vector in sector-1 order (|0,0,e⟩, |1,0,g⟩, |0,1,g⟩).
  Eigen::Vector3d vector() const;
};

/// Closed-form φ₁. Throws RegimeError off resonance or when G_m = 0 (singular).
Phi1Coefficients phi1(const ModelParams& p);

/// φ₂ = (|0,2,g⟩ + a |1,0,e⟩ + b |0,1,e⟩ + c |2,0,g⟩ + d |1,1,g⟩) / sqrt(B₂)
struct Phi2Coefficients {
  double a;
  double b;
  double c;
  double d;
  double b2_norm;
  CoefficientSource source;

  /// Normalized vector in sector-2 order (|1,0,e⟩, |0,1,e⟩, |2,0,g⟩, |1,1,g⟩, |0,2,g⟩).
  Eigen::VectorXd vector() const;
};

struct Phi2Report {
  Phi2Coefficients numeric;
  std::optional<Phi2Coefficients> printed;  // needs g_a, G_m > 0
};

/// φ₂ from the lowest eigenvector of the sector-2 block; the printed closed
/// forms ride along for comparison only.
Phi2Report phi2(const ModelParams& p);

/// Lowest eigenvector of onsite_block(p, N), signed so that the last g-state
/// coefficient (all excitations in the magnon) is positive; if that vanishes the
/// first nonzero coefficient scanning backwards is made positive.
Eigen::VectorXd lowest_sector_state(const ModelParams& p, int N);

/// Ground energy of sector N with μ = 0.
double bare_sector_ground(const ModelParams& p, int N);

// --- perturbation theory -----------------------------------------------------

struct PerturbationElements {
  double t2;  // ⟨φ₂| a† |φ₁⟩
  double t0;  // ⟨φ₀| a |φ₁⟩
  std::optional<double> t2_printed;
  std::optional<double> t0_printed;
};

PerturbationElements perturbation_elements(const ModelParams& p);

/// (zκψ)² (|t2|²/(E₁₋-E₂₋) + |t0|²/(E₁₋-E₀₀)).
double second_order_energy(const ModelParams& p, double psi);

/// Coefficient of ψ² in E₁₋ + E⁽²⁾ + zκψ².
double psi_squared_coefficient(const ModelParams& p);

struct AnalyticOrderParameter {
  Phase phase;
  double psi;  // 0 in the Mott phase
};

/// Second-order order-parameter formula around φ₁; Mott when its radicand is not positive.
AnalyticOrderParameter order_parameter_analytic(const ModelParams& p);

enum class LobeBranch { N0, N1 };

/// Critical hopping κ_c (not zκ_c) from the ψ² sign change.
/// N0: zκ_c = E₁₋ / |t0|², which equals B₁E₁₋/a₁² whenever G_m > 0.
/// N1: zκ_c = -(E₁₋-E₂₋) E₁₋ / (|t2|² E₁₋ + |t0|² (E₁₋-E₂₋)).
double critical_hopping(const ModelParams& p, LobeBranch branch);

/// N1 variant carrying E₂₋ instead of E₁₋ in the |t2|² term of the
/// denominator. Reported for comparison, not used for boundaries.
double critical_hopping_n1_alternate(const ModelParams& p);

/// κ → 0 boundary between lobes N and N+1: μ_N = Ẽ_{N+1} - Ẽ_N with bare energies.
double lobe_boundary_mu(const ModelParams& p, int N);

}  // namespace optomag

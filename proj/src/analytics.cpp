#include "optomag/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "optomag/eigensolver.hpp"
#include "optomag/errors.hpp"

namespace optomag {

namespace {

double frequency_tolerance(const ModelParams& p) {
  return 1e-12 * std::max(1.0, std::abs(p.omega_c));
}

void require_resonance(const ModelParams& p, const char* what) {
  if (!is_resonant(p))
    throw RegimeError(std::string(what) + " requires delta_a = delta_m = 0");
}

void require_equal_detunings(const ModelParams& p, const char* what) {
  if (!has_equal_detunings(p))
    throw RegimeError(std::string(what) + " requires delta_a = delta_m");
}

double guarded(double denominator, const char* label) {
  if (std::abs(denominator) < kDegeneracyGuard)
    throw DegenerateDenominator(std::string("degenerate denominator ") + label);
  return denominator;
}

// sqrt(30 g² G² + g⁴ + 9 G⁴)
double sector2_discriminant(double g, double G) {
  return std::sqrt(30.0 * g * g * G * G + g * g * g * g + 9.0 * G * G * G * G);
}

}  // namespace

const char* to_string(Phase phase) { return phase == Phase::Mott ? "Mott" : "Superfluid"; }

bool is_resonant(const ModelParams& p) {
  const double tol = frequency_tolerance(p);
  return std::abs(p.delta_a) <= tol && std::abs(p.delta_m) <= tol;
}

bool has_equal_detunings(const ModelParams& p) {
  return std::abs(p.delta_a - p.delta_m) <= frequency_tolerance(p);
}

SymmetricMatrix<double> detuned_n1_matrix(const ModelParams& p) {
  SymmetricMatrix<double> h(3);
  h.set(0, 0, p.delta_a - p.mu);
  h.set(1, 1, p.omega_c - p.mu);
  h.set(2, 2, p.delta_m - p.mu);
  h.set(0, 1, p.g_a);
  h.set(1, 2, p.g_m);
  return h;
}

DetunedN1Spectrum detuned_n1_spectrum(const ModelParams& p) {
  require_equal_detunings(p, "detuned N=1 spectrum");
  const double d = p.delta_a;
  const double wc = p.omega_c;
  const double root = std::sqrt(d * d - 2.0 * d * wc + 4.0 * p.g_a * p.g_a +
                                4.0 * p.g_m * p.g_m + wc * wc);
  return {d - p.mu, 0.5 * (d - 2.0 * p.mu + wc - root), 0.5 * (d - 2.0 * p.mu + wc + root)};
}

double polariton_splitting(const ModelParams& p) {
  require_equal_detunings(p, "polariton splitting");
  const double d = p.delta_a;
  const double wc = p.omega_c;
  return std::sqrt(d * d - 2.0 * d * wc + 4.0 * p.g_a * p.g_a + 4.0 * p.g_m * p.g_m + wc * wc);
}

std::vector<double> ResonantSpectrum::sector(int N) const {
  std::vector<double> v;
  switch (N) {
    case 0: v = {e00}; break;
    case 1: v = {e10, e1m, e1p}; break;
    case 2: v = {e20, e2m_inner, e2p_inner, e2m, e2p}; break;
    default: throw std::out_of_range("closed-form spectra cover sectors 0..2");
  }
  std::sort(v.begin(), v.end());
  return v;
}

ResonantSpectrum resonant_spectrum(const ModelParams& p) {
  require_resonance(p, "resonant spectrum");
  const double x = p.omega_c - p.mu;
  const double g = p.g_a;
  const double G = p.g_m;
  const double r1 = std::sqrt(g * g + G * G);
  const double s = sector2_discriminant(g, G);
  const double inner = std::sqrt(3.0 * g * g + 5.0 * G * G - s) / std::sqrt(2.0);
  const double outer = std::sqrt(3.0 * g * g + 5.0 * G * G + s) / std::sqrt(2.0);
  return {0.0,         x,           x - r1,      x + r1,     2.0 * x,
          2.0 * x - inner, 2.0 * x + inner, 2.0 * x - outer, 2.0 * x + outer};
}

Eigen::Vector3d Phi1Coefficients::vector() const {
  return Eigen::Vector3d(d1, a1, 1.0) / std::sqrt(b1_norm);
}

Phi1Coefficients phi1(const ModelParams& p) {
  require_resonance(p, "phi1");
  if (!(p.g_m > 0.0)) throw RegimeError("phi1 closed form is singular at g_m = 0");
  const double g = p.g_a;
  const double G = p.g_m;
  const double a1 = -std::sqrt(g * g + G * G) / G;
  const double d1 = g / G;
  return {a1, d1, 1.0 + a1 * a1 + d1 * d1};
}

Eigen::VectorXd Phi2Coefficients::vector() const {
  Eigen::VectorXd v(5);
  v << a, b, c, d, 1.0;
  return v / std::sqrt(b2_norm);
}

Eigen::VectorXd lowest_sector_state(const ModelParams& p, int N) {
  auto ground = eigen_ground(onsite_block<double>(p, N));
  Eigen::VectorXd v = ground.vector;
  for (Eigen::Index i = v.size() - 1; i >= 0; --i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

double bare_sector_ground(const ModelParams& p, int N) {
  ModelParams bare = p;
  bare.mu = 0.0;
  return ground_value(onsite_block<double>(bare, N));
}

Phi2Report phi2(const ModelParams& p) {
  require_resonance(p, "phi2");
  if (p.n_max < 2) throw std::out_of_range("phi2 needs n_max >= 2");
  const Eigen::VectorXd v = lowest_sector_state(p, 2);
  if (std::abs(v(4)) < 1e-12)
    throw RegimeError("phi2 coefficients are undefined when |0,2,g> carries no weight");
  const double lead = v(4);
  Phi2Coefficients numeric{v(0) / lead, v(1) / lead, v(2) / lead, v(3) / lead,
                           1.0 / (lead * lead), CoefficientSource::numeric_eigenvector};

  std::optional<Phi2Coefficients> printed;
  const double g = p.g_a;
  const double G = p.g_m;
  if (g > 0.0 && G > 0.0) {
    const double s = sector2_discriminant(g, G);
    const double inner = std::sqrt(std::max(0.0, -s + 3.0 * g * g + 5.0 * G * G));
    const double bc = -(s - 7.0 * g * g + 3.0 * G * G) / (6.0 * std::sqrt(2.0) * g * G);
    const double d = -inner / (2.0 * G);
    const double a = inner * (s - g * g + 3.0 * G * G) / (12.0 * g * G * G);
    printed = Phi2Coefficients{a,  bc, bc, d, a * a + 2.0 * bc * bc + d * d + 1.0,
                               CoefficientSource::printed_formula};
  }
  return {numeric, printed};
}

PerturbationElements perturbation_elements(const ModelParams& p) {
  require_resonance(p, "perturbation elements");
  if (p.n_max < 2) throw std::out_of_range("perturbation elements need n_max >= 2");
  const Eigen::VectorXd phi_1 = lowest_sector_state(p, 1);
  const Eigen::VectorXd phi_2 = lowest_sector_state(p, 2);
  PerturbationElements out{};
  out.t2 = phi_2.dot(hop_block<double>(1).transpose() * phi_1);
  // φ₀ = |0,0,g⟩ and a|1,0,g⟩ = |0,0,g⟩, so only the photon coefficient survives.
  out.t0 = hop_block<double>(0).row(0).dot(phi_1);
  if (p.g_m > 0.0) {
    const auto c1 = phi1(p);
    out.t0_printed = c1.a1 / std::sqrt(c1.b1_norm);
    if (const auto printed = phi2(p).printed) {
      out.t2_printed = (printed->d + std::sqrt(2.0) * printed->c * c1.a1 + printed->a * c1.d1) /
                       std::sqrt(c1.b1_norm * printed->b2_norm);
    }
  }
  return out;
}

namespace {

struct LowSectorTerms {
  double e1;
  double e2;
  double gap12;  // E₁₋ - E₂₋
  double gap10;  // E₁₋ - E₀₀
  double w2;     // |t2|²
  double w0;     // |t0|²
};

LowSectorTerms low_sector_terms(const ModelParams& p) {
  const auto spec = resonant_spectrum(p);
  const auto t = perturbation_elements(p);
  LowSectorTerms out{spec.e1m, spec.e2m, spec.e1m - spec.e2m, spec.e1m - spec.e00,
                     t.t2 * t.t2, t.t0 * t.t0};
  guarded(out.gap12, "E1- - E2-");
  guarded(out.gap10, "E1- - E00");
  return out;
}

}  // namespace

double second_order_energy(const ModelParams& p, double psi) {
  const auto s = low_sector_terms(p);
  const double amp = p.zkappa() * psi;
  return amp * amp * (s.w2 / s.gap12 + s.w0 / s.gap10);
}

double psi_squared_coefficient(const ModelParams& p) {
  const auto s = low_sector_terms(p);
  const double zk = p.zkappa();
  return zk + zk * zk * (s.w2 / s.gap12 + s.w0 / s.gap10);
}

AnalyticOrderParameter order_parameter_analytic(const ModelParams& p) {
  if (!(p.kappa > 0.0)) throw std::invalid_argument("analytic order parameter needs kappa > 0");
  const auto s = low_sector_terms(p);
  const double zk = p.zkappa();
  const double up = -zk * s.w2 / s.gap12;
  const double down = -zk * s.w0 / s.gap10;
  const double numerator = up + down - 1.0;
  const double denominator =
      zk * zk * s.w2 / (s.gap12 * s.gap12) + zk * zk * s.w0 / (s.gap10 * s.gap10);
  // Treat a radicand within rounding of zero as the boundary itself.
  const double rounding = 8.0 * std::numeric_limits<double>::epsilon() *
                          (std::abs(up) + std::abs(down) + 1.0);
  if (numerator <= rounding) return {Phase::Mott, 0.0};
  return {Phase::Superfluid, std::sqrt(numerator / denominator)};
}

double critical_hopping(const ModelParams& p, LobeBranch branch) {
  require_resonance(p, "critical hopping");
  const auto spec = resonant_spectrum(p);
  if (branch == LobeBranch::N0) {
    if (spec.e1m < -kDegeneracyGuard)
      throw LobeInapplicable("mu lies outside the N=0 lobe (E1- < 0)");
    const double t0 = perturbation_elements(p).t0;
    return std::max(0.0, spec.e1m / (t0 * t0)) / p.z;
  }
  if (!(spec.e1m < 0.0)) throw LobeInapplicable("mu lies outside the N=1 lobe (E1- >= 0)");
  if (!(spec.e2m - spec.e1m > 0.0))
    throw LobeInapplicable("mu lies outside the N=1 lobe (E2- <= E1-)");
  const auto s = low_sector_terms(p);
  const double denominator = guarded(s.w2 * s.e1 + s.w0 * s.gap12, "of the N=1 critical hopping");
  const double zk = -s.gap12 * s.e1 / denominator;
  if (!(zk > 0.0)) throw LobeInapplicable("N=1 critical hopping is not positive here");
  return zk / p.z;
}

double critical_hopping_n1_alternate(const ModelParams& p) {
  require_resonance(p, "critical hopping");
  const auto s = low_sector_terms(p);
  const double denominator = guarded(s.w2 * s.e2 + s.w0 * s.gap12, "of the N=1 critical hopping");
  return -s.gap12 * s.e1 / denominator / p.z;
}

double lobe_boundary_mu(const ModelParams& p, int N) {
  if (N < 0 || N + 1 > p.n_max) throw std::out_of_range("lobe boundary needs N+1 <= n_max");
  return bare_sector_ground(p, N + 1) - bare_sector_ground(p, N);
}

}  // namespace optomag

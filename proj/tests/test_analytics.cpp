#include <cmath>

#include "doctest.h"
#include "optomag/analytics.hpp"
#include "optomag/eigensolver.hpp"
#include "optomag/errors.hpp"
#include "optomag/meanfield.hpp"
#include "oracles.hpp"

using namespace optomag;

namespace {

ModelParams resonant(double g_m, double omega_minus_mu, int n_max = 8) {
  ModelParams p;
  p.g_m = g_m;
  p.mu = -omega_minus_mu;
  p.n_max = n_max;
  return p;
}

/// Exact second-order shift of the sector-1 ground under -zκψ(a + a†),
/// summed over every state of sectors 0 and 2.
double second_order_all_states(const ModelParams& p, double psi) {
  const auto e1 = eigen_ground(onsite_block<double>(p, 1));
  const auto s0 = eigen_full(onsite_block<double>(p, 0));
  const auto s2 = eigen_full(onsite_block<double>(p, 2));
  const double amp = p.zkappa() * psi;
  double sum = 0.0;
  for (const auto& k : s0) {
    const double v = k.vector.dot(hop_block<double>(0) * e1.vector);  // ⟨k|a|φ₁⟩
    sum += v * v / (e1.value - k.value);
  }
  for (const auto& k : s2) {
    const double v = k.vector.dot(hop_block<double>(1).transpose() * e1.vector);  // ⟨k|a†|φ₁⟩
    sum += v * v / (e1.value - k.value);
  }
  return amp * amp * sum;
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("regime detection") {
    ModelParams p;
    CHECK(is_resonant(p));
    p.delta_a = 0.1;
    p.delta_m = 0.1;
    CHECK_FALSE(is_resonant(p));
    CHECK(has_equal_detunings(p));
    p.delta_m = 0.2;
    CHECK_FALSE(has_equal_detunings(p));
    CHECK_THROWS_AS(detuned_n1_spectrum(p), RegimeError);
    CHECK_THROWS_AS(resonant_spectrum(p), RegimeError);
    CHECK_THROWS_AS(phi1(p), RegimeError);
    CHECK_THROWS_AS(critical_hopping(p, LobeBranch::N0), RegimeError);
  }

  TEST_CASE("detuned spectrum: uncoupled limit") {
    ModelParams p;
    p.g_a = 0.0;
    p.g_m = 0.0;
    p.omega_c = 0.4;
    p.delta_a = p.delta_m = 1.5;
    p.mu = 0.2;
    const auto s = detuned_n1_spectrum(p);
    CHECK(s.e1m == doctest::Approx(0.4 - 0.2));
    CHECK(s.e1p == doctest::Approx(1.5 - 0.2));
    CHECK(s.e10 == doctest::Approx(1.5 - 0.2));
  }

  TEST_CASE("detuned spectrum: unit coupling at zero detuning") {
    ModelParams p;
    const auto s = detuned_n1_spectrum(p);
    CHECK(s.e1m == doctest::Approx(-1.0));
    CHECK(s.e1p == doctest::Approx(1.0));
    CHECK(polariton_splitting(p) == doctest::Approx(2.0));
  }

  TEST_CASE("polariton splitting") {
    ModelParams p;
    p.g_a = 0.0;
    p.omega_c = 0.7;
    p.delta_a = p.delta_m = 0.7;
    CHECK(polariton_splitting(p) == doctest::Approx(0.0));
    p.g_a = 1.0;
    p.g_m = 0.8;
    CHECK(polariton_splitting(p) == doctest::Approx(2.0 * std::sqrt(1.64)).epsilon(1e-14));
    const auto s = detuned_n1_spectrum(p);
    CHECK(polariton_splitting(p) == doctest::Approx(s.e1p - s.e1m).epsilon(1e-14));
  }

  TEST_CASE("detuned closed form matches its matrix") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      ModelParams p;
      p.omega_c = u(rng);
      p.delta_a = p.delta_m = 2.0 * u(rng);
      p.g_a = 1.0 + u(rng) * 0.5;
      p.g_m = std::abs(u(rng));
      p.mu = u(rng);
      const auto s = detuned_n1_spectrum(p);
      const auto ref = oracle::jacobi_eigenvalues(detuned_n1_matrix(p).matrix());
      std::vector<double> v{s.e10, s.e1m, s.e1p};
      std::sort(v.begin(), v.end());
      for (int k = 0; k < 3; ++k) CHECK(v[k] == doctest::Approx(ref(k)).epsilon(1e-12));
    }
  }

  TEST_CASE("detuned matrix coincides with the sector block when omega_c = 0") {
    ModelParams p;
    p.delta_a = p.delta_m = 0.6;
    p.g_m = 0.4;
    p.mu = -0.3;
    CHECK(detuned_n1_matrix(p).matrix() == onsite_block<double>(p, 1).matrix());
  }

  TEST_CASE("resonant spectra equal independent diagonalization") {
    for (double G : {0.0, 0.2, 0.5, 0.8, 1.0, 1.2})
      for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const auto p = resonant(G, x);
        const auto s = resonant_spectrum(p);
        for (int N = 0; N <= 2; ++N) {
          const auto ref = oracle::jacobi_eigenvalues(onsite_block<double>(p, N).matrix());
          const auto closed = s.sector(N);
          for (std::size_t k = 0; k < closed.size(); ++k)
            CHECK(std::abs(closed[k] - ref(k)) <= 1e-10 * std::max(1.0, std::abs(ref(k))));
        }
      }
  }

  TEST_CASE("resonant spectrum anchors") {
    CHECK(resonant_spectrum(resonant(0.0, 0.0)).e2m == doctest::Approx(-std::sqrt(2.0)));
    const auto s = resonant_spectrum(resonant(0.8, 0.0));
    CHECK(s.e1m == doctest::Approx(-1.280625).epsilon(1e-6));
    CHECK(s.e10 == doctest::Approx(0.0));
    CHECK(s.e1p == doctest::Approx(1.280625).epsilon(1e-6));
    CHECK_THROWS(s.sector(3));
  }

  TEST_CASE("phi1 coefficients") {
    const auto c = phi1(resonant(0.8, 0.0));
    CHECK(c.a1 == doctest::Approx(-1.600781).epsilon(1e-6));
    CHECK(c.d1 == doctest::Approx(1.25));
    CHECK(c.b1_norm == doctest::Approx(5.125));
    CHECK(c.vector().norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(phi1(resonant(0.0, 0.0)), RegimeError);
  }

  TEST_CASE("phi1 is the sector-1 ground state") {
    for (double G : {0.2, 0.8, 1.2}) {
      const auto p = resonant(G, 0.5);
      const Eigen::Vector3d v = phi1(p).vector();
      const auto h = onsite_block<double>(p, 1).matrix();
      CHECK((h * v - resonant_spectrum(p).e1m * v).norm() <= 1e-12);
      const auto c = phi1(p);
      CHECK(c.a1 * c.a1 / c.b1_norm == doctest::Approx(0.5).epsilon(1e-12));
    }
  }

  TEST_CASE("phi2 from the sector-2 ground state") {
    for (double G : {0.2, 0.8, 1.2}) {
      const auto p = resonant(G, 0.0);
      const auto r = phi2(p);
      CHECK(r.numeric.source == CoefficientSource::numeric_eigenvector);
      const Eigen::VectorXd v = r.numeric.vector();
      CHECK(v.norm() == doctest::Approx(1.0));
      const auto h = onsite_block<double>(p, 2).matrix();
      CHECK((h * v - resonant_spectrum(p).e2m * v).norm() <= 1e-10);
      REQUIRE(r.printed.has_value());
      CHECK(r.printed->source == CoefficientSource::printed_formula);
      CHECK(r.printed->b == r.printed->c);
    }
    CHECK_THROWS_AS(phi2(resonant(0.0, 0.0)), RegimeError);
  }

  TEST_CASE("lowest sector state sign convention") {
    const auto v = lowest_sector_state(resonant(0.8, 0.0), 2);
    CHECK(v(4) > 0.0);
  }

  TEST_CASE("perturbation elements") {
    for (double G : {0.2, 0.8, 1.2}) {
      const auto p = resonant(G, 0.3);
      const auto t = perturbation_elements(p);
      CHECK(t.t0 * t.t0 == doctest::Approx(0.5).epsilon(1e-12));
      REQUIRE(t.t0_printed.has_value());
      CHECK(*t.t0_printed == doctest::Approx(t.t0).epsilon(1e-12));
      REQUIRE(t.t2_printed.has_value());

      // ⟨φ₂|a†|φ₁⟩ with both states embedded in the product space.
      const Basis b(p.n_max);
      const auto v1 = lowest_sector_state(p, 1);
      const auto v2 = lowest_sector_state(p, 2);
      const auto s1 = build_sector_basis(1);
      const auto s2 = build_sector_basis(2);
      double brute = 0.0;
      for (std::size_t i = 0; i < s1.size(); ++i)
        for (std::size_t j = 0; j < s2.size(); ++j)
          if (s2[j].n == s1[i].n + 1 && s2[j].m == s1[i].m && s2[j].atom == s1[i].atom)
            brute += v2(j) * std::sqrt(s1[i].n + 1.0) * v1(i);
      CHECK(std::abs(brute - t.t2) <= 1e-10);
    }
    CHECK(perturbation_elements(resonant(0.8, 0.0)).t0 == doctest::Approx(-0.707107).epsilon(1e-6));
  }

  TEST_CASE("second-order energy scaling") {
    auto p = resonant(0.8, 1.17);
    p.kappa = 0.05;
    CHECK(second_order_energy(p, 0.0) == 0.0);
    CHECK(second_order_energy(p, 0.4) == doctest::Approx(4.0 * second_order_energy(p, 0.2)));
    CHECK(second_order_energy(p, 0.3) < 0.0);
  }

  TEST_CASE("second-order energy against exact diagonalization") {
    auto p = resonant(0.8, 1.17, 6);
    const double psi = 0.5;
    auto residual = [&](double amplitude) {  // amplitude = zκψ
      p.kappa = amplitude / (p.z * psi);
      const double exact =
          ground_energy(p, psi) - resonant_spectrum(p).e1m - p.zkappa() * psi * psi;
      return exact - second_order_all_states(p, psi);
    };
    // The full sum over intermediate states leaves a fourth-order remainder.
    const double r1 = residual(0.01), r2 = residual(0.005);
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.05));
    p.kappa = 0.01 / (p.z * psi);
    const double all_states = second_order_all_states(p, psi);
    CHECK(std::abs(r1) < 0.05 * std::abs(all_states));
    // The two-state form keeps only the sector ground states as intermediates.
    CHECK(second_order_energy(p, psi) == doctest::Approx(all_states).epsilon(0.05));
  }

  TEST_CASE("degenerate denominators are reported") {
    const auto p = resonant(0.8, std::sqrt(1.64));  // E1- = E00
    CHECK_THROWS_AS(second_order_energy(p, 0.1), DegenerateDenominator);
  }

  TEST_CASE("psi-squared coefficient vanishes at the N=1 critical hopping") {
    for (double G : {0.2, 0.8, 1.2}) {
      auto p = resonant(G, 0.0);
      const double mu0 = lobe_boundary_mu(p, 0), mu1 = lobe_boundary_mu(p, 1);
      p.mu = 0.5 * (mu0 + mu1);
      p.kappa = critical_hopping(p, LobeBranch::N1);
      CHECK(std::abs(psi_squared_coefficient(p)) < 1e-12);
    }
  }

  TEST_CASE("N=0 critical hopping") {
    auto p = resonant(0.8, 2.0);
    CHECK(p.z * critical_hopping(p, LobeBranch::N0) == doctest::Approx(1.43875).epsilon(1e-5));
    // Reduces to 2 E1- at resonance.
    for (double x : {1.5, 2.0, 3.0}) {
      p = resonant(0.5, x);
      CHECK(p.z * critical_hopping(p, LobeBranch::N0) ==
            doctest::Approx(2.0 * resonant_spectrum(p).e1m).epsilon(1e-12));
    }
    p = resonant(0.8, std::sqrt(1.64));
    CHECK(critical_hopping(p, LobeBranch::N0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(critical_hopping(resonant(0.8, 0.5), LobeBranch::N0), LobeInapplicable);
  }

  TEST_CASE("N=0 critical hopping is continuous as g_m -> 0") {
    const double at_zero = critical_hopping(resonant(0.0, 2.0), LobeBranch::N0);
    const double near_zero = critical_hopping(resonant(1e-6, 2.0), LobeBranch::N0);
    CHECK(near_zero == doctest::Approx(at_zero).epsilon(1e-9));
    CHECK(4.0 * at_zero == doctest::Approx(2.0 * (2.0 - 1.0)));
  }

  TEST_CASE("N=1 critical hopping outside its lobe") {
    CHECK_THROWS_AS(critical_hopping(resonant(0.8, 2.0), LobeBranch::N1), LobeInapplicable);
    CHECK_THROWS_AS(critical_hopping(resonant(0.8, 0.2), LobeBranch::N1), LobeInapplicable);
  }

  TEST_CASE("N=1 alternate form differs from the Landau form") {
    auto p = resonant(0.8, 0.0);
    p.mu = 0.5 * (lobe_boundary_mu(p, 0) + lobe_boundary_mu(p, 1));
    const double landau = critical_hopping(p, LobeBranch::N1);
    const double alt = critical_hopping_n1_alternate(p);
    CHECK(landau > 0.0);
    CHECK(std::abs(alt - landau) > 0.1 * landau);
  }

  TEST_CASE("analytic order parameter around the N=1 boundary") {
    auto p = resonant(0.8, 0.0, 10);
    p.mu = 0.5 * (lobe_boundary_mu(p, 0) + lobe_boundary_mu(p, 1));
    const double kc = critical_hopping(p, LobeBranch::N1);

    p.kappa = kc;
    auto at = order_parameter_analytic(p);
    CHECK(at.phase == Phase::Mott);
    CHECK(at.psi == 0.0);

    p.kappa = 0.9 * kc;
    CHECK(order_parameter_analytic(p).phase == Phase::Mott);

    p.kappa = 1.05 * kc;
    const auto above = order_parameter_analytic(p);
    REQUIRE(above.phase == Phase::Superfluid);
    CHECK(above.psi > 0.0);
    const double numeric = minimize_order_parameter(p).psi_star;
    CHECK(above.psi == doctest::Approx(numeric).epsilon(0.10));

    p.kappa = 0.0;
    CHECK_THROWS(order_parameter_analytic(p));
  }

  TEST_CASE("lobe boundaries") {
    auto p = resonant(0.0, 0.0);
    CHECK(lobe_boundary_mu(p, 0) == doctest::Approx(-1.0));
    p.g_m = 0.8;
    CHECK(std::abs(lobe_boundary_mu(p, 0) + std::sqrt(1.64)) < 1e-10);
    p.omega_c = 0.7;
    CHECK(std::abs(lobe_boundary_mu(p, 0) - 0.7 + std::sqrt(1.64)) < 1e-10);

    ModelParams free;
    free.omega_c = 1.3;
    free.g_a = 0.0;
    for (int N = 0; N < 5; ++N) CHECK(lobe_boundary_mu(free, N) == doctest::Approx(1.3));
    CHECK_THROWS(lobe_boundary_mu(p, p.n_max));
  }

  TEST_CASE("lobe boundaries under atom detuning reflection") {
    ModelParams p;
    p.n_max = 12;
    p.delta_m = 0.5;
    for (double d : {0.3, 1.0, 2.5}) {
      for (int N = 1; N <= 4; ++N) {
        p.g_m = 0.0;
        p.delta_a = d;
        const double plus = lobe_boundary_mu(p, N);
        p.delta_a = -d;
        CHECK(std::abs(plus - lobe_boundary_mu(p, N)) <= 1e-8);
      }
    }
    p.g_m = 0.8;
    p.delta_a = 1.0;
    const double plus = lobe_boundary_mu(p, 1);
    p.delta_a = -1.0;
    CHECK(std::abs(plus - lobe_boundary_mu(p, 1)) > 1e-3);
  }

  TEST_CASE("bare sector ground ignores mu") {
    auto p = resonant(0.5, 3.0);
    CHECK(bare_sector_ground(p, 2) == doctest::Approx(resonant_spectrum(resonant(0.5, 0.0)).e2m));
  }

  TEST_CASE("phase names") {
    CHECK(std::string(to_string(Phase::Mott)) == "Mott");
    CHECK(std::string(to_string(Phase::Superfluid)) == "Superfluid");
  }
}

#include <algorithm>
#include <random>

#include "doctest.h"
#include "optomag/eigensolver.hpp"
#include "oracles.hpp"

using namespace optomag;

namespace {

SymmetricMatrix<double> wrap(const Eigen::MatrixXd& m) { return SymmetricMatrix<double>::from_upper(m); }

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("identity") {
    const auto pairs = eigen_full(wrap(Eigen::MatrixXd::Identity(3, 3)));
    REQUIRE(pairs.size() == 3);
    for (const auto& e : pairs) CHECK(e.value == doctest::Approx(1.0));
  }

  TEST_CASE("pauli x") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    const auto v = eigen_values(wrap(m));
    CHECK(v(0) == doctest::Approx(-1.0));
    CHECK(v(1) == doctest::Approx(1.0));
  }

  TEST_CASE("diagonal ground state") {
    Eigen::MatrixXd m = Eigen::Vector3d(3, 1, 2).asDiagonal();
    const auto g = eigen_ground(wrap(m));
    CHECK(g.value == doctest::Approx(1.0));
    CHECK(std::abs(g.vector(1)) == doctest::Approx(1.0));
    CHECK(g.vector(0) == doctest::Approx(0.0));
    CHECK(g.vector(2) == doctest::Approx(0.0));
  }

  TEST_CASE("sector 1 at resonance") {
    ModelParams p;
    p.omega_c = 1.0;
    p.g_m = 0.8;
    const auto v = eigen_values(onsite_block<double>(p, 1));
    CHECK(v(0) == doctest::Approx(1.0 - std::sqrt(1.64)).epsilon(1e-14));
    CHECK(v(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v(2) == doctest::Approx(1.0 + std::sqrt(1.64)).epsilon(1e-14));
    CHECK(ground_value(onsite_block<double>(p, 1)) == doctest::Approx(-0.280625).epsilon(1e-6));
  }

  TEST_CASE("block-diagonal ground is the lowest sector ground") {
    ModelParams p;
    p.g_m = 0.5;
    p.delta_a = 0.3;
    p.n_max = 7;
    for (double mu : {-2.0, -1.1, -0.4, 0.3}) {
      p.mu = mu;
      double best = 1e300;
      for (int N = 0; N <= p.n_max; ++N)
        best = std::min(best, eigen_values(onsite_block<double>(p, N))(0));
      CHECK(ground_value(assemble_mf_hamiltonian<double>(p, 0.0)) ==
            doctest::Approx(best).epsilon(1e-13));
    }
  }

  TEST_CASE("random matrices: residual, orthonormality, trace, ordering") {
    std::mt19937 rng(2024);
    for (int n : {1, 2, 3, 5, 8, 13, 21, 34, 64}) {
      const Eigen::MatrixXd m = oracle::random_symmetric(n, rng);
      const auto pairs = eigen_full(wrap(m));
      Eigen::MatrixXd vecs(n, n);
      double trace = 0.0;
      for (int k = 0; k < n; ++k) {
        const auto& e = pairs[k];
        CHECK((m * e.vector - e.value * e.vector).norm() < 1e-12 * std::max(1.0, m.norm()));
        vecs.col(k) = e.vector;
        trace += e.value;
        if (k > 0) CHECK(pairs[k - 1].value <= e.value);
      }
      CHECK((vecs.transpose() * vecs - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(trace == doctest::Approx(m.trace()).epsilon(1e-12));
      const auto ref = oracle::jacobi_eigenvalues(m);
      const auto ours = eigen_values(wrap(m));
      CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-11);
    }
  }

  TEST_CASE("spectrum is invariant under basis permutation") {
    std::mt19937 rng(5);
    for (int n : {4, 17, 40}) {
      const Eigen::MatrixXd m = oracle::random_symmetric(n, rng);
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      Eigen::MatrixXd pm(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pm(i, j) = m(perm[i], perm[j]);
      CHECK((eigen_values(wrap(m)) - eigen_values(wrap(pm))).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("non-finite input is rejected") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(0, 1) = std::nan("");
    CHECK_THROWS_AS(eigen_values(wrap(m)), Error);
    m(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(eigen_ground(wrap(m)), Error);
  }

  TEST_CASE("degenerate spectrum keeps an orthonormal basis") {
    const Eigen::MatrixXd m = Eigen::Vector4d(2, 2, 2, -1).asDiagonal();
    const auto pairs = eigen_full(wrap(m));
    Eigen::MatrixXd vecs(4, 4);
    for (int k = 0; k < 4; ++k) vecs.col(k) = pairs[k].vector;
    CHECK((vecs.transpose() * vecs - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-13);
  }
}

// hamiltonian.hpp - single-site mean-field Hamiltonian in the polariton basis
//
// The full matrix is block tridiagonal in the total-excitation sectors:
// on-site blocks on the diagonal, photon hopping -zκψ(a + a†) between adjacent
// sectors, and the constant zκψ² on the diagonal.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "optomag/model.hpp"

namespace optomag {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense real symmetric matrix. Off-diagonal writes always land on both
/// triangles with the same value, so symmetry is bit-exact.
template <typename Scalar = double>
class SymmetricMatrix {
 public:
  using Matrix = MatrixX<Scalar>;
  using Index = Eigen::Index;

  explicit SymmetricMatrix(Index dim) : m_(Matrix::Zero(dim, dim)) {}

  /// Mirrors the upper triangle of `m` into the lower one.
  static SymmetricMatrix from_upper(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    SymmetricMatrix out(m.rows());
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i <= j; ++i) out.set(i, j, m(i, j));
    return out;
  }

  Index dim() const { return m_.rows(); }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  void set(Index i, Index j, Scalar v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add_to_diagonal(Scalar v) { m_.diagonal().array() += v; }

  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// (2N+1)×(2N+1) on-site block of sector N, including the -Nμ shift.
template <typename Scalar = double>
SymmetricMatrix<Scalar> onsite_block(const ModelParams& p, int N) {
  using std::sqrt;
  if (N < 0 || N > p.n_max) throw std::out_of_range("sector exceeds the excitation cutoff");
  const auto states = build_sector_basis(N);
  SymmetricMatrix<Scalar> h(static_cast<Eigen::Index>(states.size()));
  const Scalar wc(p.omega_c), wa(p.omega_a()), wm(p.omega_m());
  const Scalar ga(p.g_a), gm(p.g_m), mu(p.mu);

  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const auto ii = static_cast<Eigen::Index>(i);
    const bool excited = s.atom == Atom::e;
    h.set(ii, ii,
          Scalar(s.n) * wc + Scalar(s.m) * wm + (excited ? wa : Scalar(0)) - Scalar(N) * mu);
    // m† a : |n, m, s⟩ -> |n-1, m+1, s⟩
    if (s.n > 0) {
      const FockState t{s.n - 1, s.m + 1, s.atom};
      const auto j = static_cast<Eigen::Index>(index_in_sector(t));
      h.set(ii, j, gm * sqrt(Scalar(s.n) * Scalar(s.m + 1)));
    }
    // σ a† : |n, m, e⟩ -> |n+1, m, g⟩
    if (excited) {
      const FockState t{s.n + 1, s.m, Atom::g};
      const auto j = static_cast<Eigen::Index>(index_in_sector(t));
      h.set(ii, j, ga * sqrt(Scalar(s.n + 1)));
    }
  }
  return h;
}

/// Raw photon-creation elements between sector N (rows) and sector N+1 (columns):
/// entry (i, j) = ⟨N+1, j| a† |N, i⟩.
template <typename Scalar = double>
MatrixX<Scalar> hop_block(int N) {
  using std::sqrt;
  if (N < 0) throw std::invalid_argument("sector index must be non-negative");
  const auto states = build_sector_basis(N);
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(static_cast<Eigen::Index>(sector_size(N)),
                                              static_cast<Eigen::Index>(sector_size(N + 1)));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const FockState t{s.n + 1, s.m, s.atom};
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(index_in_sector(t))) =
        sqrt(Scalar(s.n + 1));
  }
  return out;
}

/// Full (n_max+1)² mean-field Hamiltonian at real order parameter psi.
template <typename Scalar = double>
SymmetricMatrix<Scalar> assemble_mf_hamiltonian(const ModelParams& p, Scalar psi) {
  const int n_max = p.n_max;
  SymmetricMatrix<Scalar> h(static_cast<Eigen::Index>(sector_offset(n_max + 1)));
  const Scalar zk = Scalar(p.z) * Scalar(p.kappa);
  const Scalar coupling = -zk * psi;

  for (int N = 0; N <= n_max; ++N) {
    const auto block = onsite_block<Scalar>(p, N);
    const auto off = static_cast<Eigen::Index>(sector_offset(N));
    for (Eigen::Index j = 0; j < block.dim(); ++j)
      for (Eigen::Index i = 0; i <= j; ++i) h.set(off + i, off + j, block(i, j));
  }
  if (coupling != Scalar(0)) {
    for (int N = 0; N < n_max; ++N) {
      const auto hop = hop_block<Scalar>(N);
      const auto row0 = static_cast<Eigen::Index>(sector_offset(N));
      const auto col0 = static_cast<Eigen::Index>(sector_offset(N + 1));
      for (Eigen::Index i = 0; i < hop.rows(); ++i)
        for (Eigen::Index j = 0; j < hop.cols(); ++j)
          if (hop(i, j) != Scalar(0)) h.set(row0 + i, col0 + j, coupling * hop(i, j));
    }
  }
  h.add_to_diagonal(zk * psi * psi);
  return h;
}

struct NumberDiagonals {
  Eigen::VectorXd photon;
  Eigen::VectorXd magnon;
  Eigen::VectorXd atom;

  Eigen::VectorXd total() const { return photon + magnon + atom; }
};

NumberDiagonals number_diagonals(const Basis& basis);

/// ⟨v| a |v⟩ for a real vector in the full basis of the given cutoff.
template <typename Derived>
typename Derived::Scalar photon_annihilation_expectation(const Eigen::MatrixBase<Derived>& v,
                                                         int n_max) {
  using Scalar = typename Derived::Scalar;
  Scalar acc(0);
  for (int N = 0; N < n_max; ++N) {
    const auto hop = hop_block<Scalar>(N);
    const auto lo = v.segment(static_cast<Eigen::Index>(sector_offset(N)), hop.rows());
    const auto hi = v.segment(static_cast<Eigen::Index>(sector_offset(N + 1)), hop.cols());
    acc += lo.dot(hop * hi);
  }
  return acc;
}

}  // namespace optomag

// eigensolver.hpp - dense real-symmetric eigendecomposition
//
// Backed by Eigen's SelfAdjointEigenSolver (Householder tridiagonalization
// followed by implicit symmetric QR). Values come back ascending.

#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "optomag/errors.hpp"
#include "optomag/hamiltonian.hpp"

namespace optomag {

template <typename Scalar = double>
struct EigenPair {
  Scalar value;
  VectorX<Scalar> vector;
};

namespace detail {

template <typename Scalar>
void require_finite(const SymmetricMatrix<Scalar>& h) {
  if (!h.matrix().allFinite()) throw Error("eigensolver input has non-finite entries");
}

template <typename Scalar>
void require_converged(const Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>>& es) {
  if (es.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
}

}  // namespace detail

/// All eigenpairs, ascending by value, with orthonormal vectors.
template <typename Scalar>
std::vector<EigenPair<Scalar>> eigen_full(const SymmetricMatrix<Scalar>& h) {
  detail::require_finite(h);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(h.matrix(), Eigen::ComputeEigenvectors);
  detail::require_converged(es);
  std::vector<EigenPair<Scalar>> out;
  out.reserve(static_cast<std::size_t>(h.dim()));
  for (Eigen::Index k = 0; k < h.dim(); ++k)
    out.push_back({es.eigenvalues()(k), es.eigenvectors().col(k)});
  return out;
}

/// Eigenvalues only, ascending.
template <typename Scalar>
VectorX<Scalar> eigen_values(const SymmetricMatrix<Scalar>& h) {
  detail::require_finite(h);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(h.matrix(), Eigen::EigenvaluesOnly);
  detail::require_converged(es);
  return es.eigenvalues();
}

template <typename Scalar>
EigenPair<Scalar> eigen_ground(const SymmetricMatrix<Scalar>& h) {
  detail::require_finite(h);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(h.matrix(), Eigen::ComputeEigenvectors);
  detail::require_converged(es);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

/// Lowest eigenvalue without forming eigenvectors.
template <typename Scalar>
Scalar ground_value(const SymmetricMatrix<Scalar>& h) {
  return eigen_values(h)(0);
}

}  // namespace optomag

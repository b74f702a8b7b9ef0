#include "optomag/hamiltonian.hpp"

namespace optomag {

NumberDiagonals number_diagonals(const Basis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  NumberDiagonals d{Eigen::VectorXd(dim), Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& s = basis[static_cast<std::size_t>(i)];
    d.photon(i) = s.n;
    d.magnon(i) = s.m;
    d.atom(i) = s.atom == Atom::e ? 1.0 : 0.0;
  }
  return d;
}

}  // namespace optomag

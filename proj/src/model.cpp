#include "optomag/model.hpp"

#include <cmath>
#include <stdexcept>

#include "optomag/errors.hpp"

namespace optomag {

const ModelParams& validate_params(const ModelParams& p) {
  std::vector<std::string> bad;
  auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) bad.push_back(std::string(name) + " must be finite");
  };
  finite(p.omega_c, "omega_c");
  finite(p.delta_a, "delta_a");
  finite(p.delta_m, "delta_m");
  finite(p.g_a, "g_a");
  finite(p.g_m, "g_m");
  finite(p.mu, "mu");
  finite(p.kappa, "kappa");

  if (!(p.g_a > 0.0)) bad.emplace_back("g_a must be positive");
  if (!(p.g_m >= 0.0)) bad.emplace_back("g_m must be non-negative");
  if (!(p.kappa >= 0.0)) bad.emplace_back("kappa must be non-negative");
  if (p.z < 1) bad.emplace_back("z must be at least 1");
  if (p.n_max < 1) bad.emplace_back("n_max must be at least 1");
  if (!std::isfinite(p.omega_a())) bad.emplace_back("omega_c + delta_a must be finite");
  if (!std::isfinite(p.omega_m())) bad.emplace_back("omega_c + delta_m must be finite");

  if (!bad.empty()) throw ParamError(std::move(bad));
  return p;
}

std::string to_string(const FockState& s) {
  return "|" + std::to_string(s.n) + "," + std::to_string(s.m) + "," +
         (s.atom == Atom::e ? "e" : "g") + ">";
}

std::vector<FockState> build_sector_basis(int N) {
  if (N < 0) throw std::invalid_argument("sector index must be non-negative");
  std::vector<FockState> out;
  out.reserve(sector_size(N));
  for (int m = 0; m < N; ++m) out.push_back({N - 1 - m, m, Atom::e});
  for (int m = 0; m <= N; ++m) out.push_back({N - m, m, Atom::g});
  return out;
}

std::size_t index_in_sector(const FockState& s) {
  const int N = s.excitations();
  return s.atom == Atom::e ? static_cast<std::size_t>(s.m)
                           : static_cast<std::size_t>(N) + static_cast<std::size_t>(s.m);
}

Basis::Basis(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  states_.reserve(sector_offset(n_max + 1));
  offsets_.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int N = 0; N <= n_max; ++N) {
    offsets_.push_back(states_.size());
    for (const auto& s : build_sector_basis(N)) states_.push_back(s);
  }
}

std::optional<std::size_t> Basis::index_of(const FockState& s) const {
  if (s.n < 0 || s.m < 0) return std::nullopt;
  const int N = s.excitations();
  if (N > n_max_) return std::nullopt;
  return sector_offset(N) + index_in_sector(s);
}

Basis build_full_basis(int n_max) { return Basis(n_max); }

}  // namespace optomag

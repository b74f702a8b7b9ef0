// model.hpp - parameters and the truncated single-site polariton basis

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace optomag {

/// Physical and numerical parameters of one cavity site and its mean-field environment.
/// Energies are in units of g_a unless a config says otherwise.
struct ModelParams {
  double omega_c{0.0};  // photon frequency
  double delta_a{0.0};  // atom - photon detuning
  double delta_m{0.0};  // magnon - photon detuning
  double g_a{1.0};      // atom - photon coupling
  double g_m{0.0};      // magnon - photon coupling
  double mu{0.0};       // chemical potential
  double kappa{0.0};    // photon hopping rate
  int z{4};             // coordination number
  int n_max{8};         // total-excitation cutoff

  double omega_a() const { return omega_c + delta_a; }
  double omega_m() const { return omega_c + delta_m; }
  double zkappa() const { return z * kappa; }

  bool operator==(const ModelParams&) const = default;
};

/// Throws ParamError listing every violated invariant; returns p otherwise.
const ModelParams& validate_params(const ModelParams& p);

enum class Atom { g, e };

/// |n photons, m magnons, atom⟩
struct FockState {
  int n{0};
  int m{0};
  Atom atom{Atom::g};

  int excitations() const { return n + m + (atom == Atom::e ? 1 : 0); }

  bool operator==(const FockState&) const = default;
};

std::string to_string(const FockState& s);

/// First index of sector N in the full basis: sum of (2k+1) for k < N.
constexpr std::size_t sector_offset(int N) { return static_cast<std::size_t>(N) * N; }
constexpr std::size_t sector_size(int N) { return 2 * static_cast<std::size_t>(N) + 1; }

/// Sector N in canonical order: N e-states |N-1-m, m, e⟩ (m = 0..N-1),
/// then N+1 g-states |N-m, m, g⟩ (m = 0..N).
std::vector<FockState> build_sector_basis(int N);

/// Position of s inside its own sector.
std::size_t index_in_sector(const FockState& s);

class Basis {
 public:
  explicit Basis(int n_max);

  int n_max() const { return n_max_; }
  std::size_t dim() const { return states_.size(); }
  const std::vector<FockState>& states() const { return states_; }
  const FockState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<std::size_t>& sector_offsets() const { return offsets_; }

  /// nullopt when s lies outside the truncation or has negative counts.
  std::optional<std::size_t> index_of(const FockState& s) const;

 private:
  int n_max_;
  std::vector<FockState> states_;
  std::vector<std::size_t> offsets_;
};

Basis build_full_basis(int n_max);

}  // namespace optomag

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optomag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One message per violated parameter invariant.
class ParamError : public Error {
 public:
  explicit ParamError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// A closed form was asked for outside the resonant (or equal-detuning) regime it covers.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A perturbative energy denominator fell below the degeneracy guard.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// The requested Mott lobe does not contain the given chemical potential.
class LobeInapplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace optomag

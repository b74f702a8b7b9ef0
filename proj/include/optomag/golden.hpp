#pragma once

#include <cmath>
#include <utility>

namespace optomag {

template <typename Scalar>
struct ScalarMinimum {
  Scalar x;
  Scalar fx;
  int evaluations;
};

/// Golden-section search for a minimum of f on [lo, hi], stopping once the
/// bracket is no wider than tol. Assumes f is unimodal on the bracket.
template <typename Scalar, typename F>
ScalarMinimum<Scalar> golden_section_minimize(F&& f, Scalar lo, Scalar hi, Scalar tol,
                                              int max_iterations = 200) {
  using std::sqrt;
  const Scalar inv_phi = (sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar c = hi - inv_phi * (hi - lo);
  Scalar d = lo + inv_phi * (hi - lo);
  Scalar fc = f(c);
  Scalar fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iterations && (hi - lo) > tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  return fc < fd ? ScalarMinimum<Scalar>{c, fc, evals} : ScalarMinimum<Scalar>{d, fd, evals};
}

}  // namespace optomag

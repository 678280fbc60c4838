#pragma once

#include <cmath>
#include <concepts>

namespace dmgrad {

template <std::floating_point Real>
struct GoldenSectionResult {
  Real x;
  Real value;
  int iterations;
  bool converged;
};

/// Minimise a unimodal f on [lo, hi] until the bracket is narrower than
/// width_tolerance. Golden-section search: derivative free, one new
/// evaluation per iteration. On exact ties the lower sub-bracket is kept.
template <std::floating_point Real, class F>
GoldenSectionResult<Real> golden_section_minimize(F&& f, Real lo, Real hi, Real width_tolerance,
                                                  int max_iterations = 400) {
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real a = lo;
  Real b = hi;
  Real c = b - inv_phi * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = f(c);
  Real fd = f(d);
  int it = 0;
  while (b - a > width_tolerance && it < max_iterations) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  if (fc <= fd) return {c, fc, it, b - a <= width_tolerance};
  return {d, fd, it, b - a <= width_tolerance};
}

}  // namespace dmgrad

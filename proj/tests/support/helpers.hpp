#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kerrml/errors.hpp"
#include "kerrml/phase.hpp"

namespace testing {

inline kerrml::PhasePoint point(double t, double r, double th, double ph, double pt, double pr, double pth,
                                double pph) {
  return {{t, r, th, ph}, {pt, pr, pth, pph}};
}

// The Sigma2 example used all over: r = r_s/2, p_t = -1, p_phi = 2 (r_s = 2, c = 1).
inline kerrml::PhasePoint sigma2_example() {
  return point(0.0, 1.0, std::numbers::pi / 2, 0.0, -1.0, 0.0, 0.0, 2.0);
}

// True iff fn throws DomainError of exactly this kind.
bool throws_kind(kerrml::ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const kerrml::DomainError& e) {
    return e.kind() == kind;
  }
  return false;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace testing

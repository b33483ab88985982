#include <cmath>
#include <numbers>

#include "kerrml/flow.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/rng.hpp"

namespace kerrml {

namespace {

constexpr double kThetaPad = 0.2;

double random_theta(SplitMix64& rng) {
  return rng.uniform(kThetaPad, std::numbers::pi - kThetaPad);
}

void lock_sigma2(PhasePoint& pp, const KerrParams& k) { pp.mom.p_t = -expr::psi(pp.vec(), k); }

}  // namespace

PhasePoint random_phase_point(SplitMix64& rng, const KerrParams& k) {
  PhasePoint pp;
  do {
    pp.base = {rng.uniform(0.0, 10.0), rng.uniform(0.1, 5.0) * k.r_s(), random_theta(rng),
               rng.uniform(0.0, 2.0 * std::numbers::pi)};
  } while (pp.base.r == k.horizon_radius());
  pp.mom = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
  return pp;
}

PhasePoint random_factorizable_point(SplitMix64& rng, const KerrParams& k) {
  PhasePoint pp = random_phase_point(rng, k);
  pp.mom.p_phi = rng.sign() * rng.uniform(1.0, 2.0);
  return pp;
}

PhasePoint random_sigma2_point(SplitMix64& rng, const KerrParams& k, bool unit_norm) {
  PhasePoint pp;
  pp.base = {rng.uniform(0.0, 10.0), k.outer_horizon(), random_theta(rng),
             rng.uniform(0.0, 2.0 * std::numbers::pi)};
  pp.mom = {0.0, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.sign() * rng.uniform(1.0, 2.0)};
  lock_sigma2(pp, k);
  if (unit_norm) {
    pp = scale_momentum(pp, 1.0 / covector_norm(pp));
    lock_sigma2(pp, k);
  }
  return pp;
}

PhasePoint random_horizon_point_off_sigma2(SplitMix64& rng, const KerrParams& k, double min_ratio) {
  for (;;) {
    PhasePoint pp = random_sigma2_point(rng, k, false);
    pp.mom.p_t += rng.sign() * rng.uniform(0.5, 2.0);
    pp = scale_momentum(pp, 1.0 / covector_norm(pp));
    if (std::abs(pp.mom.p_t + expr::psi(pp.vec(), k)) > min_ratio * covector_norm(pp)) return pp;
  }
}

PhasePoint random_outgoing_null_ray(SplitMix64& rng, const KerrParams& k) {
  PhasePoint pp;
  pp.base = {0.0, rng.uniform(2.5, 5.0) * k.r_s(), rng.uniform(0.3, std::numbers::pi - 0.3),
             rng.uniform(0.0, 2.0 * std::numbers::pi)};
  pp.mom = {0.0, -rng.uniform(0.2, 1.0), rng.uniform(-0.5, 0.5), rng.uniform(-2.0, 2.0)};
  return normalize_null(pp, k, TimeOrientation::Future);
}

}  // namespace kerrml

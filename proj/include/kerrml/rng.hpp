// kerrml - seeded randomness and phase-space sample generators
//
// SplitMix64 (Steele, Lea, Flood): 64-bit state, increment 0x9E3779B97F4A7C15,
// mix constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31.
// Doubles take the top 53 bits. Chosen because it is trivially reproducible in
// any language, which keeps seeded reports comparable across implementations.

#pragma once

#include <cstdint>

#include "kerrml/phase.hpp"

namespace kerrml {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double sign() { return (next() >> 63) ? -1.0 : 1.0; }

 private:
  std::uint64_t state_;
};

// Generic point: r in [0.1, 5] r_s (never exactly on the horizon), theta away
// from the axis, momenta uniform in [-2, 2].
PhasePoint random_phase_point(SplitMix64& rng, const KerrParams& k);

// Point with Phi > 0 bounded away from the conormal stratum: as
// random_phase_point but |p_phi| in [1, 2].
PhasePoint random_factorizable_point(SplitMix64& rng, const KerrParams& k);

// r = outer horizon, p_t = -Psi, |p_phi| in [1, 2], p_r, p_theta in [-1, 1].
// With unit_norm the momenta are rescaled to |p| = 1 and p_t re-locked.
PhasePoint random_sigma2_point(SplitMix64& rng, const KerrParams& k, bool unit_norm);

// Horizon point with |p_t + Psi| > min_ratio |p|, |p| = 1.
PhasePoint random_horizon_point_off_sigma2(SplitMix64& rng, const KerrParams& k, double min_ratio = 0.1);

// Future-directed null covector at r in [2.5, 5] r_s with p_r < 0, which is
// outgoing because dr/ds = -Delta p_r / Sigma. It starts outside every photon
// orbit, so the ray never turns back to the horizon.
PhasePoint random_outgoing_null_ray(SplitMix64& rng, const KerrParams& k);

}  // namespace kerrml

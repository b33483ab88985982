#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/flow.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/rng.hpp"

using namespace kerrml;
using testing::point;
using testing::rel_err;
using testing::throws_kind;
using doctest::Approx;

namespace {
const KerrParams K;  // r_s = 2, c = 1, a = 1
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("params: extremal spin is structural") {
  CHECK(K.a() == 1.0);
  CHECK(K.extremal());
  CHECK(KerrParams(3.0, 2.0).a() == 1.5);
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { KerrParams(0.0, 1.0); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { KerrParams(2.0, -1.0); }));
  const auto ctl = KerrParams::sub_extremal_control(2.0, 1.0, 0.9);
  CHECK_FALSE(ctl.extremal());
  CHECK(ctl.a() == Approx(0.9));
  CHECK(ctl.outer_horizon() == Approx(1.0 + std::sqrt(1.0 - 0.81)));
}

TEST_CASE("delta, sigma, volume density: exact rationals") {
  CHECK(delta(1.0, K) == 0.0);
  CHECK(delta(3.0, K) == 4.0);
  CHECK(delta(0.0, K) == 1.0);
  CHECK(sigma(1.0, kPi / 2, K) == Approx(1.0).epsilon(1e-15));
  CHECK(sigma(0.0, kPi / 2, K) == Approx(0.0).epsilon(1e-15));
  CHECK(sigma(2.0, 0.0, K) == 5.0);
  CHECK(volume_density(2.0, kPi / 2, K) == Approx(4.0));
  CHECK(volume_density(1.0, kPi / 2, K) == Approx(1.0));
  CHECK(std::abs(volume_density(2.0, 1e-12, K)) < 1e-10);
  // Sigma at (r=2, theta=pi/2) is 4; the value 5 is at theta = 0, where sin vanishes.
  CHECK(volume_density(2.0, 0.0, K) == 0.0);
  CHECK(throws_kind(ErrorKind::RingSingular, [] { volume_density(0.0, kPi / 2, K); }));
}

TEST_CASE("metric contraction and H against the inverted covariant metric") {
  const auto pp = point(0, 3, kPi / 2, 0, 1, 0, 0, 0);
  CHECK(metric_contraction(pp, K) == Approx(-8.0 / 3.0).epsilon(1e-15));
  CHECK(hamiltonian(pp, K) == Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(metric_contraction(point(0, 3, 1, 0, 0, 0, 0, 0), K) == 0.0);
  const auto p2 = point(0, 3, 1.1, 0, 0.3, -0.7, 0.2, 1.4);
  auto p4 = p2;
  p4.mom = {0.6, -1.4, 0.4, 2.8};
  CHECK(metric_contraction(p4, K) == Approx(4.0 * metric_contraction(p2, K)).epsilon(1e-14));
  auto neg = p2;
  neg.mom = {-0.3, 0.7, -0.2, -1.4};
  CHECK(hamiltonian(neg, K) == Approx(hamiltonian(p2, K)).epsilon(1e-15));
  CHECK(throws_kind(ErrorKind::HorizonSingular, [] { metric_contraction(testing::sigma2_example(), K); }));

  SplitMix64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const PhasePoint q = random_phase_point(rng, K);
    if (std::abs(q.base.r - 1.0) < 1e-3) continue;
    worst = std::max(worst, std::abs(metric_contraction(q, K) - oracle::contraction(q, K)) /
                                (1.0 + std::abs(oracle::contraction(q, K))));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("psi: examples, horizon value, oracle") {
  CHECK(psi(point(0, 3, kPi / 2, 0, 0, 0, 0, 1), K) == Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(psi(point(0, 3, 1.0, 0, 1, 2, 3, 0), K) == 0.0);
  // Horizon value c p_phi / r_s, independent of theta.
  for (int i = 1; i < 200; ++i) {
    const double th = kPi * i / 200.0;
    CHECK(std::abs(psi(point(0, 1, th, 0, 0, 0, 0, 2), K) - 1.0) < 1e-12);
  }
  const KerrParams k2(3.0, 2.0);
  CHECK(psi(point(0, 1.5, 0.7, 0, 0, 0, 0, 3), k2) == Approx(2.0 * 3.0 / 3.0).epsilon(1e-14));
  const auto q = point(0, 2.7, 0.8, 0, 0.5, 0.1, -0.4, 1.3);
  CHECK(psi(q, K) == Approx(oracle::psi(q, K)).epsilon(1e-13));
  CHECK(psi(q, k2) == Approx(oracle::psi(q, k2)).epsilon(1e-13));
}

TEST_CASE("capital Phi: consistent form, displayed form, oracle") {
  const auto h = point(0, 1, kPi / 2, 0, -1, 0, 0, 2);
  // The displayed closed form gives 1 here; the form consistent with the
  // metric gives 1/4 (the p_phi^2 term carries 1/A, not 1/Sigma).
  CHECK(capital_phi_displayed(h, K) == Approx(1.0).epsilon(1e-15));
  CHECK(capital_phi(h, K) == Approx(0.25).epsilon(1e-15));
  CHECK(capital_phi(point(0, 1, 0.6, 0, 0.3, 5.0, 0, 0), K) == 0.0);
  const auto q = point(0, 2.2, 1.0, 0, 0.1, 0.4, -0.3, 0.9);
  auto q2 = q;
  q2.mom = {0.1, 0.8, -0.6, 1.8};
  CHECK(capital_phi(q2, K) == Approx(4.0 * capital_phi(q, K)).epsilon(1e-14));
  CHECK(throws_kind(ErrorKind::PoleSingular, [] { capital_phi(point(0, 2, 0.0, 0, 0, 0, 0, 1), K); }));

  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const PhasePoint p = random_phase_point(rng, K);
    if (std::abs(p.base.r - 1.0) < 0.05) continue;
    CHECK(rel_err(capital_phi(p, K), oracle::capital_phi(p, K)) < 1e-9);
  }
}

TEST_CASE("principal symbol and alpha") {
  CHECK(principal_symbol(testing::sigma2_example(), K) == 0.0);
  CHECK(principal_symbol(point(0, 3, kPi / 2, 0, 1, 0, 0, 0), K) == Approx(1.0).epsilon(1e-15));
  CHECK(alpha_coefficient(point(0, 1, kPi / 2, 0, 0, 0, 0, 0), K) == Approx(-4.0).epsilon(1e-15));

  // Negative on a grid of r > 0 (both blocks and the horizon). For r < 0 near
  // the ring A changes sign (the g_phiphi < 0 pocket), so the grid stops at 0.
  bool negative = true;
  for (int i = 1; i <= 60; ++i)
    for (int j = 1; j < 40; ++j) {
      const double r = 6.0 * i / 60.0;
      const double th = kPi * j / 40.0;
      if (sigma(r, th, K) < 1e-6) continue;
      negative = negative && alpha_coefficient(point(0, r, th, 0, 0, 0, 0, 0), K) < 0.0;
    }
  CHECK(negative);

  SplitMix64 rng(17);
  double worst = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PhasePoint p = random_phase_point(rng, K);
    if (std::abs(p.base.r - 1.0) < 1e-3) continue;
    const double p0 = full_principal_symbol(p, K);
    worst = std::max(worst, std::abs(alpha_coefficient(p, K) * principal_symbol(p, K) - p0) /
                                std::max(1.0, std::abs(p0)));
    worst_oracle = std::max(worst_oracle, std::abs(principal_symbol(p, K) - oracle::normalized_symbol(p, K)) /
                                              std::max(1.0, std::abs(principal_symbol(p, K))));
  }
  CHECK(worst < 1e-12);
  CHECK(worst_oracle < 1e-11);

  const auto q = point(0, 2.5, 0.9, 0, 0.2, -0.5, 0.3, 1.1);
  auto q3 = q;
  q3.mom = {0.6, -1.5, 0.9, 3.3};
  CHECK(principal_symbol(q3, K) == Approx(9.0 * principal_symbol(q, K)).epsilon(1e-14));
}

TEST_CASE("factorization") {
  const auto s2 = testing::sigma2_example();
  CHECK(factor_plus(s2, K) == 0.0);
  CHECK(factor_minus(s2, K) == 0.0);

  // r=2, theta=pi/2, p=(0,0,0,2): Sigma=4, A=6, Psi=1/3, Phi=1/9, so the
  // factors are 1/3 +- 1/3 and the symbol vanishes (g^phiphi = 0 there).
  const auto q = point(0, 2, kPi / 2, 0, 0, 0, 0, 2);
  CHECK(psi(q, K) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(capital_phi(q, K) == Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(factor_plus(q, K) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(factor_minus(q, K)) < 1e-15);
  CHECK(std::abs(principal_symbol(q, K)) < 1e-15);
  CHECK(std::abs(oracle::contraction(q, K)) < 1e-14);

  SplitMix64 rng(23);
  double worst = 0.0;
  int n = 0;
  while (n < 1000) {
    const PhasePoint p = random_factorizable_point(rng, K);
    if (capital_phi(p, K) <= 0.1) continue;
    ++n;
    const double ps = principal_symbol(p, K);
    worst = std::max(worst, std::abs(factor_plus(p, K) * factor_minus(p, K) - ps) / std::max(1.0, std::abs(ps)));
  }
  CHECK(worst < 1e-12);

  const auto conormal = point(0, 1, 1.0, 0, 0, 3, 0, 0);
  CHECK(throws_kind(ErrorKind::DegenerateFactorization, [&] { factor_plus(conormal, K); }));
}

TEST_CASE("subprincipal symbol") {
  const auto a = subprincipal_symbol(point(0, 2, kPi / 2, 0, 0, 1, 5, 0), K);
  CHECK(a.real() == 0.0);
  CHECK(std::abs(a - std::complex<double>(0, -6)) < 1e-12);
  const auto b = subprincipal_symbol(point(0, 2, kPi / 3, 0, 0, 0, 1, 0), K);
  CHECK(std::abs(b - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(subprincipal_from_coefficients(point(0, 2, kPi / 2, 0, 0, 1, 5, 0), K) - a) < 1e-12);
  CHECK(std::abs(subprincipal_from_coefficients(point(0, 2, kPi / 3, 0, 0, 0, 1, 0), K) - b) < 1e-12);
  for (int i = 1; i < 30; ++i)
    for (int j = 0; j < 10; ++j) {
      const auto h = point(0, 1, kPi * i / 30.0, 0, -1, j - 5.0, 0.5 * j, 2);
      CHECK(subprincipal_symbol(h, K) == std::complex<double>(0, 0));
    }
}

TEST_CASE("classify") {
  CHECK(classify(point(0, 1, kPi / 2, 0, -1, 7, 0, 2), K) == RegionClass::Sigma2);
  CHECK(classify(point(0, 1, kPi / 2, 0, 0, 1, 0, 0), K) == RegionClass::ConormalNH);
  CHECK(classify(point(0, 3, 1.0, 0, 0.2, -4, 1, 1), K) == RegionClass::Exterior);
  CHECK(classify(point(0, 0.5, 1.0, 0, 0.2, -4, 1, 1), K) == RegionClass::Interior);
  CHECK(classify(point(0, 1, 1.0, 0, 3, 1, 0, 2), K) == RegionClass::HorizonGeneric);
  CHECK(classify(point(0, 3, 0.0, 0, 1, 0, 0, 0), K) == RegionClass::AxisLimit);
  CHECK(classify(point(0, 1e-12, kPi / 2, 0, 1, 0, 0, 0), K) == RegionClass::RingSingular);
  CHECK(throws_kind(ErrorKind::ZeroCovector, [] { classify(point(0, 3, 1, 0, 0, 0, 0, 0), K); }));
  // cos(pi/2) is not exactly zero in floating point, so Sigma is tiny, not 0.
  CHECK(classify(point(0, 0, kPi / 2, 0, 1, 0, 0, 0), K) == RegionClass::RingSingular);
  CHECK(region_from_string(to_string(RegionClass::ConormalNH)) == RegionClass::ConormalNH);

  // Sigma2 samples with p_phi away from zero never classify as conormal.
  SplitMix64 rng(3);
  for (int i = 0; i < 300; ++i) CHECK(classify(random_sigma2_point(rng, K, true), K) == RegionClass::Sigma2);
}

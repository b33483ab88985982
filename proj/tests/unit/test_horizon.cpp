#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "kerrml/calculus.hpp"
#include "kerrml/horizon.hpp"
#include "kerrml/rng.hpp"

using namespace kerrml;
using testing::point;
using testing::throws_kind;
using doctest::Approx;

namespace {
const KerrParams K;
constexpr double kPi = std::numbers::pi;

// The oracle metric is singular on the horizon itself (the (t, phi) block
// degenerates), so horizon values of smooth quantities come from the symmetric
// average over r = r_s/2 +/- d, which is even in d; Richardson removes d^2.
double oracle_phi_on_horizon(const PhasePoint& pp) {
  return oracle::horizon_limit([](const PhasePoint& q) { return oracle::capital_phi(q, K); }, pp);
}

// d Psi / d r from the oracle; the central stencil never touches the horizon.
double oracle_dr_psi(const PhasePoint& pp) {
  auto f = [](const std::array<double, 8>& x) { return oracle::psi(PhasePoint::from_vec(x), K); };
  return oracle::richardson(f, pp.vec(), kR, 1e-3);
}

Sigma2Point exact(const PhasePoint& pp) { return project_to_sigma2(pp, K); }
}  // namespace

TEST_CASE("project_to_sigma2") {
  const auto sp = project_to_sigma2(point(0, 1 + 1e-9, kPi / 3, 0, -1 + 1e-9, 5, 0, 2), K);
  // On the horizon Psi = c p_phi / r_s = 1 for every theta.
  auto psi_of = [](const PhasePoint& q) { return oracle::psi(q, K); };
  CHECK(oracle::horizon_limit(psi_of, point(0, 1, kPi / 3, 0, 0, 0, 0, 2)) == Approx(1.0).epsilon(1e-9));
  CHECK(sp.pp.base.r == 1.0);
  CHECK(sp.pp.mom.p_t == Approx(-1.0).epsilon(1e-15));
  CHECK(sp.pp.mom.p_r == 5.0);
  CHECK(sp.r_residual == Approx(1e-9).epsilon(1e-6));
  CHECK(sp.pt_residual == Approx(1e-9).epsilon(1e-6));
  CHECK(classify(sp.pp, K) == RegionClass::Sigma2);

  const auto same = project_to_sigma2(testing::sigma2_example(), K);
  CHECK(same.pp.vec() == testing::sigma2_example().vec());
  CHECK(same.r_residual == 0.0);
  CHECK(same.pt_residual == 0.0);

  CHECK(throws_kind(ErrorKind::ConormalDegenerate, [] { project_to_sigma2(point(0, 1, 1, 0, 0, 1, 0, 0), K); }));
  CHECK(throws_kind(ErrorKind::NotNearSigma2, [] { project_to_sigma2(point(0, 1.5, 1, 0, -1, 0, 0, 2), K); }));
  CHECK(throws_kind(ErrorKind::NotNearSigma2, [] { project_to_sigma2(point(0, 1, 1, 0, -0.5, 0, 0, 2), K); }));
}

TEST_CASE("Psi is theta independent on the horizon") {
  SplitMix64 rng(12);
  auto psi = [](const auto& x) { return expr::psi(x, K); };
  for (int n = 0; n < 200; ++n) {
    const auto pp = random_sigma2_point(rng, K, false);
    CHECK(std::abs(gradient(psi, pp)[kTheta]) < 1e-12);
  }
}

TEST_CASE("double-characteristic lemma") {
  SplitMix64 rng(2024);
  std::vector<PhasePoint> on, off;
  for (int n = 0; n < 500; ++n) on.push_back(random_sigma2_point(rng, K, true));
  for (int n = 0; n < 500; ++n) off.push_back(random_horizon_point_off_sigma2(rng, K));
  const auto rep = verify_double_characteristic(on, off, K);
  CHECK(rep.pass);
  CHECK(rep.n_samples == 1000);
  CHECK(rep.max_residual < 1e-10);

  // Away from extremality the horizon is a simple root: the gradient survives.
  const auto ctl = KerrParams::sub_extremal_control(2.0, 1.0, 0.9);
  SplitMix64 rng2(2024);
  std::vector<PhasePoint> on2, off2;
  for (int n = 0; n < 50; ++n) on2.push_back(random_sigma2_point(rng2, ctl, true));
  for (int n = 0; n < 50; ++n) off2.push_back(random_horizon_point_off_sigma2(rng2, ctl));
  CHECK_FALSE(verify_double_characteristic(on2, off2, ctl).pass);
}

TEST_CASE("involutivity lemma") {
  SplitMix64 rng(7);
  std::vector<PhasePoint> pts, s2;
  for (int n = 0; n < 1000; ++n) pts.push_back(random_phase_point(rng, K));
  for (int n = 0; n < 200; ++n) s2.push_back(random_sigma2_point(rng, K, false));
  const auto rep = verify_involutivity(pts, s2, K);
  CHECK(rep.pass);
  CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("Hessian rank lemma") {
  const auto rep1 = verify_hessian_rank({testing::sigma2_example()}, K);
  CHECK(rep1.pass);

  // Structure: 2 df2 (x) df2 - 2 Phi dr (x) dr with df2 and Phi from the oracle.
  const auto ex = testing::sigma2_example();
  const double phi = oracle_phi_on_horizon(ex);
  CHECK(phi == Approx(0.25).epsilon(1e-8));
  std::array<double, 8> df2{};
  auto f2 = [](const std::array<double, 8>& x) {
    const auto p = PhasePoint::from_vec(x);
    return p.mom.p_t + oracle::psi(p, K);
  };
  for (std::size_t i = 0; i < 8; ++i) {
    auto d_i = [&](const PhasePoint& q) { return oracle::richardson(f2, q.vec(), i, 1e-3); };
    df2[i] = i == kR ? oracle::richardson(f2, ex.vec(), i, 1e-3) : oracle::horizon_limit(d_i, ex);
  }
  const auto h = hessian([](const auto& x) { return expr::principal_symbol(x, K); }, ex);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const double want = 2.0 * df2[i] * df2[j] - (i == kR && j == kR ? 2.0 * phi : 0.0);
      CHECK(h[i][j] == Approx(want).epsilon(1e-7).scale(1.0));
    }

  SplitMix64 rng(99);
  std::vector<PhasePoint> s2;
  for (int n = 0; n < 100; ++n) s2.push_back(random_sigma2_point(rng, K, false));
  CHECK(verify_hessian_rank(s2, K).pass);

  // Towards the conormal bundle the second singular value dies.
  double prev = 1.0;
  for (double pphi : {1.0, 1e-2, 1e-4}) {
    auto pp = point(0, 1, 1.0, 0, 0, 1, 0, pphi);
    pp.mom.p_t = -psi(pp, K);
    const auto sv = singular_values(hessian([](const auto& x) { return expr::principal_symbol(x, K); }, pp));
    CHECK(sv[1] / sv[0] < prev);
    prev = sv[1] / sv[0];
  }
  CHECK(prev < 1e-6);
  CHECK(throws_kind(ErrorKind::SampleOnConormal,
                    [] { verify_hessian_rank({point(0, 1, 1.0, 0, 0, 1, 0, 0)}, K); }));
}

TEST_CASE("subprincipal lemma") {
  const auto rep = verify_subprincipal(K);
  CHECK(rep.pass);
  CHECK(rep.max_residual == 0.0);
  CHECK(rep.n_samples >= 50u * 50u * 4u);
}

TEST_CASE("horizon flow map: worked example") {
  const auto sp = exact(point(0, 1, kPi / 3, 0, -1, 0, 0, 2));
  const auto out = horizon_flow_map(sp, 2.0, 0.0, K);
  CHECK(out.base.t == 2.0);
  CHECK(out.base.r == 1.0);
  CHECK(out.base.theta == kPi / 3);
  CHECK(out.base.phi == 1.0);
  CHECK(out.mom.p_t == -1.0);
  CHECK(out.mom.p_theta == 0.0);
  CHECK(out.mom.p_phi == 2.0);
  // h is constant along the orbit (nothing it depends on moves), so p_r = 2 h.
  const double h = -oracle_dr_psi(sp.pp) + std::sqrt(oracle_phi_on_horizon(sp.pp));
  CHECK(out.mom.p_r == Approx(2.0 * h).epsilon(1e-8));
  CHECK(horizon_drift(sp.pp, K, 1.0) == Approx(h).epsilon(1e-8));

  const auto id = horizon_flow_map(sp, 0.0, 0.0, K);
  for (std::size_t c = 0; c < 8; ++c) CHECK(id.vec()[c] == Approx(sp.pp.vec()[c]).epsilon(1e-15));

  // s2 is a pure p_r translation.
  CHECK(horizon_flow_map(sp, 2.0, 0.75, K).mom.p_r == Approx(out.mom.p_r + 0.75).epsilon(1e-14));

  // Other channels differ only in the p_r drift.
  const auto other = horizon_flow_map(sp, 2.0, 0.0, K, -1.0);
  CHECK(other.base.phi == 1.0);
  CHECK(other.mom.p_r == Approx(2.0 * (-oracle_dr_psi(sp.pp) - std::sqrt(oracle_phi_on_horizon(sp.pp)))).epsilon(1e-8));

  CHECK(throws_kind(ErrorKind::DegenerateFibre, [] {
    Sigma2Point bad;
    bad.pp = point(0, 1, 1.0, 0, 0, 1, 0, 0);
    horizon_flow_map(bad, 1.0, 0.0, K);
  }));
}

TEST_CASE("horizon flow map: group property and conic invariance") {
  SplitMix64 rng(4);
  for (int n = 0; n < 50; ++n) {
    const auto sp = exact(random_sigma2_point(rng, K, false));
    const double a = rng.uniform(0, 3), b = rng.uniform(0, 3);
    const auto ab = horizon_flow_map(sp, a + b, 0.0, K);
    const auto mid = horizon_flow_map(sp, a, 0.0, K);
    const auto ba = horizon_flow_map(exact(mid), b, 0.0, K);
    CHECK(ab.base.t == Approx(ba.base.t).epsilon(1e-15));
    CHECK(ab.base.phi == Approx(ba.base.phi).epsilon(1e-15));
    CHECK(ab.mom.p_r == Approx(ba.mom.p_r).epsilon(1e-10).scale(1.0));

    const double lambda = rng.uniform(0.2, 5.0), s2 = rng.uniform(-1, 1);
    const auto scaled = horizon_flow_map(exact(scale_momentum(sp.pp, lambda)), a, lambda * s2, K);
    const auto ref = horizon_flow_map(sp, a, s2, K);
    CHECK(scaled.base.t == ref.base.t);
    CHECK(scaled.base.phi == ref.base.phi);
    CHECK(scaled.mom.p_r == Approx(lambda * ref.mom.p_r).epsilon(1e-10).scale(1.0));
    CHECK(scaled.mom.p_t == Approx(lambda * ref.mom.p_t).epsilon(1e-14));
  }
}

TEST_CASE("horizon flow map agrees with the factor_minus field") {
  SplitMix64 rng(31);
  auto fm = [](const auto& x) { return expr::factor_minus(x, K); };
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 * i);
  for (int n = 0; n < 10; ++n) {
    const auto sp = exact(random_sigma2_point(rng, K, false));
    const auto path = integrate_field(fm, sp.pp, 0.0, 5.0, IntegratorConfig{}, &grid);
    REQUIRE(path.status == OdeStatus::Completed);
    REQUIRE(path.s == grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto want = horizon_flow_map(sp, grid[i], 0.0, K, 1.0);
      for (std::size_t c = 0; c < 8; ++c)
        CHECK(path.points[i].vec()[c] == Approx(want.vec()[c]).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("fibre sample invariants") {
  const auto sp = exact(point(0.5, 1, 1.2, 0.3, -0.75, 0.4, -0.6, 1.5));
  std::vector<double> s1 = {0, 0.5, 1, 2, 4}, s2 = {-2, -0.5, 0, 1, 3};
  const auto fib = fibre_sample(sp, s1, s2, K);
  REQUIRE(fib.points.size() == s1.size() * s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i)
    for (std::size_t j = 0; j < s2.size(); ++j) {
      const auto& q = fib.at(i, j);
      CHECK(q.base.r == K.horizon_radius());
      CHECK(q.mom.p_t == Approx(-(K.c() / K.r_s()) * 1.5).epsilon(1e-14));
      CHECK(q.mom.p_theta == -0.6);
      CHECK(q.mom.p_phi == 1.5);
      CHECK(q.base.t - sp.pp.base.t == Approx(s1[i]).epsilon(1e-14).scale(1.0));
      if (s1[i] > 0)
        CHECK((q.base.phi - sp.pp.base.phi) / (q.base.t - sp.pp.base.t) ==
              Approx(K.c() / K.r_s()).epsilon(1e-14));
      CHECK(fib.at(i, j).mom.p_r - fib.at(i, 0).mom.p_r == Approx(s2[j] - s2[0]).epsilon(1e-12).scale(1.0));
      CHECK(classify(q, K) == RegionClass::Sigma2);
    }
}

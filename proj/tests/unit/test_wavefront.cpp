#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../support/helpers.hpp"
#include "kerrml/rng.hpp"
#include "kerrml/wavefront.hpp"

using namespace kerrml;
using testing::point;
using testing::throws_kind;
using doctest::Approx;

namespace {
const KerrParams K;
constexpr double kPi = std::numbers::pi;

const WavefrontSample& leaf_with(const PropagationResult& r, Branch b) {
  for (int id : r.leaves())
    if (r.samples[static_cast<std::size_t>(id)].branch == b) return r.samples[static_cast<std::size_t>(id)];
  FAIL("no leaf on branch " << to_string(b));
  return r.samples.front();
}

bool lineage_ok(const PropagationResult& r) {
  for (int id : r.leaves()) {
    const int root = r.root_of(id);
    if (std::find(r.initial.begin(), r.initial.end(), root) == r.initial.end()) return false;
  }
  for (const auto& w : r.samples)
    if (w.parent >= w.id) return false;  // parents strictly older: acyclic
  return true;
}
}  // namespace

TEST_CASE("exterior seed reduces to the H-flow") {
  SplitMix64 rng(8);
  const auto seed = random_outgoing_null_ray(rng, K);
  const auto res = propagate({seed}, 10.0, PropagationConfig{}, K);
  REQUIRE(res.leaves().size() == 1);
  const auto& leaf = res.samples[static_cast<std::size_t>(res.leaves()[0])];
  const auto traj = integrate(seed, 0.0, 10.0, IntegratorConfig{}, K);
  CHECK(leaf.pp.vec() == traj.points.back().vec());
  CHECK(leaf.channel == Channel::Principal);
  CHECK(leaf.outcome == "SpanReached");
  CHECK(leaf.drift == conserved_report(traj).max_scaled());
  CHECK(res.events.empty());
  CHECK(lineage_ok(res));
}

TEST_CASE("Sigma2 seed: three branches with the same base orbit") {
  const auto seed = point(0.25, 1, 1.1, 0.5, -0.9, 0.3, 0.2, 1.8);
  const double s1 = 3.0;
  const auto res = propagate({seed}, s1, PropagationConfig{}, K);
  CHECK(res.leaves().size() == 3);
  CHECK(lineage_ok(res));
  for (const auto& w : res.samples) {
    CHECK(w.region == RegionClass::Sigma2);
    CHECK(w.channel == Channel::HorizonOrbit);  // never Principal on Sigma2
  }
  for (Branch b : {Branch::Orbit, Branch::Plus, Branch::Minus}) {
    const auto& q = leaf_with(res, b).pp;
    CHECK(q.base.t == Approx(0.25 + s1).epsilon(1e-9));
    CHECK(q.base.r == 1.0);
    CHECK(q.base.theta == Approx(1.1).epsilon(1e-12));
    CHECK(q.base.phi == Approx(0.5 + (K.c() / K.r_s()) * s1).epsilon(1e-9));
    CHECK(q.mom.p_t == Approx(-0.9).epsilon(1e-9));
    CHECK(q.mom.p_theta == Approx(0.2).epsilon(1e-12));
    CHECK(q.mom.p_phi == 1.8);
  }
  // The orbit branch is the closed-form map; minus is the same generator integrated.
  CHECK(leaf_with(res, Branch::Orbit).pp.mom.p_r ==
        Approx(leaf_with(res, Branch::Minus).pp.mom.p_r).epsilon(1e-8).scale(1.0));
  CHECK(leaf_with(res, Branch::Plus).pp.mom.p_r != Approx(leaf_with(res, Branch::Minus).pp.mom.p_r));

  const auto census = channel_census(res);
  CHECK(census.leaves == 3);
  CHECK(census.total_samples == res.samples.size());
  CHECK(census.by_channel.at("HorizonOrbit") == 3);
  CHECK(census.by_branch.at("orbit") == 1);
  CHECK(census.by_branch.at("plus") == 1);
  CHECK(census.by_branch.at("minus") == 1);
  CHECK(census.by_event.at("LeaveSigma2ViaPlus") == 1);
  CHECK(census.by_event.at("LeaveSigma2ViaMinus") == 1);

  PropagationConfig only_orbit;
  only_orbit.mask.plus = only_orbit.mask.minus = false;
  const auto one = propagate({seed}, s1, only_orbit, K);
  CHECK(one.leaves().size() == 1);
  CHECK(one.events.empty());
}

TEST_CASE("horizon entry from the principal channel") {
  // Ingoing, no angular momentum: hits the horizon with p_t + Psi = p_t != 0.
  const auto in = normalize_null(point(0, 6, kPi / 2, 0, 0, 1, 0, 0), K);
  const auto generic = propagate({in}, 1e4, PropagationConfig{}, K);
  REQUIRE(generic.leaves().size() == 1);
  CHECK(generic.samples[static_cast<std::size_t>(generic.leaves()[0])].outcome == "HorizonGeneric");

  // A ray arriving with small p_t + Psi relative to the tangential momenta enters
  // Sigma2 once the entry tolerance admits it; then it branches.
  const auto near = normalize_null(point(0, 6, 1.2, 0, 0, 1, 0, 0.02), K);
  PropagationConfig wide;
  wide.entry_tol = 10.0;
  const auto entered = propagate({near}, 1e4, wide, K);
  CHECK(entered.leaves().size() == 3);
  CHECK(channel_census(entered).by_event.at("EnterSigma2") == 1);
  CHECK(lineage_ok(entered));
  for (int id : entered.leaves()) {
    const auto& w = entered.samples[static_cast<std::size_t>(id)];
    CHECK(w.channel == Channel::HorizonOrbit);
    CHECK(w.pp.mom.p_phi == Approx(0.02).epsilon(1e-10));
    CHECK(w.pp.mom.p_t == Approx(-(K.c() / K.r_s()) * 0.02).epsilon(1e-10));
  }
}

TEST_CASE("seed errors") {
  const PropagationConfig cfg;
  CHECK(throws_kind(ErrorKind::ConormalEncounter, [&] { propagate({point(0, 1, 1, 0, 0, 1, 0, 0)}, 1, cfg, K); }));
  CHECK(throws_kind(ErrorKind::UnclassifiableSample, [&] { propagate({point(0, 6, 1, 0, 0, 0, 0, 0)}, 1, cfg, K); }));
  CHECK(throws_kind(ErrorKind::UnclassifiableSample,
                    [&] { propagate({point(0, 0, kPi / 2, 0, 1, 0, 0, 0)}, 1, cfg, K); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { propagate({point(0, 6, 1, 0, 1, 0, 0, 0)}, 1, cfg, K); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { propagate({}, -1, cfg, K); }));

  // Horizon, but not characteristic: kept as a leaf, nothing propagates.
  const auto res = propagate({point(0, 1, 1, 0, 1, 0, 0, 1)}, 1, cfg, K);
  REQUIRE(res.leaves().size() == 1);
  CHECK(res.samples[0].outcome == "NonCharacteristic");
}

TEST_CASE("mixed cloud: census bookkeeping") {
  SplitMix64 rng(17);
  std::vector<PhasePoint> seeds = {testing::sigma2_example()};
  for (int i = 0; i < 4; ++i) seeds.push_back(random_outgoing_null_ray(rng, K));
  const auto res = propagate(seeds, 5.0, PropagationConfig{}, K);
  CHECK(res.initial.size() == seeds.size());
  CHECK(lineage_ok(res));
  const auto c = channel_census(res);
  std::size_t sum = 0;
  for (const auto& [k, v] : c.by_channel) sum += v;
  CHECK(sum == c.leaves);
  CHECK(c.by_channel.at("Principal") == 4);
  CHECK(c.by_channel.at("HorizonOrbit") == 3);
  CHECK(c.max_principal_drift < 1e-9);
  // Exact invariants survive every channel.
  for (int id : res.leaves()) {
    const auto& leaf = res.samples[static_cast<std::size_t>(id)];
    const auto& root = res.samples[static_cast<std::size_t>(res.root_of(id))];
    CHECK(leaf.pp.mom.p_t == Approx(root.pp.mom.p_t).epsilon(1e-10));
    CHECK(leaf.pp.mom.p_phi == Approx(root.pp.mom.p_phi).epsilon(1e-10));
  }
}

TEST_CASE("composition: identity, disjointness, validation") {
  SplitMix64 rng(23);
  std::vector<Sigma2Point> seeds;
  for (int i = 0; i < 5; ++i) seeds.push_back(project_to_sigma2(random_sigma2_point(rng, K, false), K));
  const auto rel = horizon_flowout(seeds, {0.0, 0.5, 1.0, 1.5}, 1.0, K);
  std::vector<PhasePoint> sources;
  for (const auto& sp : seeds) sources.push_back(sp.pp);

  const auto same = compose_relations(rel, diagonal_relation(sources), 1e-9, K);
  CHECK(same.pairs.size() == rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    CHECK(same.pairs[i].first.vec() == rel[i].first.vec());
    CHECK(same.pairs[i].second.vec() == rel[i].second.vec());
  }

  std::vector<PhasePoint> far;
  for (auto p : sources) {
    p.base.t += 100.0;
    far.push_back(p);
  }
  const auto none = compose_relations(rel, diagonal_relation(far), 1e-6, K);
  CHECK(none.pairs.empty());
  CHECK(none.empty_composition);
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { compose_relations(rel, rel, -1.0, K); }));
}

TEST_CASE("composition: flowout after p_r translation is the two-parameter horizon family") {
  SplitMix64 rng(29);
  std::vector<Sigma2Point> base;
  for (int i = 0; i < 4; ++i) base.push_back(project_to_sigma2(random_sigma2_point(rng, K, false), K));
  const std::vector<double> s1 = {0.0, 0.7, 1.4, 2.1}, s2 = {-1.0, 0.0, 0.5, 2.0};

  // Translation relation {(x + s2 dp_r, x)} and the flowout of its images.
  SampledRelation translate;
  std::vector<Sigma2Point> shifted;
  for (const auto& sp : base)
    for (double b : s2) {
      Sigma2Point q = sp;
      q.pp = horizon_flow_map(sp, 0.0, b, K);
      translate.emplace_back(q.pp, sp.pp);
      shifted.push_back(q);
    }
  const auto flow = horizon_flowout(shifted, s1, 1.0, K);
  const auto comp = compose_relations(flow, translate, 1e-9, K);
  REQUIRE(comp.pairs.size() == base.size() * s1.size() * s2.size());
  for (const auto& [a, c] : comp.pairs) {
    CHECK(a.base.r == K.horizon_radius());
    CHECK(a.mom.p_t == Approx(-(K.c() / K.r_s()) * a.mom.p_phi).epsilon(1e-12));
    CHECK(a.mom.p_phi == c.mom.p_phi);
    CHECK(a.mom.p_theta == c.mom.p_theta);
    const double dt = a.base.t - c.base.t;
    CHECK(a.base.phi - c.base.phi == Approx((K.c() / K.r_s()) * dt).epsilon(1e-12).scale(1.0));
    // (s1, s2) recovered from (t, p_r) reproduce the closed form.
    const double b = a.mom.p_r - c.mom.p_r - dt * horizon_drift(project_to_sigma2(c, K).pp, K, 1.0);
    const auto want = horizon_flow_map(project_to_sigma2(c, K), dt, b, K);
    CHECK(want.mom.p_r == Approx(a.mom.p_r).epsilon(1e-10).scale(1.0));
    CHECK(std::any_of(s2.begin(), s2.end(), [&](double v) { return std::abs(v - b) < 1e-9; }));
  }
}

TEST_CASE("composition is associative on sampled relations") {
  SplitMix64 rng(31);
  std::vector<Sigma2Point> seeds;
  for (int i = 0; i < 3; ++i) seeds.push_back(project_to_sigma2(random_sigma2_point(rng, K, false), K));
  std::vector<PhasePoint> src;
  for (const auto& sp : seeds) src.push_back(sp.pp);
  const auto C = diagonal_relation(src);
  const auto B = horizon_flowout(seeds, {0.0, 0.5, 1.0}, 1.0, K);
  std::vector<Sigma2Point> mids;
  for (const auto& pr : B) mids.push_back(project_to_sigma2(pr.first, K));
  const auto A = horizon_flowout(mids, {0.0, 0.25}, -1.0, K);

  const double tol = 1e-9;
  const auto left = compose_relations(compose_relations(A, B, tol, K).pairs, C, tol, K).pairs;
  const auto right = compose_relations(A, compose_relations(B, C, tol, K).pairs, tol, K).pairs;
  REQUIRE(left.size() == right.size());
  REQUIRE(!left.empty());
  const double scale = 4.0;
  for (const auto& [x, z] : left) {
    bool found = false;
    for (const auto& [x2, z2] : right)
      if (relation_distance(x, x2, scale, K) <= 2 * tol && relation_distance(z, z2, scale, K) <= 2 * tol) found = true;
    CHECK(found);
  }
}

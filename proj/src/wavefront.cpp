#include "kerrml/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kerrml/errors.hpp"

namespace kerrml {

std::string_view to_string(Channel c) {
  return c == Channel::Principal ? "Principal" : "HorizonOrbit";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Root: return "root";
    case Branch::Orbit: return "orbit";
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
  }
  return "unknown";
}

std::string_view to_string(EventType e) {
  switch (e) {
    case EventType::EnterSigma2: return "EnterSigma2";
    case EventType::LeaveSigma2ViaPlus: return "LeaveSigma2ViaPlus";
    case EventType::LeaveSigma2ViaMinus: return "LeaveSigma2ViaMinus";
  }
  return "unknown";
}

std::vector<int> PropagationResult::leaves() const {
  std::vector<int> out;
  for (const auto& s : samples)
    if (s.leaf) out.push_back(s.id);
  return out;
}

int PropagationResult::root_of(int id) const {
  while (samples.at(static_cast<std::size_t>(id)).parent >= 0) id = samples[static_cast<std::size_t>(id)].parent;
  return id;
}

namespace {

class Engine {
 public:
  Engine(double duration, const PropagationConfig& cfg, const KerrParams& k)
      : duration_(duration), cfg_(cfg), k_(k) {}

  PropagationResult run(const std::vector<PhasePoint>& seeds) {
    for (const auto& seed : seeds) seed_one(seed);
    return std::move(res_);
  }

 private:
  int add(const PhasePoint& pp, RegionClass region, Channel ch, int parent, Branch br, double s) {
    WavefrontSample w;
    w.id = static_cast<int>(res_.samples.size());
    w.pp = pp;
    w.region = region;
    w.channel = ch;
    w.parent = parent;
    w.branch = br;
    w.s = s;
    res_.samples.push_back(w);
    return w.id;
  }

  void finish(int id, std::string outcome, double drift = 0.0) {
    auto& w = res_.samples[static_cast<std::size_t>(id)];
    w.leaf = true;
    w.outcome = std::move(outcome);
    w.drift = drift;
  }

  RegionClass classify_seed(const PhasePoint& pp) const {
    try {
      return classify(pp, k_, cfg_.classify_tol);
    } catch (const DomainError& e) {
      throw DomainError(ErrorKind::UnclassifiableSample, std::string("cannot classify seed: ") + e.what());
    }
  }

  void seed_one(const PhasePoint& seed) {
    const RegionClass rc = classify_seed(seed);
    switch (rc) {
      case RegionClass::ConormalNH:
        throw DomainError(ErrorKind::ConormalEncounter,
                          "seed lies on the conormal bundle of the horizon; propagation undefined");
      case RegionClass::RingSingular:
      case RegionClass::AxisLimit:
        throw DomainError(ErrorKind::UnclassifiableSample,
                          "seed in " + std::string(to_string(rc)) + " region cannot be propagated");
      case RegionClass::HorizonGeneric: {
        // Not characteristic: (p_t + Psi)^2 != 0 = Delta Phi. Nothing propagates.
        const int id = add(seed, rc, Channel::Principal, -1, Branch::Root, 0.0);
        res_.initial.push_back(id);
        finish(id, "NonCharacteristic");
        return;
      }
      case RegionClass::Sigma2: {
        const Sigma2Point sp = project(seed);
        const int id = add(sp.pp, rc, Channel::HorizonOrbit, -1, Branch::Root, 0.0);
        res_.initial.push_back(id);
        branch(id, sp, 0.0);
        return;
      }
      case RegionClass::Exterior:
      case RegionClass::Interior: {
        const int id = add(seed, rc, Channel::Principal, -1, Branch::Root, 0.0);
        res_.initial.push_back(id);
        principal(id, seed, 0.0);
        return;
      }
    }
  }

  Sigma2Point project(const PhasePoint& pp) const {
    try {
      // Closeness was already decided by the caller; project unconditionally.
      return project_to_sigma2(pp, k_, 1.0);
    } catch (const DomainError& e) {
      if (e.kind() == ErrorKind::ConormalDegenerate) throw DomainError(ErrorKind::ConormalEncounter, e.what());
      throw;
    }
  }

  void principal(int id, const PhasePoint& start, double s0) {
    const Trajectory tr = integrate(start, s0, duration_, cfg_.integrator, k_);
    const double drift = conserved_report(tr).max_scaled();
    const PhasePoint& end = tr.points.back();
    const double s_end = tr.s.back();

    if (tr.termination != Termination::HorizonApproach) {
      const int leaf = add(end, region_or(end, RegionClass::Exterior), Channel::Principal, id, Branch::Root, s_end);
      finish(leaf, std::string(to_string(tr.termination)), drift);
      return;
    }

    PhasePoint at_h = end;
    at_h.base.r = k_.horizon_radius();
    const double f2 = at_h.mom.p_t + psi(at_h, k_);
    const double tangential = std::abs(end.mom.p_t) + std::abs(end.mom.p_theta) + std::abs(end.mom.p_phi);
    if (!(std::abs(f2) <= cfg_.entry_tol * tangential)) {
      const int leaf = add(end, RegionClass::HorizonGeneric, Channel::Principal, id, Branch::Root, s_end);
      finish(leaf, "HorizonGeneric", drift);
      return;
    }
    const Sigma2Point sp = project(end);
    const int entry = add(sp.pp, RegionClass::Sigma2, Channel::HorizonOrbit, id, Branch::Root, s_end);
    res_.samples[static_cast<std::size_t>(entry)].drift = drift;
    res_.events.push_back({s_end, entry, EventType::EnterSigma2});
    branch(entry, sp, s_end);
  }

  RegionClass region_or(const PhasePoint& pp, RegionClass fallback) const {
    try {
      return classify(pp, k_, cfg_.classify_tol);
    } catch (const DomainError&) {
      return fallback;
    }
  }

  void branch(int parent, const Sigma2Point& sp, double s0) {
    const double span = duration_ - s0;
    if (cfg_.mask.orbit) {
      const PhasePoint q = horizon_flow_map(sp, span, 0.0, k_, cfg_.orbit_alpha);
      const int id = add(q, RegionClass::Sigma2, Channel::HorizonOrbit, parent, Branch::Orbit, duration_);
      finish(id, "SpanReached");
    }
    if (cfg_.mask.plus) sheet(parent, sp, s0, +1);
    if (cfg_.mask.minus) sheet(parent, sp, s0, -1);
  }

  void sheet(int parent, const Sigma2Point& sp, double s0, int sign) {
    const KerrParams& k = k_;
    const double span = duration_ - s0;
    FieldPath path;
    if (sign > 0)
      path = integrate_field([&k](const auto& x) { return expr::factor_plus(x, k); }, sp.pp, 0.0, span,
                             cfg_.integrator);
    else
      path = integrate_field([&k](const auto& x) { return expr::factor_minus(x, k); }, sp.pp, 0.0, span,
                             cfg_.integrator);
    const Branch br = sign > 0 ? Branch::Plus : Branch::Minus;
    res_.events.push_back({s0, parent, sign > 0 ? EventType::LeaveSigma2ViaPlus : EventType::LeaveSigma2ViaMinus});
    const int id = add(path.points.back(), RegionClass::Sigma2, Channel::HorizonOrbit, parent, br,
                       s0 + path.s.back());
    finish(id, path.status == OdeStatus::Completed ? "SpanReached" : "StepFailure");
  }

  double duration_;
  PropagationConfig cfg_;
  KerrParams k_;
  PropagationResult res_;
};

}  // namespace

PropagationResult propagate(const std::vector<PhasePoint>& seeds, double duration,
                            const PropagationConfig& cfg, const KerrParams& k) {
  if (!(duration >= 0.0)) throw DomainError(ErrorKind::InvalidArgument, "duration must be >= 0");
  return Engine(duration, cfg, k).run(seeds);
}

Census channel_census(const PropagationResult& r) {
  Census c;
  c.total_samples = r.samples.size();
  for (const auto& w : r.samples) {
    if (w.leaf) {
      ++c.leaves;
      ++c.by_channel[std::string(to_string(w.channel))];
      ++c.by_branch[std::string(to_string(w.branch))];
    }
    c.max_principal_drift = std::max(c.max_principal_drift, w.drift);
  }
  for (const auto& e : r.events) ++c.by_event[std::string(to_string(e.type))];
  return c;
}

double relation_distance(const PhasePoint& x, const PhasePoint& y, double p_scale, const KerrParams& k) {
  const auto a = x.vec();
  const auto b = y.vec();
  double d = std::max(std::abs(a[kT] - b[kT]), std::abs(a[kR] - b[kR])) / k.r_s();
  d = std::max({d, std::abs(a[kTheta] - b[kTheta]), std::abs(a[kPhi] - b[kPhi])});
  for (std::size_t i = kPt; i <= kPphi; ++i) d = std::max(d, std::abs(a[i] - b[i]) / p_scale);
  return d;
}

CompositionResult compose_relations(const SampledRelation& a, const SampledRelation& b, double match_tol,
                                    const KerrParams& k) {
  if (!(match_tol >= 0.0)) throw DomainError(ErrorKind::InvalidArgument, "match_tol must be >= 0");
  CompositionResult out;
  double p_scale = 0.0;
  for (const auto& pr : a) p_scale = std::max(p_scale, covector_norm(pr.second));
  for (const auto& pr : b) p_scale = std::max(p_scale, covector_norm(pr.first));
  if (p_scale == 0.0) p_scale = 1.0;

  // Sort B by the t of its first point; only a window in t can match.
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return b[i].first.base.t < b[j].first.base.t; });
  std::vector<double> keys;
  keys.reserve(b.size());
  for (std::size_t i : order) keys.push_back(b[i].first.base.t);

  const double window = match_tol * k.r_s();
  for (const auto& [x, mid] : a) {
    auto lo = std::lower_bound(keys.begin(), keys.end(), mid.base.t - window);
    for (auto it = lo; it != keys.end() && *it <= mid.base.t + window; ++it) {
      const auto& cand = b[order[static_cast<std::size_t>(it - keys.begin())]];
      if (relation_distance(mid, cand.first, p_scale, k) <= match_tol) out.pairs.emplace_back(x, cand.second);
    }
  }
  out.empty_composition = out.pairs.empty();
  return out;
}

SampledRelation horizon_flowout(const std::vector<Sigma2Point>& seeds, const std::vector<double>& s_grid,
                                double alpha, const KerrParams& k) {
  SampledRelation rel;
  rel.reserve(seeds.size() * s_grid.size());
  for (const auto& sp : seeds)
    for (double s : s_grid) rel.emplace_back(horizon_flow_map(sp, s, 0.0, k, alpha), sp.pp);
  return rel;
}

SampledRelation diagonal_relation(const std::vector<PhasePoint>& points) {
  SampledRelation rel;
  rel.reserve(points.size());
  for (const auto& p : points) rel.emplace_back(p, p);
  return rel;
}

}  // namespace kerrml

#include "kerrml/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace kerrml {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw DomainError(ErrorKind::InvalidArgument, "integrator tolerances must be positive");
  if (!(min_step > 0.0) || !(min_step <= max_step))
    throw DomainError(ErrorKind::InvalidArgument, "integrator requires 0 < min_step <= max_step");
  if (horizon_margin < 0.0)
    throw DomainError(ErrorKind::InvalidArgument, "horizon_margin must be >= 0");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::SpanReached: return "SpanReached";
    case Termination::HorizonApproach: return "HorizonApproach";
    case Termination::RingApproach: return "RingApproach";
    case Termination::StepFailure: return "StepFailure";
  }
  return "Unknown";
}

namespace {

auto h_field(const KerrParams& k) {
  return [&k](const auto& x) { return expr::hamiltonian(x, k); };
}

SampleDiagnostics diagnose(const PhasePoint& pp, const PhasePoint& p0, double h0, const KerrParams& k) {
  return {expr::hamiltonian(pp.vec(), k) - h0, pp.mom.p_t - p0.mom.p_t, pp.mom.p_phi - p0.mom.p_phi};
}

void push(Trajectory& tr, double s, const PhasePoint& pp, const PhasePoint& p0, double h0) {
  tr.s.push_back(s);
  tr.points.push_back(pp);
  tr.diagnostics.push_back(diagnose(pp, p0, h0, tr.params));
}

}  // namespace

Velocity8 hamiltonian_vector_field(const PhasePoint& pp, const KerrParams& k) {
  if (!(expr::sigma(pp.base.r, pp.base.theta, k) > 0.0))
    throw DomainError(ErrorKind::RingSingular, "Hamiltonian field evaluated on the ring");
  if (expr::delta(pp.base.r, k) == 0.0)
    throw DomainError(ErrorKind::HorizonSingular,
                      "H-field is singular on the horizon; use the horizon channel");
  return hamiltonian_field(h_field(k), pp.vec());
}

namespace {
constexpr double kNearHorizonFactor = 100.0;
}  // namespace

Trajectory integrate(const PhasePoint& start, double s0, double s1, const IntegratorConfig& cfg,
                     const KerrParams& k, const FlowOptions& opts) {
  cfg.validate();
  const RegionClass rc = classify(start, k);  // throws ZeroCovector
  if (rc != RegionClass::Exterior && rc != RegionClass::Interior) {
    throw DomainError(ErrorKind::InvalidArgument,
                      "flow start must be Exterior or Interior, got " + std::string(to_string(rc)));
  }
  const double pn = covector_norm(start);
  const double h0 = hamiltonian(start, k);
  if (!opts.allow_massive && std::abs(h0) > 1e-10 * pn * pn) {
    std::ostringstream msg;
    msg << "start is not null: H = " << h0 << " (pass allow_massive for H != 0)";
    throw DomainError(ErrorKind::InvalidArgument, msg.str());
  }

  Trajectory tr{k, {}, {}, {}, Termination::SpanReached, 0, 0};
  push(tr, s0, start, start, h0);
  if (s0 == s1) return tr;

  const double rh = k.horizon_radius();
  const double margin = cfg.margin(k);
  const double ring = opts.ring_margin * k.r_s() * k.r_s();
  const double side = start.base.r > rh ? 1.0 : -1.0;

  auto field = h_field(k);
  auto rhs = [&](double, const State<8>& y) { return hamiltonian_field(field, y); };
  // Never jump across the horizon in a single step.
  auto accept = [&](double, const State<8>&, const State<8>& y) { return side * (y[kR] - rh) > 0.0; };
  auto observe = [&](double s, const State<8>& y) {
    bool keep = opts.output_grid == nullptr || s == s1;
    if (!keep)
      keep = std::find(opts.output_grid->begin(), opts.output_grid->end(), s) != opts.output_grid->end();
    const PhasePoint pp = PhasePoint::from_vec(y);
    if (std::abs(y[kR] - rh) < margin) {
      tr.termination = Termination::HorizonApproach;
      push(tr, s, pp, start, h0);
      return false;
    }
    if (expr::sigma(y[kR], y[kTheta], k) < ring) {
      tr.termination = Termination::RingApproach;
      push(tr, s, pp, start, h0);
      return false;
    }
    if (keep) push(tr, s, pp, start, h0);
    return true;
  };

  const auto res = dormand_prince<8>(rhs, start.vec(), s0, s1, cfg.control(), accept, observe,
                                     opts.output_grid);
  tr.accepted_steps = res.accepted;
  tr.rejected_steps = res.rejected;
  if (res.status == OdeStatus::StepUnderflow) {
    // Close to Delta = 0 the field is a difference of O(1/Delta^2) terms; at
    // tight tolerances the error estimate drowns in that cancellation a few
    // margins out, so an underflow there is the horizon, not a failure.
    const bool near_horizon = std::abs(res.y[kR] - rh) < kNearHorizonFactor * margin;
    tr.termination = near_horizon ? Termination::HorizonApproach : Termination::StepFailure;
    // Keep the last good state even if it was off-grid.
    if (tr.s.back() != res.s) push(tr, res.s, PhasePoint::from_vec(res.y), start, h0);
  }
  return tr;
}

Trajectory integrate_rk4(const PhasePoint& start, double s0, double s1, int steps, const KerrParams& k) {
  if (steps <= 0) throw DomainError(ErrorKind::InvalidArgument, "RK4 needs a positive step count");
  const double h0 = hamiltonian(start, k);
  Trajectory tr{k, {}, {}, {}, Termination::SpanReached, steps, 0};
  push(tr, s0, start, start, h0);
  auto field = h_field(k);
  auto rhs = [&](double, const State<8>& y) { return hamiltonian_field(field, y); };
  classic_rk4<8>(rhs, start.vec(), s0, s1, steps, [&](double s, const State<8>& y) {
    push(tr, s, PhasePoint::from_vec(y), start, h0);
  });
  return tr;
}

PhasePoint normalize_null(const PhasePoint& pp, const KerrParams& k, TimeOrientation orient) {
  const double r = pp.base.r;
  const double th = pp.base.theta;
  const double dl = expr::delta(r, k);
  if (dl == 0.0)
    throw DomainError(ErrorKind::HorizonSingular, "p_t is not determined by H = 0 on the horizon");
  const double ps = psi(pp, k);
  const double disc = dl * capital_phi(pp, k);
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "no real p_t root: Delta * Phi = " << disc;
    throw DomainError(ErrorKind::NoRealRoot, msg.str());
  }
  // dt/ds = A (p_t + Psi) / (c^2 Delta): pick the sign of p_t + Psi accordingly.
  const double a_w = expr::time_weight(r, th, k);
  double sgn = (a_w * dl > 0.0) ? 1.0 : -1.0;
  if (orient == TimeOrientation::Past) sgn = -sgn;
  PhasePoint out = pp;
  out.mom.p_t = -ps + sgn * std::sqrt(disc);
  if (covector_norm(out) == 0.0)
    throw DomainError(ErrorKind::ZeroCovector, "null normalization produced the zero covector");
  return out;
}

double ConservedReport::max_scaled() const {
  return std::max({scaled_h(), scaled_p_t(), scaled_p_phi()});
}

ConservedReport conserved_report(const Trajectory& traj) {
  if (traj.empty()) throw DomainError(ErrorKind::EmptyTrajectory, "empty trajectory");
  ConservedReport rep;
  rep.n_samples = traj.size();
  rep.p_scale = covector_norm(traj.points.front());
  for (const auto& d : traj.diagnostics) {
    rep.max_h = std::max(rep.max_h, std::abs(d.h));
    rep.max_p_t = std::max(rep.max_p_t, std::abs(d.p_t));
    rep.max_p_phi = std::max(rep.max_p_phi, std::abs(d.p_phi));
  }
  return rep;
}

}  // namespace kerrml

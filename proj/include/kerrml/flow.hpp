// kerrml - null bicharacteristics off the horizon
//
// Integrates q' = d_p H, p' = -d_q H with H = -g^{mu nu} p p / 2 using the
// adaptive Dormand-Prince pair. The field is singular on Delta = 0, so the
// integration halts with HorizonApproach once |r - r_s/2| < horizon_margin;
// what happens next is the wavefront engine's business, not this module's.
//
// Affine normalization: the parameter s is the one generated by H itself, no
// rescaling. Scaling p by lambda > 0 traces the same base curve with s/lambda.

#pragma once

#include <vector>

#include "kerrml/calculus.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/ode.hpp"
#include "kerrml/phase.hpp"

namespace kerrml {

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  double min_step = 1e-12;
  // Absolute; <= 0 means 1e-6 * r_s.
  double horizon_margin = 0.0;

  double margin(const KerrParams& k) const {
    return horizon_margin > 0.0 ? horizon_margin : 1e-6 * k.r_s();
  }
  StepControl control() const { return {rel_tol, abs_tol, max_step, min_step}; }

  // Throws InvalidArgument on non-positive tolerances or min_step > max_step.
  void validate() const;
};

enum class Termination { SpanReached, HorizonApproach, RingApproach, StepFailure };

std::string_view to_string(Termination t);

// Drift of the exact invariants relative to the first sample.
struct SampleDiagnostics {
  double h = 0.0;       // H(s) - H(s0)
  double p_t = 0.0;     // p_t(s) - p_t(s0)
  double p_phi = 0.0;   // p_phi(s) - p_phi(s0)
};

struct Trajectory {
  KerrParams params;
  std::vector<double> s;
  std::vector<PhasePoint> points;
  std::vector<SampleDiagnostics> diagnostics;
  Termination termination = Termination::SpanReached;
  int accepted_steps = 0;
  int rejected_steps = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

struct FlowOptions {
  // Permit H(start) != 0 (timelike/spacelike geodesics). Untested physics.
  bool allow_massive = false;
  // If set, only these parameter values (plus the endpoints) are recorded and
  // the integrator lands on each exactly. Must be monotone in the span direction.
  const std::vector<double>* output_grid = nullptr;
  // Sigma below this fraction of r_s^2 stops the run with RingApproach.
  double ring_margin = 1e-8;
};

// (q', p') = (d_p H, -d_q H). Throws HorizonSingular on Delta = 0 and
// RingSingular on Sigma = 0.
Velocity8 hamiltonian_vector_field(const PhasePoint& pp, const KerrParams& k);

// Start must classify as Exterior or Interior and be null to 1e-10 |p|^2
// (unless allow_massive). Throws ZeroCovector, InvalidArgument.
// Step underflow ends the run with Termination::StepFailure; the samples up to
// that point are kept. Underflow within 100 margins of the horizon counts as
// HorizonApproach (the field is unresolvable there at tight tolerances).
Trajectory integrate(const PhasePoint& start, double s0, double s1, const IntegratorConfig& cfg,
                     const KerrParams& k, const FlowOptions& opts = {});

// Fixed-step classical RK4 reference run (no events), `steps` equal steps.
Trajectory integrate_rk4(const PhasePoint& start, double s0, double s1, int steps,
                         const KerrParams& k);

enum class TimeOrientation { Future, Past };

// Replaces p_t by the root of H = 0 whose dt/ds has the requested sign:
// p_t = -Psi +/- sqrt(Delta Phi). Throws NoRealRoot if Delta Phi < 0,
// HorizonSingular on Delta = 0, ZeroCovector if the result is the zero covector.
PhasePoint normalize_null(const PhasePoint& pp, const KerrParams& k,
                          TimeOrientation orient = TimeOrientation::Future);

struct ConservedReport {
  std::size_t n_samples = 0;
  double max_h = 0.0;
  double max_p_t = 0.0;
  double max_p_phi = 0.0;
  double p_scale = 0.0;  // |p(s0)|
  // Drifts divided by |p0|^2 (H) and |p0| (p_t, p_phi).
  double scaled_h() const { return p_scale > 0 ? max_h / (p_scale * p_scale) : max_h; }
  double scaled_p_t() const { return p_scale > 0 ? max_p_t / p_scale : max_p_t; }
  double scaled_p_phi() const { return p_scale > 0 ? max_p_phi / p_scale : max_p_phi; }
  double max_scaled() const;
};

// Throws EmptyTrajectory.
ConservedReport conserved_report(const Trajectory& traj);

// Path of the Hamiltonian field of an arbitrary phase-space function, for the
// smooth factor fields on the double-characteristic set. No events; samples at
// every accepted step (or on `grid` only, if given).
struct FieldPath {
  std::vector<double> s;
  std::vector<PhasePoint> points;
  OdeStatus status = OdeStatus::Completed;
};

template <class F>
FieldPath integrate_field(F&& f, const PhasePoint& start, double s0, double s1,
                          const IntegratorConfig& cfg, const std::vector<double>* grid = nullptr) {
  FieldPath path;
  path.s.push_back(s0);
  path.points.push_back(start);
  auto rhs = [&](double, const State<8>& y) { return hamiltonian_field(f, y); };
  auto accept = [](double, const State<8>&, const State<8>&) { return true; };
  auto observe = [&](double s, const State<8>& y) {
    bool keep = grid == nullptr;
    if (!keep)
      for (double g : *grid)
        if (g == s) keep = true;
    if (keep || s == s1) {
      path.s.push_back(s);
      path.points.push_back(PhasePoint::from_vec(y));
    }
    return true;
  };
  const auto res = dormand_prince<8>(rhs, start.vec(), s0, s1, cfg.control(), accept, observe, grid);
  path.status = res.status;
  return path;
}

}  // namespace kerrml

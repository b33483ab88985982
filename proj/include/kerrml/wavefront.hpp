// kerrml - wavefront sample propagation through both singularity channels
//
// A wavefront set is a finite cloud of phase points. Off the horizon each
// sample follows the H-flow. A ray that reaches the horizon with p_t + Psi -> 0
// enters Sigma2, where the H-field vanishes and propagation switches to the
// horizon channel; there it branches into
//   Orbit - closed-form horizon map (generator alpha = orbit_alpha),
//   Plus  - numerically integrated field of p_t + Psi + (r - r_s/2) sqrt(Phi),
//   Minus - numerically integrated field of p_t + Psi - (r - r_s/2) sqrt(Phi).
// All three stay on Sigma2 and differ only in the p_r drift. No amplitudes or
// weights are transported.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kerrml/flow.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/horizon.hpp"

namespace kerrml {

enum class Channel { Principal, HorizonOrbit };
enum class Branch { Root, Orbit, Plus, Minus };
enum class EventType { EnterSigma2, LeaveSigma2ViaPlus, LeaveSigma2ViaMinus };

std::string_view to_string(Channel c);
std::string_view to_string(Branch b);
std::string_view to_string(EventType e);

struct WavefrontSample {
  int id = 0;
  PhasePoint pp;
  RegionClass region = RegionClass::Exterior;
  Channel channel = Channel::Principal;
  int parent = -1;
  Branch branch = Branch::Root;
  double s = 0.0;        // affine parameter of this node
  bool leaf = false;
  std::string outcome;   // for leaves: SpanReached, HorizonGeneric, StepFailure, ...
  double drift = 0.0;    // leaves reached by a Principal segment: its max scaled drift
};

struct BranchEvent {
  double s = 0.0;
  int sample_id = 0;
  EventType type = EventType::EnterSigma2;
};

struct BranchMask {
  bool orbit = true;
  bool plus = true;
  bool minus = true;
};

struct PropagationConfig {
  IntegratorConfig integrator;
  BranchMask mask;
  // Entry into Sigma2 at a horizon approach when |p_t + Psi(r_s/2)| is at most
  // entry_tol times |p_t| + |p_theta| + |p_phi|. p_r is left out of the scale:
  // in these coordinates it blows up along generic rays hitting the horizon.
  double entry_tol = 1e-4;
  double orbit_alpha = 1.0;
  double classify_tol = kDefaultClassifyTol;
};

struct PropagationResult {
  std::vector<WavefrontSample> samples;  // indexed by id
  std::vector<int> initial;
  std::vector<BranchEvent> events;

  std::vector<int> leaves() const;
  // Follows parent links back to a root.
  int root_of(int id) const;
};

// Throws ConormalEncounter for seeds on (or projected onto) the conormal
// stratum, UnclassifiableSample for seeds that are not propagatable
// (zero covector, ring, axis), InvalidArgument for non-null Principal seeds.
PropagationResult propagate(const std::vector<PhasePoint>& seeds, double duration,
                            const PropagationConfig& cfg, const KerrParams& k);

struct Census {
  std::size_t total_samples = 0;
  std::size_t leaves = 0;
  std::map<std::string, std::size_t> by_channel;  // leaves per channel
  std::map<std::string, std::size_t> by_branch;   // leaves per branch label
  std::map<std::string, std::size_t> by_event;
  double max_principal_drift = 0.0;
};

Census channel_census(const PropagationResult& r);

// A sampled relation: pairs (lambda_1, lambda_2).
using PointPair = std::pair<PhasePoint, PhasePoint>;
using SampledRelation = std::vector<PointPair>;

struct CompositionResult {
  SampledRelation pairs;
  bool empty_composition = false;  // diagnostic only
};

// {(a, c) : (a, b) in A, (b', c) in B, d(b, b') <= match_tol}. d is the max
// over coordinates with t, r divided by r_s, angles as is, and momenta divided
// by the largest covector norm among the middle points.
CompositionResult compose_relations(const SampledRelation& a, const SampledRelation& b,
                                    double match_tol, const KerrParams& k);

// Scale used by compose_relations for a pair of points.
double relation_distance(const PhasePoint& x, const PhasePoint& y, double p_scale, const KerrParams& k);

// Flowout pairs (Phi_s(x), x) of the horizon family alpha, s over `s_grid`.
SampledRelation horizon_flowout(const std::vector<Sigma2Point>& seeds, const std::vector<double>& s_grid,
                                double alpha, const KerrParams& k);

// Diagonal {(x, x)} over the given points.
SampledRelation diagonal_relation(const std::vector<PhasePoint>& points);

}  // namespace kerrml

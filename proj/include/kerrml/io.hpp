// kerrml - JSON / CSV serialisation of library results
//
// Doubles are written in shortest round-trip form (JSON via nlohmann, CSV via
// std::to_chars) so identical runs give byte-identical files.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kerrml/flow.hpp"
#include "kerrml/horizon.hpp"
#include "kerrml/kernels.hpp"
#include "kerrml/wavefront.hpp"

namespace kerrml {

using json = nlohmann::json;

std::string format_double(double v);

json to_json(const PhasePoint& pp);
// Accepts [t, r, theta, phi, p_t, p_r, p_theta, p_phi] or an object with those
// keys (all required, no others). Throws DomainError(ConfigError).
PhasePoint phase_point_from_json(const json& j);

json to_json(const LemmaReport& r);
json to_json(const ConservedReport& r);

// CSV header: s,t,r,theta,phi,p_t,p_r,p_theta,p_phi,H_drift
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
json trajectory_json(const Trajectory& tr);

// CSV header: s1,s2,t,r,theta,phi,p_t,p_r,p_theta,p_phi
void write_fibre_csv(std::ostream& os, const RelationFibre& f);
json fibre_json(const RelationFibre& f);

json census_json(const Census& c);
// {samples: [...], events: [...], census: {...}}
json propagation_json(const PropagationResult& r);
// CSV header: id,parent,channel,branch,region,leaf,outcome,s,t,r,theta,phi,p_t,p_r,p_theta,p_phi
void write_propagation_csv(std::ostream& os, const PropagationResult& r);

struct KernelSweepRow {
  Vec4 x;
  Vec3 y;
  cplx value;
  double eps;
};
// CSV header: x0,x1,x2,x3,y1,y2,y3,re,im,eps
void write_kernel_sweep_csv(std::ostream& os, const std::vector<KernelSweepRow>& rows);

json to_json(const DecayReport& r);

}  // namespace kerrml

#include "kerrml/io.hpp"

#include <charconv>
#include <ostream>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

constexpr const char* kPhaseKeys[8] = {"t", "r", "theta", "phi", "p_t", "p_r", "p_theta", "p_phi"};

void put_point(std::ostream& os, const PhasePoint& pp) {
  const auto v = pp.vec();
  for (std::size_t i = 0; i < 8; ++i) os << (i ? "," : "") << format_double(v[i]);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const PhasePoint& pp) {
  const auto v = pp.vec();
  json j = json::object();
  for (std::size_t i = 0; i < 8; ++i) j[kPhaseKeys[i]] = v[i];
  return j;
}

PhasePoint phase_point_from_json(const json& j) {
  PhaseVec<double> v{};
  try {
    if (j.is_array()) {
      if (j.size() != 8) throw DomainError(ErrorKind::ConfigError, "phase point needs exactly 8 numbers");
      for (std::size_t i = 0; i < 8; ++i) {
        if (!j[i].is_number()) throw DomainError(ErrorKind::ConfigError, "phase point entries must be numbers");
        v[i] = j[i].get<double>();
      }
    } else if (j.is_object()) {
      if (j.size() != 8) throw DomainError(ErrorKind::ConfigError, "phase point object needs exactly the 8 keys t,r,theta,phi,p_t,p_r,p_theta,p_phi");
      for (std::size_t i = 0; i < 8; ++i) {
        if (!j.contains(kPhaseKeys[i]) || !j[kPhaseKeys[i]].is_number())
          throw DomainError(ErrorKind::ConfigError, std::string("phase point is missing numeric '") + kPhaseKeys[i] + "'");
        v[i] = j[kPhaseKeys[i]].get<double>();
      }
    } else {
      throw DomainError(ErrorKind::ConfigError, "phase point must be an array or an object");
    }
  } catch (const json::exception& e) {
    throw DomainError(ErrorKind::ConfigError, e.what());
  }
  return PhasePoint::from_vec(v);
}

json to_json(const LemmaReport& r) {
  json j = {{"lemma", r.lemma}, {"n_samples", r.n_samples}, {"max_residual", r.max_residual}, {"pass", r.pass}};
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

json to_json(const ConservedReport& r) {
  return {{"n_samples", r.n_samples},   {"max_H_drift", r.max_h},  {"max_p_t_drift", r.max_p_t},
          {"max_p_phi_drift", r.max_p_phi}, {"p_scale", r.p_scale}, {"max_scaled_drift", r.max_scaled()}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "s,t,r,theta,phi,p_t,p_r,p_theta,p_phi,H_drift\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    os << format_double(tr.s[i]) << ',';
    put_point(os, tr.points[i]);
    os << ',' << format_double(tr.diagnostics[i].h) << '\n';
  }
}

json trajectory_json(const Trajectory& tr) {
  json samples = json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    json row = to_json(tr.points[i]);
    row["s"] = tr.s[i];
    row["H_drift"] = tr.diagnostics[i].h;
    row["p_t_drift"] = tr.diagnostics[i].p_t;
    row["p_phi_drift"] = tr.diagnostics[i].p_phi;
    samples.push_back(row);
  }
  json j = {{"params", {{"r_s", tr.params.r_s()}, {"c", tr.params.c()}}},
            {"termination", std::string(to_string(tr.termination))},
            {"accepted_steps", tr.accepted_steps},
            {"rejected_steps", tr.rejected_steps},
            {"samples", samples}};
  if (!tr.empty()) j["conserved"] = to_json(conserved_report(tr));
  return j;
}

void write_fibre_csv(std::ostream& os, const RelationFibre& f) {
  os << "s1,s2,t,r,theta,phi,p_t,p_r,p_theta,p_phi\n";
  for (std::size_t i = 0; i < f.s1.size(); ++i)
    for (std::size_t j = 0; j < f.s2.size(); ++j) {
      os << format_double(f.s1[i]) << ',' << format_double(f.s2[j]) << ',';
      put_point(os, f.at(i, j));
      os << '\n';
    }
}

json fibre_json(const RelationFibre& f) {
  json pts = json::array();
  for (std::size_t i = 0; i < f.s1.size(); ++i)
    for (std::size_t j = 0; j < f.s2.size(); ++j) {
      json row = to_json(f.at(i, j));
      row["s1"] = f.s1[i];
      row["s2"] = f.s2[j];
      pts.push_back(row);
    }
  return {{"base", to_json(f.base.pp)},
          {"residuals", {{"r", f.base.r_residual}, {"p_t_plus_psi", f.base.pt_residual}}},
          {"alpha", f.alpha},
          {"points", pts}};
}

json census_json(const Census& c) {
  return {{"total_samples", c.total_samples}, {"leaves", c.leaves},
          {"by_channel", c.by_channel},       {"by_branch", c.by_branch},
          {"by_event", c.by_event},           {"max_principal_drift", c.max_principal_drift}};
}

json propagation_json(const PropagationResult& r) {
  json samples = json::array();
  for (const auto& w : r.samples) {
    json row = {{"id", w.id},
                {"parent", w.parent},
                {"channel", std::string(to_string(w.channel))},
                {"branch", std::string(to_string(w.branch))},
                {"region", std::string(to_string(w.region))},
                {"s", w.s},
                {"leaf", w.leaf},
                {"point", to_json(w.pp)}};
    if (w.leaf) row["outcome"] = w.outcome;
    if (w.drift != 0.0) row["drift"] = w.drift;
    samples.push_back(row);
  }
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"s", e.s}, {"sample", e.sample_id}, {"type", std::string(to_string(e.type))}});
  return {{"initial", r.initial}, {"samples", samples}, {"events", events}, {"census", census_json(channel_census(r))}};
}

void write_propagation_csv(std::ostream& os, const PropagationResult& r) {
  os << "id,parent,channel,branch,region,leaf,outcome,s,t,r,theta,phi,p_t,p_r,p_theta,p_phi\n";
  for (const auto& w : r.samples) {
    os << w.id << ',' << w.parent << ',' << to_string(w.channel) << ',' << to_string(w.branch) << ','
       << to_string(w.region) << ',' << (w.leaf ? 1 : 0) << ',' << w.outcome << ',' << format_double(w.s) << ',';
    put_point(os, w.pp);
    os << '\n';
  }
}

void write_kernel_sweep_csv(std::ostream& os, const std::vector<KernelSweepRow>& rows) {
  os << "x0,x1,x2,x3,y1,y2,y3,re,im,eps\n";
  for (const auto& row : rows) {
    for (double v : row.x) os << format_double(v) << ',';
    for (double v : row.y) os << format_double(v) << ',';
    os << format_double(row.value.real()) << ',' << format_double(row.value.imag()) << ','
       << format_double(row.eps) << '\n';
  }
}

json to_json(const DecayReport& r) {
  return {{"radii", r.radii},
          {"magnitude", r.magnitude},
          {"log_slope", r.log_slope},
          {"verdict", r.verdict == DecayClass::Rapid ? "rapid" : "singular"},
          {"evaluations", r.evaluations}};
}

}  // namespace kerrml

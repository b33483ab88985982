#include "kerrml/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw DomainError(ErrorKind::ConfigError, msg); }

// Object view that refuses keys outside `allowed`.
class Obj {
 public:
  Obj(const json& j, std::string where, std::initializer_list<const char*> allowed)
      : j_(j), where_(std::move(where)) {
    if (!j.is_object()) fail(where_ + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : j.items())
      if (!ok.count(item.key())) fail(where_ + ": unknown key '" + item.key() + "'");
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string path(const char* key) const { return where_ + "." + key; }

  void get(const char* key, double& out) const {
    if (!has(key)) return;
    if (!at(key).is_number()) fail(path(key) + ": expected a number");
    out = at(key).get<double>();
  }
  void get(const char* key, int& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_integer()) fail(path(key) + ": expected an integer");
    out = at(key).get<int>();
  }
  void get(const char* key, std::int64_t& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_integer()) fail(path(key) + ": expected an integer");
    out = at(key).get<std::int64_t>();
  }
  void get(const char* key, std::uint64_t& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_unsigned()) fail(path(key) + ": expected a non-negative integer");
    out = at(key).get<std::uint64_t>();
  }
  void get(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!at(key).is_boolean()) fail(path(key) + ": expected true or false");
    out = at(key).get<bool>();
  }
  void get(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!at(key).is_string()) fail(path(key) + ": expected a string");
    out = at(key).get<std::string>();
  }
  void get(const char* key, std::vector<double>& out) const {
    if (!has(key)) return;
    const json& a = at(key);
    if (!a.is_array()) fail(path(key) + ": expected an array of numbers");
    out.clear();
    for (const auto& v : a) {
      if (!v.is_number()) fail(path(key) + ": expected an array of numbers");
      out.push_back(v.get<double>());
    }
  }
  void get_pair(const char* key, double& lo, double& hi) const {
    if (!has(key)) return;
    std::vector<double> v;
    get(key, v);
    if (v.size() != 2) fail(path(key) + ": expected [begin, end]");
    lo = v[0];
    hi = v[1];
  }
  void get_point(const char* key, std::optional<PhasePoint>& out) const {
    if (has(key)) out = phase_point_from_json(at(key));
  }

 private:
  const json& j_;
  std::string where_;
};

void require_choice(const std::string& value, std::initializer_list<const char*> choices, const std::string& where) {
  for (const char* c : choices)
    if (value == c) return;
  fail(where + ": unsupported value '" + value + "'");
}

KernelFamily family_from_string(const std::string& s) {
  if (s == "E1") return KernelFamily::E1;
  if (s == "E2") return KernelFamily::E2;
  if (s == "E3") return KernelFamily::E3;
  fail("kernels.family: expected E1, E2 or E3");
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  Obj root(j, "config",
           {"params", "integrator", "tolerances", "seed", "output", "verify", "trace", "orbit", "propagate", "kernels"});
  root.get("seed", cfg.seed);

  if (root.has("params")) {
    Obj o(root.at("params"), "params", {"r_s", "c"});
    double r_s = 2.0, c = 1.0;
    o.get("r_s", r_s);
    o.get("c", c);
    cfg.params = KerrParams(r_s, c);
  }
  if (root.has("integrator")) {
    Obj o(root.at("integrator"), "integrator", {"rel_tol", "abs_tol", "max_step", "min_step", "horizon_margin"});
    auto& it = cfg.integrator;
    o.get("rel_tol", it.rel_tol);
    o.get("abs_tol", it.abs_tol);
    o.get("max_step", it.max_step);
    o.get("min_step", it.min_step);
    o.get("horizon_margin", it.horizon_margin);
    it.validate();
  }
  if (root.has("tolerances")) {
    Obj o(root.at("tolerances"), "tolerances",
          {"classify", "gradient", "gradient_floor", "bracket", "rank", "gap", "reconstruction", "match", "boxcar"});
    auto& t = cfg.tol;
    o.get("classify", t.classify);
    o.get("gradient", t.gradient);
    o.get("gradient_floor", t.gradient_floor);
    o.get("bracket", t.bracket);
    o.get("rank", t.rank);
    o.get("gap", t.gap);
    o.get("reconstruction", t.reconstruction);
    o.get("match", t.match);
    o.get("boxcar", t.boxcar);
  }
  if (root.has("output")) {
    Obj o(root.at("output"), "output", {"dir"});
    o.get("dir", cfg.out_dir);
  }
  if (root.has("verify")) {
    Obj o(root.at("verify"), "verify", {"lemma", "n_samples", "control_spin_factor"});
    o.get("lemma", cfg.verify.lemma);
    o.get("n_samples", cfg.verify.n_samples);
    o.get("control_spin_factor", cfg.verify.control_spin_factor);
    require_choice(cfg.verify.lemma, {"double-char", "involutive", "hessian-rank", "subprincipal", "all"},
                   "verify.lemma");
  }
  if (root.has("trace")) {
    Obj o(root.at("trace"), "trace", {"start", "span", "normalize", "allow_massive", "grid"});
    o.get_point("start", cfg.trace.start);
    o.get_pair("span", cfg.trace.s0, cfg.trace.s1);
    o.get("normalize", cfg.trace.normalize);
    o.get("allow_massive", cfg.trace.allow_massive);
    o.get("grid", cfg.trace.grid);
    require_choice(cfg.trace.normalize, {"none", "future", "past"}, "trace.normalize");
  }
  if (root.has("orbit")) {
    Obj o(root.at("orbit"), "orbit", {"start", "s1", "n", "s2", "alpha"});
    o.get_point("start", cfg.orbit.start);
    if (o.has("s1")) {
      double lo = 0.0, hi = 0.0;
      o.get_pair("s1", lo, hi);
      cfg.orbit.s1_begin = lo;
      cfg.orbit.s1_end = hi;
    }
    o.get("n", cfg.orbit.n);
    o.get("s2", cfg.orbit.s2);
    o.get("alpha", cfg.orbit.alpha);
    if (cfg.orbit.n < 1) fail("orbit.n: must be >= 1");
  }
  if (root.has("propagate")) {
    Obj o(root.at("propagate"), "propagate", {"seeds", "random_rays", "duration", "mask", "orbit_alpha", "entry_tol"});
    if (o.has("seeds")) {
      if (!o.at("seeds").is_array()) fail("propagate.seeds: expected an array of phase points");
      for (const auto& s : o.at("seeds")) cfg.propagate.seeds.push_back(phase_point_from_json(s));
    }
    o.get("random_rays", cfg.propagate.random_rays);
    o.get("duration", cfg.propagate.duration);
    o.get("orbit_alpha", cfg.propagate.orbit_alpha);
    o.get("entry_tol", cfg.propagate.entry_tol);
    if (o.has("mask")) {
      Obj m(o.at("mask"), "propagate.mask", {"orbit", "plus", "minus"});
      m.get("orbit", cfg.propagate.mask.orbit);
      m.get("plus", cfg.propagate.mask.plus);
      m.get("minus", cfg.propagate.mask.minus);
    }
  }
  if (root.has("kernels")) {
    Obj o(root.at("kernels"), "kernels",
          {"mode", "family", "eps", "nodes", "budget", "chi", "x0", "x0_n", "xi", "xi_n", "sweep_x0", "d", "d_n",
           "radii", "probe_eps"});
    auto& k = cfg.kernels;
    o.get("mode", k.mode);
    require_choice(k.mode, {"boxcar", "sweep", "probe", "reduction"}, "kernels.mode");
    if (o.has("family")) {
      std::string fam;
      o.get("family", fam);
      k.spec.family = family_from_string(fam);
    }
    o.get("eps", k.spec.eps);
    o.get("nodes", k.spec.nodes);
    o.get("budget", k.spec.budget);
    if (o.has("chi")) o.get_pair("chi", k.spec.chi.r0, k.spec.chi.r1);
    o.get_pair("x0", k.x0_min, k.x0_max);
    o.get("x0_n", k.x0_n);
    o.get_pair("xi", k.xi_min, k.xi_max);
    o.get("xi_n", k.xi_n);
    o.get("sweep_x0", k.sweep_x0);
    o.get_pair("d", k.d_min, k.d_max);
    o.get("d_n", k.d_n);
    o.get("radii", k.radii);
    o.get("probe_eps", k.probe_eps);
    if (!(k.spec.chi.r0 > 0.0 && k.spec.chi.r0 < k.spec.chi.r1)) fail("kernels.chi: need 0 < r0 < r1");
    if (k.x0_n < 1 || k.xi_n < 1 || k.d_n < 1) fail("kernels: grid sizes must be >= 1");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace kerrml

// kerrml - command-line front end
//
//   kerrml classify|verify|trace|orbit|propagate|kernels [--config FILE] [--seed N] [--out DIR]
//
// Exit codes (stable across subcommands):
//   0 ok, 1 check/lemma failure, 2 usage/config error, 3 geometry domain error,
//   4 flow failure, 5 horizon failure, 6 wavefront failure, 7 kernel failure,
//   8 output I/O failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kerrml/config.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/flow.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/horizon.hpp"
#include "kerrml/io.hpp"
#include "kerrml/kernels.hpp"
#include "kerrml/rng.hpp"
#include "kerrml/wavefront.hpp"

namespace fs = std::filesystem;
using namespace kerrml;

namespace {

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kGeometry = 3,
  kFlow = 4,
  kHorizon = 5,
  kWavefront = 6,
  kKernels = 7,
  kIo = 8,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return kUsage;
    case ErrorKind::RingSingular:
    case ErrorKind::HorizonSingular:
    case ErrorKind::PoleSingular:
    case ErrorKind::DegenerateFactorization:
    case ErrorKind::ZeroCovector:
    case ErrorKind::NoRealRoot:
    case ErrorKind::InvalidArgument: return kGeometry;
    case ErrorKind::StepFailure:
    case ErrorKind::EmptyTrajectory: return kFlow;
    case ErrorKind::NotNearSigma2:
    case ErrorKind::ConormalDegenerate:
    case ErrorKind::SampleOnConormal:
    case ErrorKind::DegenerateFibre: return kHorizon;
    case ErrorKind::UnclassifiableSample:
    case ErrorKind::ConormalEncounter: return kWavefront;
    case ErrorKind::QuadratureBudgetExceeded:
    case ErrorKind::InconclusiveDecay: return kKernels;
  }
  return kUsage;
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json params_json(const KerrParams& k) {
  return {{"r_s", k.r_s()}, {"c", k.c()}, {"a", k.a()}, {"extremal", k.extremal()}};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  if (n == 1) return {a};
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  v.back() = b;
  return v;
}

// Artifacts land in cfg.out_dir; the summary also goes to stdout.
class Output {
 public:
  explicit Output(std::string dir) : dir_(std::move(dir)) {}

  fs::path path(const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_ + "': " + ec.message());
    return fs::path(dir_) / name;
  }

  template <class Writer>
  void file(const std::string& name, Writer&& w) {
    const auto p = path(name);
    std::ofstream os(p);
    if (!os) throw IoError("cannot open '" + p.string() + "' for writing");
    w(os);
    if (!os) throw IoError("write to '" + p.string() + "' failed");
  }

  void json_file(const std::string& name, const json& j) {
    file(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }

 private:
  std::string dir_;
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- classify --------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, const std::string& point_text) {
  json j;
  try {
    j = json::parse(point_text);
  } catch (const json::exception& e) {
    throw DomainError(ErrorKind::ConfigError, std::string("point is not valid JSON: ") + e.what());
  }
  const PhasePoint pp = phase_point_from_json(j);
  const KerrParams& k = cfg.params;
  const RegionClass rc = classify(pp, k, cfg.tol.classify);
  json res = {{"delta", delta(pp.base.r, k)}, {"pt_plus_psi", pp.mom.p_t + psi(pp, k)}};
  // Phi is undefined on the axis with p_phi != 0; classification already said so.
  try {
    res["phi"] = capital_phi(pp, k);
  } catch (const DomainError&) {
    res["phi"] = nullptr;
  }
  print({{"region", std::string(to_string(rc))}, {"residuals", res}});
  return kOk;
}

// ---- verify ----------------------------------------------------------------

json lemma_entry(const std::string& name, const std::function<LemmaReport()>& run) {
  try {
    return to_json(run());
  } catch (const DomainError& e) {
    // Reported as a failed lemma so the whole suite still runs.
    return {{"lemma", name}, {"pass", false}, {"error", std::string(to_string(e.kind())) + ": " + e.what()}};
  }
}

int cmd_verify(const RunConfig& cfg, Output& out) {
  const auto& v = cfg.verify;
  if (v.n_samples <= 0)
    throw DomainError(ErrorKind::ConfigError, "empty report: n_samples must be positive");
  const KerrParams k = v.control_spin_factor == 1.0
                           ? cfg.params
                           : KerrParams::sub_extremal_control(cfg.params.r_s(), cfg.params.c(),
                                                              v.control_spin_factor);
  const auto n = static_cast<std::size_t>(v.n_samples);
  const bool all = v.lemma == "all";
  SplitMix64 rng(cfg.seed);

  json lemmas = json::array();
  if (all || v.lemma == "double-char") {
    lemmas.push_back(lemma_entry("double-char", [&] {
      std::vector<PhasePoint> on, off;
      for (std::size_t i = 0; i < n; ++i) on.push_back(random_sigma2_point(rng, k, true));
      for (std::size_t i = 0; i < n; ++i) off.push_back(random_horizon_point_off_sigma2(rng, k));
      return verify_double_characteristic(on, off, k, cfg.tol.gradient, cfg.tol.gradient_floor);
    }));
  }
  if (all || v.lemma == "involutive") {
    lemmas.push_back(lemma_entry("involutive", [&] {
      std::vector<PhasePoint> pts, on;
      for (std::size_t i = 0; i < 2 * n; ++i) pts.push_back(random_phase_point(rng, k));
      for (std::size_t i = 0; i < n; ++i) on.push_back(random_sigma2_point(rng, k, true));
      return verify_involutivity(pts, on, k, cfg.tol.bracket);
    }));
  }
  if (all || v.lemma == "hessian-rank") {
    lemmas.push_back(lemma_entry("hessian-rank", [&] {
      std::vector<PhasePoint> on;
      for (std::size_t i = 0; i < n; ++i) on.push_back(random_sigma2_point(rng, k, false));
      return verify_hessian_rank(on, k, cfg.tol.rank, cfg.tol.gap, cfg.tol.reconstruction);
    }));
  }
  if (all || v.lemma == "subprincipal") {
    lemmas.push_back(lemma_entry("subprincipal", [&] { return verify_subprincipal(k); }));
  }

  bool pass = true;
  for (const auto& l : lemmas) pass = pass && l.at("pass").get<bool>();
  const json report = {{"params", params_json(k)},
                       {"seed", cfg.seed},
                       {"n_samples", v.n_samples},
                       {"lemma", v.lemma},
                       {"lemmas", lemmas},
                       {"pass", pass}};
  out.json_file("verify_report.json", report);
  print(report);
  return pass ? kOk : kCheckFailed;
}

// ---- trace -----------------------------------------------------------------

int cmd_trace(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.trace;
  const KerrParams& k = cfg.params;
  PhasePoint start;
  std::string normalize = o.normalize;
  if (o.start) {
    start = *o.start;
  } else {
    // Equatorial ray at r = 3 r_s, pointed outwards (dr/ds = -Delta p_r / Sigma).
    start = PhasePoint{{0.0, 3.0 * k.r_s(), std::numbers::pi / 2, 0.0}, {0.0, -1.0, 0.0, 1.0}};
    if (normalize == "none") normalize = "future";
  }
  if (normalize == "future") start = normalize_null(start, k, TimeOrientation::Future);
  if (normalize == "past") start = normalize_null(start, k, TimeOrientation::Past);

  FlowOptions opts;
  opts.allow_massive = o.allow_massive;
  std::vector<double> grid;
  if (o.grid > 0) {
    grid = linspace(o.s0, o.s1, o.grid);
    opts.output_grid = &grid;
  }
  const Trajectory tr = integrate(start, o.s0, o.s1, cfg.integrator, k, opts);
  out.file("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, tr); });
  const json tj = trajectory_json(tr);
  out.json_file("trajectory.json", tj);

  json summary = {{"params", params_json(k)},
                  {"start", to_json(start)},
                  {"span", {o.s0, o.s1}},
                  {"termination", tj.at("termination")},
                  {"n_samples", tr.size()},
                  {"accepted_steps", tr.accepted_steps},
                  {"rejected_steps", tr.rejected_steps},
                  {"end", to_json(tr.points.back())}};
  if (tj.contains("conserved")) summary["conserved"] = tj.at("conserved");
  print(summary);
  return kOk;
}

// ---- orbit -----------------------------------------------------------------

int cmd_orbit(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.orbit;
  const KerrParams& k = cfg.params;
  const PhasePoint start =
      o.start ? *o.start
              : PhasePoint{{0.0, k.horizon_radius(), std::numbers::pi / 2, 0.0}, {0.0, 0.0, 0.0, 2.0}};
  PhasePoint seed = start;
  if (!o.start) seed.mom.p_t = -psi(seed, k);  // lock p_t for the default start
  const Sigma2Point sp = project_to_sigma2(seed, k);
  const double s1_end = o.s1_end.value_or(2.0 * std::numbers::pi * k.r_s() / k.c());
  const RelationFibre fib = fibre_sample(sp, linspace(o.s1_begin, s1_end, o.n), o.s2, k, o.alpha);

  out.file("orbit.csv", [&](std::ostream& os) { write_fibre_csv(os, fib); });
  out.json_file("orbit.json", fibre_json(fib));

  // Checks on the closed-form map: phi - (c/r_s) t is constant, p_t is locked.
  const double w = k.c() / k.r_s();
  double lock = 0.0, twist = 0.0;
  for (const auto& q : fib.points) {
    twist = std::max(twist, std::abs((q.base.phi - sp.pp.base.phi) - w * (q.base.t - sp.pp.base.t)));
    lock = std::max(lock, std::abs(q.mom.p_t + w * q.mom.p_phi));
  }
  const PhasePoint& last = fib.at(fib.s1.size() - 1, 0);
  print({{"params", params_json(k)},
         {"base", to_json(sp.pp)},
         {"alpha", o.alpha},
         {"n_points", fib.points.size()},
         {"phi_advance", last.base.phi - sp.pp.base.phi},
         {"t_advance", last.base.t - sp.pp.base.t},
         {"max_phi_t_residual", twist},
         {"max_pt_lock_residual", lock},
         {"p_r_drift_rate", horizon_drift(sp.pp, k, o.alpha)}});
  return kOk;
}

// ---- propagate ---------------------------------------------------------------

int cmd_propagate(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.propagate;
  const KerrParams& k = cfg.params;
  std::vector<PhasePoint> seeds = o.seeds;
  SplitMix64 rng(cfg.seed);
  int extra = o.random_rays;
  if (seeds.empty() && extra == 0) {
    // Default: one Sigma2 seed plus a few exterior rays.
    PhasePoint s{{0.0, k.horizon_radius(), std::numbers::pi / 2, 0.0}, {0.0, 0.5, 0.0, 2.0}};
    s.mom.p_t = -psi(s, k);
    seeds.push_back(s);
    extra = 4;
  }
  for (int i = 0; i < extra; ++i) seeds.push_back(random_outgoing_null_ray(rng, k));

  PropagationConfig pc;
  pc.integrator = cfg.integrator;
  pc.mask = o.mask;
  pc.entry_tol = o.entry_tol;
  pc.orbit_alpha = o.orbit_alpha;
  pc.classify_tol = cfg.tol.classify;
  const PropagationResult res = propagate(seeds, o.duration, pc, k);

  out.file("propagation.csv", [&](std::ostream& os) { write_propagation_csv(os, res); });
  const json pj = propagation_json(res);
  out.json_file("propagation.json", pj);
  print({{"params", params_json(k)},
         {"seed", cfg.seed},
         {"n_seeds", seeds.size()},
         {"duration", o.duration},
         {"events", pj.at("events").size()},
         {"census", pj.at("census")}});
  return kOk;
}

// ---- kernels -----------------------------------------------------------------

int kernels_boxcar(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.kernels;
  const auto x0s = linspace(o.x0_min, o.x0_max, o.x0_n);
  const auto xis = linspace(o.xi_min, o.xi_max, o.xi_n);
  double worst = 0.0;
  out.file("boxcar.csv", [&](std::ostream& os) {
    os << "x0,xi,re,im,split_residual\n";
    for (double x0 : x0s)
      for (double xi : xis) {
        const cplx f = boxcar_factor(x0, xi);
        const double r = std::abs(boxcar_split(x0, xi, o.spec.chi).sum() - f);
        worst = std::max(worst, r);
        os << format_double(x0) << ',' << format_double(xi) << ',' << format_double(f.real()) << ','
           << format_double(f.imag()) << ',' << format_double(r) << '\n';
      }
  });
  const bool pass = worst < cfg.tol.boxcar;
  const json report = {{"mode", "boxcar"},
                       {"grid", {{"x0", {o.x0_min, o.x0_max, o.x0_n}}, {"xi", {o.xi_min, o.xi_max, o.xi_n}}}},
                       {"chi", {o.spec.chi.r0, o.spec.chi.r1}},
                       {"max_split_residual", worst},
                       {"tolerance", cfg.tol.boxcar},
                       {"pass", pass}};
  out.json_file("kernels_report.json", report);
  print(report);
  return pass ? kOk : kCheckFailed;
}

int kernels_sweep(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.kernels;
  std::vector<KernelSweepRow> rows;
  for (double d : linspace(o.d_min, o.d_max, o.d_n)) {
    const Vec4 x{o.sweep_x0, d, 0.0, 0.0};
    const Vec3 y{0.0, 0.0, 0.0};
    rows.push_back({x, y, kernel_eval(o.spec, x, y), o.spec.eps});
  }
  out.file("kernel_sweep.csv", [&](std::ostream& os) { write_kernel_sweep_csv(os, rows); });
  double peak = 0.0, at = 0.0;
  for (const auto& r : rows)
    if (std::abs(r.value) > peak) {
      peak = std::abs(r.value);
      at = r.x[1] - r.y[0];
    }
  const json report = {{"mode", "sweep"}, {"n", rows.size()}, {"eps", o.spec.eps},
                       {"peak_magnitude", peak}, {"peak_at_x1_minus_y1", at}};
  out.json_file("kernels_report.json", report);
  print(report);
  return kOk;
}

int kernels_probe(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.kernels;
  KernelSpec spec = o.spec;
  spec.eps = o.probe_eps;
  const double x0 = o.sweep_x0;
  // The singular support is {x' = y'} for E1 and E3's constant part, shifted
  // to x1 + x0 = y1 for E2.
  const double shift = spec.family == KernelFamily::E2 ? x0 : 0.0;
  const Vec3 y{0.0, 0.0, 0.0};
  const Vec3 on{-shift, 0.0, 0.0};
  const Vec3 off{-shift + 0.5, 0.0, 0.0};

  struct Probe {
    const char* name;
    Vec3 x;
    std::array<double, 6> dir;
  };
  const std::vector<Probe> probes = {
      {"on_support_conormal", on, {1, 0, 0, -1, 0, 0}},
      {"on_support_tangential", on, {1, 0, 0, 1, 0, 0}},
      {"off_support_conormal", off, {1, 0, 0, -1, 0, 0}},
  };
  json rows = json::array();
  for (const auto& p : probes) {
    const DecayReport r = decay_probe(spec, x0, p.x, y, p.dir, o.radii);
    json row = to_json(r);
    row["probe"] = p.name;
    row["x_base"] = p.x;
    row["direction"] = p.dir;
    rows.push_back(row);
  }
  const json report = {{"mode", "probe"}, {"eps", spec.eps}, {"x0", x0}, {"probes", rows}};
  out.json_file("kernels_report.json", report);
  print(report);
  return kOk;
}

int kernels_reduction(const RunConfig& cfg, Output& out) {
  const auto& o = cfg.kernels;
  KernelSpec spec = o.spec;
  spec.family = KernelFamily::E3;
  const double x0 = o.sweep_x0;
  double worst = 0.0;
  json rows = json::array();
  for (double d : linspace(o.d_min, o.d_max, o.d_n)) {
    const Vec4 x{x0, d, 0.1, -0.2};
    const Vec3 y{0.0, 0.0, 0.0};
    const cplx whole = kernel_eval(spec, x, y);
    const cplx parts = -2.0 * e3_term(spec, E3Term::Const, x, y) + 2.0 * e3_term(spec, E3Term::Shift, x, y) +
                       e3_term(spec, E3Term::Smooth, x, y);
    const double r = std::abs(whole - parts) / std::max(1.0, std::abs(whole));
    worst = std::max(worst, r);
    rows.push_back({{"x1_minus_y1", d}, {"re", whole.real()}, {"im", whole.imag()}, {"residual", r}});
  }
  const double tol = 1e-10;
  const bool pass = worst < tol;
  const json report = {{"mode", "reduction"}, {"eps", spec.eps}, {"x0", x0},          {"rows", rows},
                       {"max_residual", worst}, {"tolerance", tol}, {"pass", pass}};
  out.json_file("kernels_report.json", report);
  print(report);
  return pass ? kOk : kCheckFailed;
}

int cmd_kernels(const RunConfig& cfg, Output& out) {
  const auto& m = cfg.kernels.mode;
  if (m == "boxcar") return kernels_boxcar(cfg, out);
  if (m == "sweep") return kernels_sweep(cfg, out);
  if (m == "probe") return kernels_probe(cfg, out);
  return kernels_reduction(cfg, out);
}

KernelFamily parse_family(const std::string& s) {
  if (s == "E1") return KernelFamily::E1;
  if (s == "E2") return KernelFamily::E2;
  return KernelFamily::E3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kerrml - extremal Kerr symbol calculus, horizon dynamics and model kernels"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed for the SplitMix64 sample generator");
  app.add_option("--out", out_dir, "output directory for artifacts");

  auto* classify_cmd = app.add_subcommand("classify", "classify a phase-space point");
  std::string point_text;
  classify_cmd->add_option("point", point_text, "JSON: [t,r,theta,phi,p_t,p_r,p_theta,p_phi] or object")
      ->required();
  std::optional<double> classify_tol;
  classify_cmd->add_option("--tol", classify_tol, "relative classification tolerance");

  auto* verify_cmd = app.add_subcommand("verify", "run the horizon lemma checks");
  std::optional<std::string> lemma;
  std::optional<int> n_samples;
  std::optional<double> spin_factor;
  verify_cmd->add_option("--lemma", lemma, "double-char|involutive|hessian-rank|subprincipal|all")
      ->check(CLI::IsMember({"double-char", "involutive", "hessian-rank", "subprincipal", "all"}));
  verify_cmd->add_option("--n-samples", n_samples, "samples per lemma");
  verify_cmd->add_option("--control-spin-factor", spin_factor,
                         "run with a = factor * r_s/2 (sub-extremal control; 1 = extremal)");

  auto* trace_cmd = app.add_subcommand("trace", "integrate a null bicharacteristic");
  std::optional<std::string> trace_start;
  std::vector<double> span;
  std::optional<std::string> normalize;
  std::optional<int> trace_grid;
  bool allow_massive = false;
  trace_cmd->add_option("--start", trace_start, "JSON phase point");
  trace_cmd->add_option("--span", span, "s0 s1")->expected(2);
  trace_cmd->add_option("--normalize", normalize, "none|future|past")
      ->check(CLI::IsMember({"none", "future", "past"}));
  trace_cmd->add_option("--grid", trace_grid, "record this many equally spaced samples");
  trace_cmd->add_flag("--allow-massive", allow_massive, "accept H != 0 at the start");

  auto* orbit_cmd = app.add_subcommand("orbit", "sample the horizon flow fibre through a Sigma2 point");
  std::optional<std::string> orbit_start;
  std::vector<double> s1_range;
  std::optional<int> orbit_n;
  std::optional<double> alpha;
  orbit_cmd->add_option("--start", orbit_start, "JSON phase point near Sigma2");
  orbit_cmd->add_option("--s1", s1_range, "s1 begin end")->expected(2);
  orbit_cmd->add_option("--n", orbit_n, "number of s1 samples");
  orbit_cmd->add_option("--alpha", alpha, "horizon family coefficient");

  auto* prop_cmd = app.add_subcommand("propagate", "propagate wavefront seeds through the horizon");
  std::optional<int> random_rays;
  std::optional<double> duration;
  bool no_orbit = false, no_plus = false, no_minus = false;
  prop_cmd->add_option("--random-rays", random_rays, "extra seeded outgoing exterior rays");
  prop_cmd->add_option("--duration", duration, "flow parameter budget per branch");
  prop_cmd->add_flag("--no-orbit", no_orbit, "disable the horizon-orbit branch");
  prop_cmd->add_flag("--no-plus", no_plus, "disable the factor_plus branch");
  prop_cmd->add_flag("--no-minus", no_minus, "disable the factor_minus branch");

  auto* kern_cmd = app.add_subcommand("kernels", "model kernel checks");
  std::optional<std::string> mode, family;
  std::optional<double> eps;
  kern_cmd->add_option("--mode", mode, "boxcar|sweep|probe|reduction")
      ->check(CLI::IsMember({"boxcar", "sweep", "probe", "reduction"}));
  kern_cmd->add_option("--family", family, "E1|E2|E3")->check(CLI::IsMember({"E1", "E2", "E3"}));
  kern_cmd->add_option("--eps", eps, "Gaussian regularisation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    Output out(cfg.out_dir);

    if (*classify_cmd) {
      if (classify_tol) cfg.tol.classify = *classify_tol;
      return cmd_classify(cfg, point_text);
    }
    if (*verify_cmd) {
      if (lemma) cfg.verify.lemma = *lemma;
      if (n_samples) cfg.verify.n_samples = *n_samples;
      if (spin_factor) cfg.verify.control_spin_factor = *spin_factor;
      return cmd_verify(cfg, out);
    }
    if (*trace_cmd) {
      if (trace_start) cfg.trace.start = phase_point_from_json(json::parse(*trace_start));
      if (span.size() == 2) {
        cfg.trace.s0 = span[0];
        cfg.trace.s1 = span[1];
      }
      if (normalize) cfg.trace.normalize = *normalize;
      if (trace_grid) cfg.trace.grid = *trace_grid;
      if (allow_massive) cfg.trace.allow_massive = true;
      return cmd_trace(cfg, out);
    }
    if (*orbit_cmd) {
      if (orbit_start) cfg.orbit.start = phase_point_from_json(json::parse(*orbit_start));
      if (s1_range.size() == 2) {
        cfg.orbit.s1_begin = s1_range[0];
        cfg.orbit.s1_end = s1_range[1];
      }
      if (orbit_n) cfg.orbit.n = *orbit_n;
      if (alpha) cfg.orbit.alpha = *alpha;
      if (cfg.orbit.n < 1) throw DomainError(ErrorKind::ConfigError, "--n must be >= 1");
      return cmd_orbit(cfg, out);
    }
    if (*prop_cmd) {
      if (random_rays) cfg.propagate.random_rays = *random_rays;
      if (duration) cfg.propagate.duration = *duration;
      if (no_orbit) cfg.propagate.mask.orbit = false;
      if (no_plus) cfg.propagate.mask.plus = false;
      if (no_minus) cfg.propagate.mask.minus = false;
      return cmd_propagate(cfg, out);
    }
    if (mode) cfg.kernels.mode = *mode;
    if (family) cfg.kernels.spec.family = parse_family(*family);
    if (eps) cfg.kernels.spec.eps = *eps;
    return cmd_kernels(cfg, out);
  } catch (const DomainError& e) {
    std::cerr << "kerrml: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "kerrml: ConfigError: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "kerrml: IoError: " << e.what() << '\n';
    return kIo;
  }
}

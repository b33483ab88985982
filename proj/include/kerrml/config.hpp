// kerrml - run configuration for the command-line tool
//
// One JSON document; every object rejects keys it does not know. All fields
// are optional and default to the values below. Example:
//
//   {"params": {"r_s": 2, "c": 1}, "seed": 7,
//    "integrator": {"rel_tol": 1e-12},
//    "trace": {"start": [0, 6, 1.5707963267948966, 0, 0, -1, 0, 1],
//              "normalize": "future", "span": [0, 50]}}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kerrml/flow.hpp"
#include "kerrml/io.hpp"
#include "kerrml/kernels.hpp"
#include "kerrml/wavefront.hpp"

namespace kerrml {

struct Tolerances {
  double classify = kDefaultClassifyTol;
  double gradient = 1e-10;        // double-char vanishing, relative to |p|
  double gradient_floor = 1e-3;   // double-char non-vanishing off Sigma2, relative to |p|^2
  double bracket = 1e-12;
  double rank = 1e-9;
  double gap = 1e-3;
  double reconstruction = 1e-10;
  double match = 1e-6;
  double boxcar = 1e-8;           // kernels boxcar residual gate
};

struct VerifyOptions {
  std::string lemma = "all";  // double-char | involutive | hessian-rank | subprincipal | all
  int n_samples = 500;
  double control_spin_factor = 1.0;  // != 1 runs the sub-extremal control
};

struct TraceOptions {
  std::optional<PhasePoint> start;
  double s0 = 0.0;
  double s1 = 50.0;
  std::string normalize = "none";  // none | future | past
  bool allow_massive = false;
  int grid = 0;  // > 0: record only this many equally spaced samples
};

struct OrbitOptions {
  std::optional<PhasePoint> start;
  double s1_begin = 0.0;
  std::optional<double> s1_end;  // default 2 pi r_s / c (one full turn in phi)
  int n = 101;
  std::vector<double> s2{0.0};
  double alpha = 1.0;
};

struct PropagateOptions {
  std::vector<PhasePoint> seeds;
  int random_rays = 0;  // extra seeded outgoing exterior rays
  double duration = 10.0;
  BranchMask mask;
  double orbit_alpha = 1.0;
  double entry_tol = 1e-4;
};

struct KernelsOptions {
  std::string mode = "boxcar";  // boxcar | sweep | probe | reduction
  KernelSpec spec;
  // boxcar grid
  double x0_min = 0.1, x0_max = 2.0;
  int x0_n = 20;
  double xi_min = -20.0, xi_max = 20.0;
  int xi_n = 401;
  // sweep: x = (x0, x1, 0, 0), y' = (y1, 0, 0), x1 - y1 over [d_min, d_max]
  double sweep_x0 = 0.5;
  double d_min = -2.0, d_max = 2.0;
  int d_n = 41;
  // probe
  std::vector<double> radii{16, 32, 64, 128};
  double probe_eps = 1e-6;
};

struct RunConfig {
  KerrParams params;
  IntegratorConfig integrator;
  Tolerances tol;
  std::uint64_t seed = 1;
  std::string out_dir = "kerrml_out";
  VerifyOptions verify;
  TraceOptions trace;
  OrbitOptions orbit;
  PropagateOptions propagate;
  KernelsOptions kernels;
};

// Throws DomainError(ConfigError) on unknown keys or wrong types, and
// DomainError(InvalidArgument) on invalid physical parameters.
RunConfig parse_run_config(const json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace kerrml

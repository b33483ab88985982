// kerrml - the double-characteristic set and its horizon flow
//
// Sigma2 = {r = r_s/2, p_t + Psi = 0}. On it the principal symbol vanishes to
// second order, so the H-flow stops; propagation continues along the orbits
// generated by
//
//   G_alpha = (p_t + Psi) - alpha (r - r_s/2) sqrt(Phi),
//
// whose field restricted to Sigma2 is d/dt + (c/r_s) d/dphi + h d/dp_r with
// h = -d_r Psi + alpha sqrt(Phi). alpha = 1 is the factor_minus channel.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "kerrml/flow.hpp"
#include "kerrml/geometry.hpp"
#include "kerrml/phase.hpp"

namespace kerrml {

struct Sigma2Point {
  PhasePoint pp;
  double r_residual = 0.0;   // r - r_s/2 before projection
  double pt_residual = 0.0;  // p_t + Psi before projection (after the r step)
};

// r := r_s/2 first, then p_t := -Psi. Throws NotNearSigma2 unless
// |r - r_s/2| <= loose_tol r_s and |p_t + Psi| <= loose_tol |p|;
// ConormalDegenerate if Phi <= degenerate_tol |p_tan|^2 afterwards, where
// |p_tan| = |p_t| + |p_theta| + |p_phi| (p_r is free along the conormal fibre).
Sigma2Point project_to_sigma2(const PhasePoint& pp, const KerrParams& k, double loose_tol = 1e-6,
                              double degenerate_tol = 1e-12);

// -d_r Psi + alpha sqrt(Phi) at a horizon point.
double horizon_drift(const PhasePoint& pp, const KerrParams& k, double alpha);

// (t + s1, r_s/2, theta, phi + (c/r_s) s1; -(c/r_s) p_phi, p_r + s2 + int_0^s1 h, p_theta, p_phi).
// The p_r integral is done by the adaptive controller on the reduced 1-d ODE.
// Throws DegenerateFibre if Phi <= tol |p_tan|^2.
PhasePoint horizon_flow_map(const Sigma2Point& sp, double s1, double s2, const KerrParams& k,
                            double alpha = 1.0, double tol = 1e-12);

// Two-parameter fibre sampled on the tensor grid s1 x s2 (row-major in s1).
struct RelationFibre {
  Sigma2Point base;
  double alpha = 1.0;
  std::vector<double> s1;
  std::vector<double> s2;
  std::vector<PhasePoint> points;

  const PhasePoint& at(std::size_t i, std::size_t j) const { return points[i * s2.size() + j]; }
};

RelationFibre fibre_sample(const Sigma2Point& sp, const std::vector<double>& s1,
                           const std::vector<double>& s2, const KerrParams& k, double alpha = 1.0);

struct LemmaReport {
  std::string lemma;
  std::size_t n_samples = 0;
  double max_residual = 0.0;
  bool pass = false;
  std::map<std::string, double> extra;  // secondary measurements, for the JSON record
};

// gradient(P~0) vanishes (< tol |p|) on sigma2 samples and does not (> floor |p|^2)
// on horizon samples with p_t + Psi != 0.
LemmaReport verify_double_characteristic(const std::vector<PhasePoint>& sigma2,
                                         const std::vector<PhasePoint>& horizon_off,
                                         const KerrParams& k, double tol = 1e-10,
                                         double floor = 1e-3);

// |{r - r_s/2, p_t + Psi}| < tol on `points`; rank of (df1; df2) is 2 on
// `sigma2`, and moving a sigma2 sample eps along the 6-dim Jacobian kernel
// leaves f1, f2 at O(eps^2).
LemmaReport verify_involutivity(const std::vector<PhasePoint>& points,
                                const std::vector<PhasePoint>& sigma2, const KerrParams& k,
                                double tol = 1e-12);

// Singular values of hessian(P~0): s3/s1 < rank_tol and s2/s1 > gap; and the
// Hessian equals 2 df2 (x) df2 - 2 Phi dr (x) dr to recon_tol (max entry).
// Throws SampleOnConormal if |p_phi| <= 1e-9 |p| (Phi may vanish there).
LemmaReport verify_hessian_rank(const std::vector<PhasePoint>& sigma2, const KerrParams& k,
                                double rank_tol = 1e-9, double gap = 1e-3,
                                double recon_tol = 1e-10);

// c_P == 0 on an n_theta x n_pr x n_ptheta horizon grid, and the closed form
// agrees with the coefficient-route value there and at the two spot points.
LemmaReport verify_subprincipal(const KerrParams& k, int n_theta = 50, int n_pr = 50,
                                int n_ptheta = 4);

}  // namespace kerrml

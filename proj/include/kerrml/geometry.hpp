// kerrml - closed-form scalars of the extremal Kerr symbol calculus
//
// Everything here is a pure function of (phase point, params). The templates
// in namespace expr are the raw expressions, generic in the scalar type so
// that the same code is evaluated on doubles and on nested dual numbers. They
// perform no domain checks; the double overloads in namespace kerrml do.
//
// Notation (Boyer-Lindquist, a = r_s/2 unless the control spin is used):
//   Delta = r^2 - r_s r + a^2            ( = (r - r_s/2)^2 when extremal )
//   Sigma = r^2 + a^2 cos^2(theta)
//   A     = r^2 + a^2 + (r_s r / Sigma) a^2 sin^2(theta)   ( = -c^2 Delta g^tt )
//   Psi   = (g^tphi / g^tt) p_phi
//   Phi   = (Psi^2 - (g^rr p_r^2 + g^thth p_th^2 + g^phph p_ph^2)/g^tt) / Delta
//   P~0   = (p_t + Psi)^2 - Delta Phi    ( = g^{mu nu} p p / g^tt )

#pragma once

#include <complex>
#include <string_view>

#include "kerrml/dual.hpp"
#include "kerrml/phase.hpp"

namespace kerrml {

namespace expr {

template <class T>
T delta(const T& r, const KerrParams& k) {
  if (k.extremal()) {
    const T x = r - k.horizon_radius();
    return x * x;
  }
  return r * r - k.r_s() * r + k.a() * k.a();
}

template <class T>
T sigma(const T& r, const T& theta, const KerrParams& k) {
  using std::cos;
  const T ct = cos(theta);
  return r * r + (k.a() * k.a()) * (ct * ct);
}

template <class T>
T time_weight(const T& r, const T& theta, const KerrParams& k) {
  using std::sin;
  const T st = sin(theta);
  const double a2 = k.a() * k.a();
  return r * r + a2 + (k.r_s() * a2) * r * (st * st) / sigma(r, theta, k);
}

template <class T>
T psi(const PhaseVec<T>& x, const KerrParams& k) {
  const T& r = x[kR];
  const T s = sigma(r, x[kTheta], k);
  const T w = time_weight(r, x[kTheta], k);
  return (k.a() * k.c() * k.r_s()) * r * x[kPphi] / (s * w);
}

// Phi with the p_phi^2 coefficient taken from the defining expression,
// c^2 / (A^2 sin^2 theta); this is the form that keeps P~0 equal to the
// metric contraction divided by g^tt.
template <class T>
T capital_phi(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sin;
  const T& r = x[kR];
  const T s = sigma(r, x[kTheta], k);
  const T w = time_weight(r, x[kTheta], k);
  const T st = sin(x[kTheta]);
  T inner = delta(r, k) * x[kPr] * x[kPr] / s + x[kPtheta] * x[kPtheta] / s;
  if (!(primal(x[kPphi]) == 0.0 && primal(st) == 0.0))
    inner += x[kPphi] * x[kPphi] / (w * st * st);
  return (k.c() * k.c()) * inner / w;
}

// Literal right-most closed form of the displayed Phi identity, with
// p_phi^2 / (Sigma sin^2 theta). Differs from capital_phi off the equatorial
// horizon circle; kept for comparison only.
template <class T>
T capital_phi_displayed(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sin;
  const T& r = x[kR];
  const T s = sigma(r, x[kTheta], k);
  const T w = time_weight(r, x[kTheta], k);
  const T st = sin(x[kTheta]);
  T inner = delta(r, k) * x[kPr] * x[kPr] / s + x[kPtheta] * x[kPtheta] / s;
  if (!(primal(x[kPphi]) == 0.0 && primal(st) == 0.0))
    inner += x[kPphi] * x[kPphi] / (s * st * st);
  return (k.c() * k.c()) * inner / w;
}

template <class T>
T principal_symbol(const PhaseVec<T>& x, const KerrParams& k) {
  const T f = x[kPt] + psi(x, k);
  return f * f - delta(x[kR], k) * capital_phi(x, k);
}

// g^{mu nu} p_mu p_nu, five-term Boyer-Lindquist form.
template <class T>
T metric_contraction(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sin;
  const T& r = x[kR];
  const T dl = delta(r, k);
  const T s = sigma(r, x[kTheta], k);
  const T st = sin(x[kTheta]);
  const T rsr_over_s = k.r_s() * r / s;
  const double a = k.a();
  const double c = k.c();
  T g = -(r * r + a * a + rsr_over_s * (a * a) * (st * st)) * x[kPt] * x[kPt] / ((c * c) * dl);
  g -= (2.0 * a / c) * rsr_over_s * x[kPphi] * x[kPt] / dl;
  g += dl * x[kPr] * x[kPr] / s;
  g += x[kPtheta] * x[kPtheta] / s;
  if (!(primal(x[kPphi]) == 0.0 && primal(st) == 0.0))
    g += (1.0 - rsr_over_s) * x[kPphi] * x[kPphi] / (dl * st * st);
  return g;
}

template <class T>
T hamiltonian(const PhaseVec<T>& x, const KerrParams& k) {
  return -0.5 * metric_contraction(x, k);
}

// sqrt(-det g) Delta g^tt = -Sigma sin(theta) A / c^2.
template <class T>
T alpha_coefficient(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sin;
  return -sigma(x[kR], x[kTheta], k) * sin(x[kTheta]) * time_weight(x[kR], x[kTheta], k) /
         (k.c() * k.c());
}

// sqrt(-det g) Delta g^{mu nu} p p, routed through the metric contraction.
template <class T>
T full_principal_symbol(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sin;
  const T& r = x[kR];
  return sigma(r, x[kTheta], k) * sin(x[kTheta]) * delta(r, k) * metric_contraction(x, k);
}

template <class T>
T factor_plus(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sqrt;
  return x[kPt] + psi(x, k) + (x[kR] - k.horizon_radius()) * sqrt(capital_phi(x, k));
}

template <class T>
T factor_minus(const PhaseVec<T>& x, const KerrParams& k) {
  using std::sqrt;
  return x[kPt] + psi(x, k) - (x[kR] - k.horizon_radius()) * sqrt(capital_phi(x, k));
}

// Defining functions of the double-characteristic set.
template <class T>
T sigma2_f1(const PhaseVec<T>& x, const KerrParams& k) {
  return x[kR] - k.horizon_radius();
}

template <class T>
T sigma2_f2(const PhaseVec<T>& x, const KerrParams& k) {
  return x[kPt] + psi(x, k);
}

}  // namespace expr

enum class RegionClass {
  Exterior,
  Interior,
  HorizonGeneric,
  Sigma2,
  ConormalNH,
  AxisLimit,
  RingSingular,
};

std::string_view to_string(RegionClass c);
RegionClass region_from_string(std::string_view s);

// Angular distance from the axis below which off-horizon points are
// classified AxisLimit.
inline constexpr double kAxisEpsilon = 1e-6;
inline constexpr double kDefaultClassifyTol = 1e-9;

double delta(double r, const KerrParams& k);
double sigma(double r, double theta, const KerrParams& k);
double time_weight(double r, double theta, const KerrParams& k);

// Sigma sin(theta). Throws RingSingular on the ring.
double volume_density(double r, double theta, const KerrParams& k);

// Throw HorizonSingular on Delta = 0 and RingSingular on Sigma = 0.
double metric_contraction(const PhasePoint& pp, const KerrParams& k);
double hamiltonian(const PhasePoint& pp, const KerrParams& k);

// Smooth across the horizon. Throw RingSingular.
double psi(const PhasePoint& pp, const KerrParams& k);
double capital_phi(const PhasePoint& pp, const KerrParams& k);  // also PoleSingular
double capital_phi_displayed(const PhasePoint& pp, const KerrParams& k);
double principal_symbol(const PhasePoint& pp, const KerrParams& k);
double alpha_coefficient(const PhasePoint& pp, const KerrParams& k);

// alpha * P~0 evaluated through volume_density * Delta * metric_contraction.
// Off-horizon only.
double full_principal_symbol(const PhasePoint& pp, const KerrParams& k);

// p_t + Psi +/- (r - r_s/2) sqrt(Phi). Throw DegenerateFactorization when
// Phi <= tol * |p|^2.
double factor_plus(const PhasePoint& pp, const KerrParams& k, double tol = 1e-14);
double factor_minus(const PhasePoint& pp, const KerrParams& k, double tol = 1e-14);

// Subprincipal symbol of Delta box_g, closed form
//   c_P = -i (3 Delta Delta' sin(theta) p_r + 2 Delta cos(theta) p_theta),
// which for a = r_s/2 reads -6i sin(theta) (r - r_s/2)^3 p_r - 2i Delta cos(theta) p_theta.
std::complex<double> subprincipal_symbol(const PhasePoint& pp, const KerrParams& k);

// Same quantity from its defining coefficient expression
//   -i Delta d_mu(sqrt(-g) g^{mu nu} p_nu) - i d_mu(Delta sqrt(-g) g^{mu nu} p_nu),
// differentiated with dual numbers.
std::complex<double> subprincipal_from_coefficients(const PhasePoint& pp, const KerrParams& k);

RegionClass classify(const PhasePoint& pp, const KerrParams& k, double tol = kDefaultClassifyTol);

}  // namespace kerrml

#include "kerrml/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "kerrml/errors.hpp"

namespace kerrml {

namespace {

void check_ring(double r, double theta, const KerrParams& k) {
  const double s = expr::sigma(r, theta, k);
  if (!(s > 1e-28 * k.r_s() * k.r_s())) {
    std::ostringstream msg;
    msg << "ring singularity: Sigma = " << s << " at r=" << r << ", theta=" << theta;
    throw DomainError(ErrorKind::RingSingular, msg.str());
  }
}

void check_horizon(double r, const KerrParams& k) {
  if (expr::delta(r, k) == 0.0) {
    std::ostringstream msg;
    msg << "metric contraction is singular on the horizon (r=" << r << ")";
    throw DomainError(ErrorKind::HorizonSingular, msg.str());
  }
}

bool on_pole(double theta) { return std::abs(std::sin(theta)) <= 1e-15; }

}  // namespace

std::string_view to_string(RegionClass c) {
  switch (c) {
    case RegionClass::Exterior: return "Exterior";
    case RegionClass::Interior: return "Interior";
    case RegionClass::HorizonGeneric: return "HorizonGeneric";
    case RegionClass::Sigma2: return "Sigma2";
    case RegionClass::ConormalNH: return "ConormalNH";
    case RegionClass::AxisLimit: return "AxisLimit";
    case RegionClass::RingSingular: return "RingSingular";
  }
  return "Unknown";
}

RegionClass region_from_string(std::string_view s) {
  for (auto c : {RegionClass::Exterior, RegionClass::Interior, RegionClass::HorizonGeneric,
                 RegionClass::Sigma2, RegionClass::ConormalNH, RegionClass::AxisLimit,
                 RegionClass::RingSingular}) {
    if (to_string(c) == s) return c;
  }
  throw DomainError(ErrorKind::InvalidArgument, "unknown region class '" + std::string(s) + "'");
}

double delta(double r, const KerrParams& k) { return expr::delta(r, k); }

double sigma(double r, double theta, const KerrParams& k) { return expr::sigma(r, theta, k); }

double time_weight(double r, double theta, const KerrParams& k) {
  check_ring(r, theta, k);
  return expr::time_weight(r, theta, k);
}

double volume_density(double r, double theta, const KerrParams& k) {
  check_ring(r, theta, k);
  return expr::sigma(r, theta, k) * std::sin(theta);
}

double metric_contraction(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  check_horizon(pp.base.r, k);
  if (on_pole(pp.base.theta) && pp.mom.p_phi != 0.0)
    throw DomainError(ErrorKind::PoleSingular, "g^phiphi is singular on the axis");
  return expr::metric_contraction(pp.vec(), k);
}

double hamiltonian(const PhasePoint& pp, const KerrParams& k) {
  return -0.5 * metric_contraction(pp, k);
}

double psi(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  return expr::psi(pp.vec(), k);
}

double capital_phi(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  if (on_pole(pp.base.theta) && pp.mom.p_phi != 0.0)
    throw DomainError(ErrorKind::PoleSingular, "Phi is singular on the axis when p_phi != 0");
  return expr::capital_phi(pp.vec(), k);
}

double capital_phi_displayed(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  if (on_pole(pp.base.theta) && pp.mom.p_phi != 0.0)
    throw DomainError(ErrorKind::PoleSingular, "Phi is singular on the axis when p_phi != 0");
  return expr::capital_phi_displayed(pp.vec(), k);
}

double principal_symbol(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  if (on_pole(pp.base.theta) && pp.mom.p_phi != 0.0)
    throw DomainError(ErrorKind::PoleSingular, "principal symbol is singular on the axis when p_phi != 0");
  return expr::principal_symbol(pp.vec(), k);
}

double alpha_coefficient(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  return expr::alpha_coefficient(pp.vec(), k);
}

double full_principal_symbol(const PhasePoint& pp, const KerrParams& k) {
  check_ring(pp.base.r, pp.base.theta, k);
  check_horizon(pp.base.r, k);
  return expr::full_principal_symbol(pp.vec(), k);
}

namespace {

void check_factorizable(const PhasePoint& pp, const KerrParams& k, double tol) {
  const double phi = capital_phi(pp, k);
  const double n = covector_norm(pp);
  if (!(phi > tol * n * n)) {
    std::ostringstream msg;
    msg << "Phi = " << phi << " too small to factor the principal symbol";
    throw DomainError(ErrorKind::DegenerateFactorization, msg.str());
  }
}

}  // namespace

double factor_plus(const PhasePoint& pp, const KerrParams& k, double tol) {
  check_factorizable(pp, k, tol);
  return expr::factor_plus(pp.vec(), k);
}

double factor_minus(const PhasePoint& pp, const KerrParams& k, double tol) {
  check_factorizable(pp, k, tol);
  return expr::factor_minus(pp.vec(), k);
}

std::complex<double> subprincipal_symbol(const PhasePoint& pp, const KerrParams& k) {
  const double r = pp.base.r;
  const double th = pp.base.theta;
  const double dl = expr::delta(r, k);
  const double ddl = 2.0 * r - k.r_s();
  const double im = 3.0 * dl * ddl * std::sin(th) * pp.mom.p_r + 2.0 * dl * std::cos(th) * pp.mom.p_theta;
  return {0.0, -im};
}

std::complex<double> subprincipal_from_coefficients(const PhasePoint& pp, const KerrParams& k) {
  using D = Dual<double, 2>;
  const D r(pp.base.r, {1.0, 0.0});
  const D th(pp.base.theta, {0.0, 1.0});
  const D vol = expr::sigma(r, th, k) * sin(th);
  const D dl = expr::delta(r, k);
  const D grr = dl / expr::sigma(r, th, k);
  const D gthth = 1.0 / expr::sigma(r, th, k);
  // sqrt(-g) g^{mu nu} p_nu for mu = r, theta; t and phi derivatives vanish.
  const D flux_r = vol * grr * pp.mom.p_r;
  const D flux_th = vol * gthth * pp.mom.p_theta;
  const D dflux_r = dl * flux_r;
  const D dflux_th = dl * flux_th;
  const double div = flux_r.d[0] + flux_th.d[1];
  const double div_weighted = dflux_r.d[0] + dflux_th.d[1];
  return {0.0, -(dl.val * div + div_weighted)};
}

RegionClass classify(const PhasePoint& pp, const KerrParams& k, double tol) {
  const double n = covector_norm(pp);
  if (n == 0.0 || !std::isfinite(n))
    throw DomainError(ErrorKind::ZeroCovector, "zero covector");
  const double r = pp.base.r;
  const double th = pp.base.theta;
  const double s = expr::sigma(r, th, k);
  if (s == 0.0) throw DomainError(ErrorKind::RingSingular, "point lies on the ring singularity");
  if (s <= tol * k.r_s() * k.r_s()) return RegionClass::RingSingular;

  const double dr = r - k.horizon_radius();
  if (std::abs(dr) <= tol * k.r_s()) {
    const auto& p = pp.mom;
    if (std::max({std::abs(p.p_t), std::abs(p.p_theta), std::abs(p.p_phi)}) <= tol * n)
      return RegionClass::ConormalNH;
    if (std::abs(p.p_t + expr::psi(pp.vec(), k)) <= tol * n) return RegionClass::Sigma2;
    return RegionClass::HorizonGeneric;
  }
  if (std::abs(std::sin(th)) < kAxisEpsilon) return RegionClass::AxisLimit;
  return dr > 0.0 ? RegionClass::Exterior : RegionClass::Interior;
}

}  // namespace kerrml

#include "kerrml/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "kerrml/calculus.hpp"
#include "kerrml/errors.hpp"
#include "kerrml/ode.hpp"

namespace kerrml {

namespace {

auto symbol_of(const KerrParams& k) {
  return [&k](const auto& x) { return expr::principal_symbol(x, k); };
}
auto f1_of(const KerrParams& k) {
  return [&k](const auto& x) { return expr::sigma2_f1(x, k); };
}
auto f2_of(const KerrParams& k) {
  return [&k](const auto& x) { return expr::sigma2_f2(x, k); };
}

// On the horizon Phi only sees p_theta, p_phi, and the conormal stratum is
// p_t = p_theta = p_phi = 0 with p_r free, so p_r stays out of the scale
// (arriving rays carry a huge p_r in these coordinates).
double phi_floor(const PhasePoint& pp, double tol) {
  const double n = std::abs(pp.mom.p_t) + std::abs(pp.mom.p_theta) + std::abs(pp.mom.p_phi);
  return tol * n * n;
}

}  // namespace

Sigma2Point project_to_sigma2(const PhasePoint& pp, const KerrParams& k, double loose_tol,
                              double degenerate_tol) {
  const double n = covector_norm(pp);
  if (n == 0.0) throw DomainError(ErrorKind::ZeroCovector, "zero covector");
  Sigma2Point sp;
  sp.r_residual = pp.base.r - k.horizon_radius();
  if (std::abs(sp.r_residual) > loose_tol * k.r_s()) {
    std::ostringstream msg;
    msg << "not near Sigma2: r - r_s/2 = " << sp.r_residual;
    throw DomainError(ErrorKind::NotNearSigma2, msg.str());
  }
  sp.pp = pp;
  sp.pp.base.r = k.horizon_radius();
  sp.pt_residual = sp.pp.mom.p_t + psi(sp.pp, k);
  if (std::abs(sp.pt_residual) > loose_tol * n) {
    std::ostringstream msg;
    msg << "not near Sigma2: p_t + Psi = " << sp.pt_residual;
    throw DomainError(ErrorKind::NotNearSigma2, msg.str());
  }
  sp.pp.mom.p_t = -psi(sp.pp, k);
  const double phi = capital_phi(sp.pp, k);
  if (!(phi > phi_floor(sp.pp, degenerate_tol))) {
    std::ostringstream msg;
    msg << "projection lands on the conormal stratum (Phi = " << phi << ")";
    throw DomainError(ErrorKind::ConormalDegenerate, msg.str());
  }
  return sp;
}

double horizon_drift(const PhasePoint& pp, const KerrParams& k, double alpha) {
  const Gradient8 dpsi = gradient([&k](const auto& x) { return expr::psi(x, k); }, pp);
  return -dpsi.d_q[1] + alpha * std::sqrt(capital_phi(pp, k));
}

PhasePoint horizon_flow_map(const Sigma2Point& sp, double s1, double s2, const KerrParams& k,
                            double alpha, double tol) {
  const PhasePoint& p0 = sp.pp;
  const double phi = capital_phi(p0, k);
  if (!(phi > phi_floor(p0, tol))) {
    std::ostringstream msg;
    msg << "fibre is degenerate: Phi = " << phi;
    throw DomainError(ErrorKind::DegenerateFibre, msg.str());
  }
  const double w = k.c() / k.r_s();

  auto orbit = [&](double s) {
    PhasePoint q = p0;
    q.base.t += s;
    q.base.phi += w * s;
    return q;
  };

  // dp_r/ds = h(orbit(s)). h does not actually vary along the orbit (nothing it
  // depends on moves), but it is integrated rather than assumed constant.
  double drift = 0.0;
  if (s1 != 0.0) {
    auto rhs = [&](double s, const State<1>&) { return State<1>{horizon_drift(orbit(s), k, alpha)}; };
    auto accept = [](double, const State<1>&, const State<1>&) { return true; };
    auto observe = [](double, const State<1>&) { return true; };
    const StepControl ctl{1e-13, 1e-13, std::max(1.0, std::abs(s1)), 1e-12};
    const auto res = dormand_prince<1>(rhs, State<1>{0.0}, 0.0, s1, ctl, accept, observe);
    if (res.status != OdeStatus::Completed)
      throw DomainError(ErrorKind::StepFailure, "p_r quadrature along the horizon orbit failed");
    drift = res.y[0];
  }

  PhasePoint out = orbit(s1);
  out.base.r = k.horizon_radius();
  out.mom.p_t = -w * p0.mom.p_phi;
  out.mom.p_r = p0.mom.p_r + s2 + drift;
  return out;
}

RelationFibre fibre_sample(const Sigma2Point& sp, const std::vector<double>& s1,
                           const std::vector<double>& s2, const KerrParams& k, double alpha) {
  RelationFibre fib{sp, alpha, s1, s2, {}};
  fib.points.reserve(s1.size() * s2.size());
  for (double a : s1)
    for (double b : s2) fib.points.push_back(horizon_flow_map(sp, a, b, k, alpha));
  return fib;
}

LemmaReport verify_double_characteristic(const std::vector<PhasePoint>& sigma2,
                                         const std::vector<PhasePoint>& horizon_off,
                                         const KerrParams& k, double tol, double floor) {
  LemmaReport rep;
  rep.lemma = "double-char";
  rep.n_samples = sigma2.size() + horizon_off.size();
  auto f = symbol_of(k);
  double worst_on = 0.0;
  for (const auto& pp : sigma2)
    worst_on = std::max(worst_on, gradient(f, pp).norm() / covector_norm(pp));
  double least_off = std::numeric_limits<double>::infinity();
  for (const auto& pp : horizon_off) {
    const double n = covector_norm(pp);
    least_off = std::min(least_off, gradient(f, pp).norm() / (n * n));
  }
  rep.max_residual = worst_on;
  rep.extra["min_offset_gradient"] = horizon_off.empty() ? 0.0 : least_off;
  rep.pass = rep.n_samples > 0 && worst_on < tol && (horizon_off.empty() || least_off > floor);
  return rep;
}

LemmaReport verify_involutivity(const std::vector<PhasePoint>& points,
                                const std::vector<PhasePoint>& sigma2, const KerrParams& k,
                                double tol) {
  LemmaReport rep;
  rep.lemma = "involutive";
  rep.n_samples = points.size() + sigma2.size();
  auto f1 = f1_of(k);
  auto f2 = f2_of(k);
  double worst = 0.0;
  for (const auto& pp : points) worst = std::max(worst, std::abs(poisson_bracket(f1, f2, pp)));

  int min_rank = 2;
  double tangent = 0.0;
  constexpr double eps = 1e-6;
  for (const auto& pp : sigma2) {
    worst = std::max(worst, std::abs(poisson_bracket(f1, f2, pp)));
    const PhaseVec<double> g1 = gradient(f1, pp).vec();
    const PhaseVec<double> g2 = gradient(f2, pp).vec();
    min_rank = std::min(min_rank, matrix_rank({g1, g2}, 1e-12));

    Eigen::Matrix<double, 2, 8> jac;
    for (int j = 0; j < 8; ++j) {
      jac(0, j) = g1[j];
      jac(1, j) = g2[j];
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 8>> svd(jac, Eigen::ComputeFullV);
    const double n = covector_norm(pp);
    const double base1 = expr::sigma2_f1(pp.vec(), k);
    const double base2 = expr::sigma2_f2(pp.vec(), k);
    for (int col = 2; col < 8; ++col) {
      PhaseVec<double> x = pp.vec();
      for (int j = 0; j < 8; ++j) x[j] += eps * svd.matrixV()(j, col);
      // First-order change must vanish: the defect is O(eps^2).
      const double d1 = std::abs(expr::sigma2_f1(x, k) - base1);
      const double d2 = std::abs(expr::sigma2_f2(x, k) - base2) / n;
      tangent = std::max({tangent, d1 / eps, d2 / eps});
    }
  }
  rep.max_residual = worst;
  rep.extra["min_jacobian_rank"] = sigma2.empty() ? 0.0 : min_rank;
  rep.extra["tangent_defect_over_eps"] = tangent;
  // O(eps) after dividing by eps; 100 eps leaves room for curvature of f2.
  rep.pass = rep.n_samples > 0 && worst < tol && (sigma2.empty() || (min_rank == 2 && tangent < 100 * eps));
  return rep;
}

LemmaReport verify_hessian_rank(const std::vector<PhasePoint>& sigma2, const KerrParams& k,
                                double rank_tol, double gap, double recon_tol) {
  LemmaReport rep;
  rep.lemma = "hessian-rank";
  rep.n_samples = sigma2.size();
  auto f = symbol_of(k);
  auto f2 = f2_of(k);
  double worst_rank = 0.0;
  double least_gap = std::numeric_limits<double>::infinity();
  double worst_recon = 0.0;
  for (const auto& pp : sigma2) {
    if (std::abs(pp.mom.p_phi) <= 1e-9 * covector_norm(pp))
      throw DomainError(ErrorKind::SampleOnConormal, "Hessian rank is not asserted on the conormal stratum");
    const Hessian8 h = hessian(f, pp);
    const auto sv = singular_values(h);
    worst_rank = std::max(worst_rank, sv[2] / sv[0]);
    least_gap = std::min(least_gap, sv[1] / sv[0]);

    const PhaseVec<double> df2 = gradient(f2, pp).vec();
    const double phi = capital_phi(pp, k);
    double scale = 0.0, diff = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        double rec = 2.0 * df2[i] * df2[j];
        if (i == kR && j == kR) rec -= 2.0 * phi;
        diff = std::max(diff, std::abs(h[i][j] - rec));
        scale = std::max(scale, std::abs(h[i][j]));
      }
    worst_recon = std::max(worst_recon, diff / std::max(scale, 1.0));
  }
  rep.max_residual = worst_rank;
  rep.extra["min_sigma2_over_sigma1"] = sigma2.empty() ? 0.0 : least_gap;
  rep.extra["max_reconstruction_error"] = worst_recon;
  rep.pass = rep.n_samples > 0 && worst_rank < rank_tol && least_gap > gap && worst_recon < recon_tol;
  return rep;
}

LemmaReport verify_subprincipal(const KerrParams& k, int n_theta, int n_pr, int n_ptheta) {
  LemmaReport rep;
  rep.lemma = "subprincipal";
  const double rh = k.outer_horizon();
  double worst = 0.0;
  double route = 0.0;
  std::size_t n = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double th = 0.05 + (std::numbers::pi - 0.1) * i / std::max(1, n_theta - 1);
    for (int j = 0; j < n_pr; ++j) {
      const double pr = -5.0 + 10.0 * j / std::max(1, n_pr - 1);
      for (int l = 0; l < n_ptheta; ++l) {
        const double pth = -3.0 + 6.0 * l / std::max(1, n_ptheta - 1);
        const PhasePoint pp{{0.0, rh, th, 0.0}, {-1.0, pr, pth, 2.0}};
        worst = std::max(worst, std::abs(subprincipal_symbol(pp, k)));
        route = std::max(route, std::abs(subprincipal_from_coefficients(pp, k)));
        ++n;
      }
    }
  }
  // Off the horizon the symbol must not vanish, and both routes must agree.
  double mismatch = 0.0, off_min = std::numeric_limits<double>::infinity();
  for (double dr : {0.5, 1.0, -0.25}) {
    const PhasePoint pp{{0.0, rh + dr * k.r_s(), std::numbers::pi / 3, 0.0}, {-1.0, 1.0, 5.0, 2.0}};
    const auto a = subprincipal_symbol(pp, k);
    const auto b = subprincipal_from_coefficients(pp, k);
    mismatch = std::max(mismatch, std::abs(a - b) / std::max(1.0, std::abs(a)));
    off_min = std::min(off_min, std::abs(a));
    ++n;
  }
  rep.n_samples = n;
  rep.max_residual = worst;
  rep.extra["coefficient_route_on_horizon"] = route;
  rep.extra["route_mismatch_off_horizon"] = mismatch;
  rep.extra["min_abs_off_horizon"] = off_min;
  rep.pass = n > 0 && worst == 0.0 && route < 1e-12 && mismatch < 1e-12 && off_min > 0.0;
  return rep;
}

}  // namespace kerrml

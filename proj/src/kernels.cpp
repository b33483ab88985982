#include "kerrml/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "kerrml/errors.hpp"

namespace kerrml {

// ---- model chart -------------------------------------------------------------

ModelPoint model_to_x(const ModelPoint& z) {
  const auto& q = z.pos;
  const auto& e = z.mom;
  return {{q[0], q[0] - q[1], q[2], q[3]}, {e[0] + e[1], -e[1], e[2], e[3]}};
}

ModelPoint model_to_z(const ModelPoint& x) {
  const auto& q = x.pos;
  const auto& k = x.mom;
  return {{q[0], q[0] - q[1], q[2], q[3]}, {k[0] + k[1], -k[1], k[2], k[3]}};
}

IntMatrix8 model_chart_matrix() {
  IntMatrix8 m{};
  // position block A
  m[0][0] = 1;
  m[1][0] = 1;
  m[1][1] = -1;
  m[2][2] = 1;
  m[3][3] = 1;
  // momentum block A^{-T}
  m[4][4] = 1;
  m[4][5] = 1;
  m[5][5] = -1;
  m[6][6] = 1;
  m[7][7] = 1;
  return m;
}

// The chart is an involution, so the inverse has the same entries; spelled
// out separately so that the round-trip test is not vacuous.
IntMatrix8 model_chart_inverse_matrix() {
  IntMatrix8 m{};
  m[0][0] = 1;       // z1 = x0
  m[1][0] = 1;       // z2 = x0 - x1
  m[1][1] = -1;
  m[2][2] = 1;
  m[3][3] = 1;
  m[4][4] = 1;       // eta1 = xi0 + xi1
  m[4][5] = 1;
  m[5][5] = -1;      // eta2 = -xi1
  m[6][6] = 1;
  m[7][7] = 1;
  return m;
}

IntMatrix8 canonical_form() {
  IntMatrix8 j{};
  for (int i = 0; i < 4; ++i) {
    j[i][i + 4] = 1;
    j[i + 4][i] = -1;
  }
  return j;
}

IntMatrix8 int_multiply(const IntMatrix8& a, const IntMatrix8& b) {
  IntMatrix8 c{};
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix8 int_transpose(const IntMatrix8& a) {
  IntMatrix8 t{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) t[j][i] = a[i][j];
  return t;
}

// ---- boxcar ------------------------------------------------------------------

double ChiBump::operator()(double xi) const {
  const double a = std::abs(xi);
  if (a <= r0) return 1.0;
  if (a >= r1) return 0.0;
  const double t = (a - r0) / (r1 - r0);
  // septic smoothstep, C^3 at both ends
  const double s = t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
  return 1.0 - s;
}

namespace {

const cplx I{0.0, 1.0};

// 4 e^{i x0 xi/2} sin(x0 xi/2) / xi, continuous at xi = 0.
cplx half_angle_form(double x0, double xi) {
  const double h = 0.5 * x0 * xi;
  const double sinc = h == 0.0 ? 1.0 : std::sin(h) / h;
  return 2.0 * x0 * sinc * std::exp(I * h);
}

}  // namespace

cplx boxcar_factor(double x0, double xi) { return half_angle_form(x0, xi); }

BoxcarSplit boxcar_split(double x0, double xi, const ChiBump& chi) {
  const double c = chi(xi);
  BoxcarSplit s{};
  if (c != 1.0) {
    s.term_osc = 2.0 * (1.0 - c) * std::exp(I * (x0 * xi)) / (I * xi);
    s.term_const = -2.0 * (1.0 - c) / (I * xi);
  }
  if (c != 0.0) s.term_smooth = c * half_angle_form(x0, xi);
  return s;
}

// ---- Gauss-Hermite -----------------------------------------------------------

namespace {

GaussHermite build_gauss_hermite(int n) {
  // Newton iteration on the orthonormal Hermite recurrence, asymptotic
  // starting guesses for the largest roots.
  constexpr double pim4 = 0.7511255444649425;  // pi^{-1/4}
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
  }
  std::reverse(x.begin(), x.end());  // ascending
  std::reverse(w.begin(), w.end());
  return {x, w};
}

std::int64_t cube(int n) { return static_cast<std::int64_t>(n) * n * n; }

void check_budget(std::int64_t need, std::int64_t budget) {
  if (need > budget) {
    std::ostringstream msg;
    msg << "quadrature needs " << need << " evaluations, budget is " << budget;
    throw DomainError(ErrorKind::QuadratureBudgetExceeded, msg.str());
  }
}

void check_spec(const KernelSpec& spec) {
  if (!(spec.eps > 0.0)) throw DomainError(ErrorKind::InvalidArgument, "regularisation eps must be > 0");
  if (spec.nodes < 1) throw DomainError(ErrorKind::InvalidArgument, "need at least one quadrature node");
}

// sum_i w_i amp(zeta_i) e^{i k zeta_i} / sqrt(eps), zeta_i = u_i / sqrt(eps)
template <class Amp>
cplx axis_sum(const GaussHermite& gh, double eps, double k, Amp&& amp) {
  const double se = std::sqrt(eps);
  cplx s = 0.0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    const double z = gh.nodes[i] / se;
    s += gh.weights[i] * amp(z) * std::exp(I * (k * z));
  }
  return s / se;
}

cplx unit(double) { return 1.0; }

}  // namespace

const GaussHermite& gauss_hermite(int n) {
  static std::mutex mu;
  static std::map<int, GaussHermite> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_hermite(n)).first;
  return it->second;
}

cplx kernel_eval(const KernelSpec& spec, const Vec4& x, const Vec3& y) {
  check_spec(spec);
  check_budget(cube(spec.nodes), spec.budget);
  const auto& gh = gauss_hermite(spec.nodes);
  const double x0 = x[0];
  const double d1 = x[1] - y[0], d2 = x[2] - y[1], d3 = x[3] - y[2];
  cplx first;
  switch (spec.family) {
    case KernelFamily::E1: first = axis_sum(gh, spec.eps, d1, unit); break;
    case KernelFamily::E2: first = axis_sum(gh, spec.eps, d1 + x0, unit); break;
    case KernelFamily::E3:
      first = axis_sum(gh, spec.eps, d1, [x0](double z) { return boxcar_factor(x0, z); });
      break;
  }
  return first * axis_sum(gh, spec.eps, d2, unit) * axis_sum(gh, spec.eps, d3, unit);
}

cplx e3_term(const KernelSpec& spec, E3Term term, const Vec4& x, const Vec3& y) {
  check_spec(spec);
  check_budget(cube(spec.nodes), spec.budget);
  const auto& gh = gauss_hermite(spec.nodes);
  const double x0 = x[0];
  const double d1 = x[1] - y[0], d2 = x[2] - y[1], d3 = x[3] - y[2];
  const ChiBump chi = spec.chi;
  auto tail = [chi](double z) -> cplx {
    const double c = chi(z);
    return c == 1.0 ? cplx{} : (1.0 - c) / (I * z);
  };
  auto smooth = [chi, x0](double z) -> cplx {
    const double c = chi(z);
    return c == 0.0 ? cplx{} : c * half_angle_form(x0, z);
  };
  cplx first;
  switch (term) {
    case E3Term::Const: first = axis_sum(gh, spec.eps, d1, tail); break;
    case E3Term::Shift: first = axis_sum(gh, spec.eps, d1 + x0, tail); break;
    case E3Term::Smooth: first = axis_sum(gh, spec.eps, d1, smooth); break;
  }
  return first * axis_sum(gh, spec.eps, d2, unit) * axis_sum(gh, spec.eps, d3, unit);
}

// ---- decay probe -------------------------------------------------------------

constexpr double kTrapezoidHalfWidth = 12.0;  // in units of 1/w
constexpr double kTrapezoidStep = 0.1;

DecayReport decay_probe(const KernelSpec& spec, double x0, const Vec3& x_base, const Vec3& y_base,
                        const std::array<double, 6>& direction, const std::vector<double>& radii,
                        const DecayProbeConfig& cfg) {
  check_spec(spec);
  if (radii.size() < 2) throw DomainError(ErrorKind::InvalidArgument, "decay probe needs >= 2 radii");
  if (!(cfg.window > 0.0)) throw DomainError(ErrorKind::InvalidArgument, "window width must be > 0");

  DecayReport rep;
  rep.radii = radii;
  rep.evaluations = cube(cfg.nodes) * static_cast<std::int64_t>(radii.size());
  if (rep.evaluations > cfg.budget) {
    std::ostringstream msg;
    msg << "decay probe needs " << rep.evaluations << " evaluations, budget is " << cfg.budget;
    throw DomainError(ErrorKind::InconclusiveDecay, msg.str());
  }

  const auto& gh = gauss_hermite(cfg.nodes);
  const double w = cfg.window;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  // Per axis: the window transforms combine into e^{-w^2 (zeta - m)^2} times
  // e^{-w^2 (eta_x + eta_y)^2 / 4}, m = (eta_x - eta_y)/2. The Gaussian factor is
  // applied in closed form; the rest is a Gauss-Hermite sum centred at m.
  // Each axis is normalised by its value for a unit delta on the diagonal.
  for (double lam : radii) {
    double mag = 1.0;
    for (int a = 0; a < 3; ++a) {
      const double ex = lam * direction[static_cast<std::size_t>(a)];
      const double ey = lam * direction[static_cast<std::size_t>(a + 3)];
      const double m = 0.5 * (ex - ey);
      double shift = x_base[static_cast<std::size_t>(a)] - y_base[static_cast<std::size_t>(a)];
      if (a == 0 && spec.family == KernelFamily::E2) shift += x0;
      cplx s = 0.0;
      if (a == 0 && spec.family == KernelFamily::E3) {
        // The boxcar amplitude varies on the scale 1/x0 near zeta = 0, far below
        // the Hermite node spacing 1/w. It is entire, so the plain trapezoid rule
        // on a fine grid converges geometrically instead.
        const double half = kTrapezoidHalfWidth / w;
        const int n = static_cast<int>(std::ceil(2.0 * half / kTrapezoidStep));
        const double h = 2.0 * half / n;
        for (int i = 0; i <= n; ++i) {
          const double z = m - half + h * i;
          const double u = w * (z - m);
          s += std::exp(-u * u) * boxcar_factor(x0, z) * std::exp(-spec.eps * z * z) *
               std::exp(I * (shift * z));
        }
        s *= h * w;  // back to the Hermite-sum scale
        rep.evaluations += n + 1;
      } else {
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
          const double z = m + gh.nodes[i] / w;
          s += gh.weights[i] * std::exp(-spec.eps * z * z) * std::exp(I * (shift * z));
        }
      }
      const double axis = std::abs(s) / w * std::exp(-0.25 * w * w * (ex + ey) * (ex + ey));
      double norm = sqrt_pi / w;
      if (a == 0 && spec.family == KernelFamily::E3) norm *= 2.0 * std::abs(x0);
      mag *= axis / norm;
    }
    if (!std::isfinite(mag)) throw DomainError(ErrorKind::InconclusiveDecay, "non-finite probe value");
    rep.magnitude.push_back(mag);
  }
  for (std::size_t j = 0; j + 1 < radii.size(); ++j) {
    const double a = std::max(rep.magnitude[j], 1e-300);
    const double b = std::max(rep.magnitude[j + 1], 1e-300);
    rep.log_slope.push_back(std::log(b / a) / std::log(radii[j + 1] / radii[j]));
  }
  const bool rapid = rep.magnitude.back() < cfg.rapid_magnitude || rep.log_slope.back() < cfg.rapid_slope;
  rep.verdict = rapid ? DecayClass::Rapid : DecayClass::Singular;
  return rep;
}

DecayReport decay_probe(const KernelSpec& spec, double x0, const Vec3& x_base, const Vec3& y_base,
                        const Vec3& conormal_direction, const std::vector<double>& radii,
                        const DecayProbeConfig& cfg) {
  const std::array<double, 6> dir{conormal_direction[0],  conormal_direction[1],  conormal_direction[2],
                                  -conormal_direction[0], -conormal_direction[1], -conormal_direction[2]};
  return decay_probe(spec, x0, x_base, y_base, dir, radii, cfg);
}

}  // namespace kerrml

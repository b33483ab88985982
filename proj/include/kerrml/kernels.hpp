// kerrml - model-coordinate kernels at desk scale
//
// Unit symbols, Gaussian regularisation e^{-eps |zeta|^2}. With those choices
// every kernel has a closed-form or separable structure, which is what the
// tests exploit as oracles.
//
//   E1(x, y') = int e^{i (x'-y').zeta} dzeta
//   E2(x, y') = int e^{i x0 zeta_1 + i (x'-y').zeta} dzeta
//   E3(x, y') = int_{-x0}^{x0} int e^{i (r+x0) zeta_1 / 2 + i (x'-y').zeta} dzeta dr
//             = int B(x0, zeta_1) e^{i (x'-y').zeta} dzeta,   B = boxcar_factor

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace kerrml {

using cplx = std::complex<double>;

// ---- model chart ---------------------------------------------------------

using Vec4 = std::array<double, 4>;
using Vec3 = std::array<double, 3>;

struct ModelPoint {
  Vec4 pos{};  // z or x
  Vec4 mom{};  // eta or xi
};

// x = (z1, z1 - z2, z3, z4), xi = (eta1 + eta2, -eta2, eta3, eta4).
ModelPoint model_to_x(const ModelPoint& z);
ModelPoint model_to_z(const ModelPoint& x);

using IntMatrix8 = std::array<std::array<std::int64_t, 8>, 8>;

// (x; xi) = M (z; eta) as an integer matrix.
IntMatrix8 model_chart_matrix();
IntMatrix8 model_chart_inverse_matrix();
// J = [[0, I], [-I, 0]].
IntMatrix8 canonical_form();
IntMatrix8 int_multiply(const IntMatrix8& a, const IntMatrix8& b);
IntMatrix8 int_transpose(const IntMatrix8& a);

// ---- boxcar ----------------------------------------------------------------

// Polynomial smoothstep bump: 1 on |xi| <= r0, 0 on |xi| >= r1, C^3 in between.
struct ChiBump {
  double r0 = 0.5;
  double r1 = 1.0;
  double operator()(double xi) const;
};

// int_{-x0}^{x0} e^{i (r + x0) xi / 2} dr = 2 (e^{i x0 xi} - 1) / (i xi); 2 x0 at xi = 0.
cplx boxcar_factor(double x0, double xi);

struct BoxcarSplit {
  cplx term_osc;     //  2 (1 - chi) e^{i x0 xi} / (i xi)
  cplx term_const;   // -2 (1 - chi) / (i xi)
  cplx term_smooth;  //  4 e^{i x0 xi / 2} sin(x0 xi / 2) chi / xi
  cplx sum() const { return term_osc + term_const + term_smooth; }
};

BoxcarSplit boxcar_split(double x0, double xi, const ChiBump& chi = {});

// ---- kernels ---------------------------------------------------------------

enum class KernelFamily { E1, E2, E3 };

struct KernelSpec {
  KernelFamily family = KernelFamily::E1;
  double eps = 0.1;
  int nodes = 64;                   // Gauss-Hermite nodes per axis
  std::int64_t budget = 1'000'000;  // tensor-rule evaluations per value
  ChiBump chi;
};

// Gauss-Hermite rule for weight e^{-u^2}, nodes ascending.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermite& gauss_hermite(int n);

// Tensor Gauss-Hermite with zeta = u / sqrt(eps). The amplitude depends on
// zeta_1 only, so the tensor sum is evaluated in factored form; the budget is
// charged for the full nodes^3 tensor rule. Throws QuadratureBudgetExceeded,
// InvalidArgument for eps <= 0.
cplx kernel_eval(const KernelSpec& spec, const Vec4& x, const Vec3& y);

// The three pieces of the E3 reduction, each a regularised E1/E2-type integral:
//   E3 = -2 T_const + 2 T_shift + T_smooth
// T_const : phase phi_1, amplitude (1 - chi)/(i zeta_1)
// T_shift : phase phi_2, amplitude (1 - chi)/(i zeta_1)
// T_smooth: phase phi_1, amplitude d(x0, zeta_1)
enum class E3Term { Const, Shift, Smooth };
cplx e3_term(const KernelSpec& spec, E3Term term, const Vec4& x, const Vec3& y);

// ---- decay probe -----------------------------------------------------------

enum class DecayClass { Singular, Rapid };

struct DecayReport {
  std::vector<double> radii;
  std::vector<double> magnitude;  // |W(lambda eta)| / (value for a delta on the diagonal)
  std::vector<double> log_slope;  // between consecutive radii
  DecayClass verdict = DecayClass::Singular;
  std::int64_t evaluations = 0;
};

struct DecayProbeConfig {
  // Gaussian window width per joint coordinate. Its tails reach a set at distance
  // d with weight e^{-d^2 / (4 w^2)}, flat in lambda, so keep d >~ 10 w.
  double window = 0.05;
  int nodes = 48;
  std::int64_t budget = 4'000'000;
  double rapid_magnitude = 1e-6;
  double rapid_slope = -8.0;
};

// Localised Fourier transform of the kernel as a function of (x', y') in R^6
// around (x'_0, y'_0), in the joint direction (eta_x, eta_y) scaled by each
// radius. A 3-covector zeta' stands for the direction (zeta', -zeta').
// Throws InconclusiveDecay when the budget is exhausted.
DecayReport decay_probe(const KernelSpec& spec, double x0, const Vec3& x_base, const Vec3& y_base,
                        const std::array<double, 6>& direction, const std::vector<double>& radii,
                        const DecayProbeConfig& cfg = {});
DecayReport decay_probe(const KernelSpec& spec, double x0, const Vec3& x_base, const Vec3& y_base,
                        const Vec3& conormal_direction, const std::vector<double>& radii,
                        const DecayProbeConfig& cfg = {});

}  // namespace kerrml

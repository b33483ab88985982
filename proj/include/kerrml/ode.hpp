// kerrml - explicit Runge-Kutta integrators on fixed-size states
//
// dormand_prince: adaptive RK5(4) with FSAL and the usual mixed
// absolute/relative error norm. classic_rk4: fixed-step reference scheme.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace kerrml {

struct StepControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double min_step = 1e-14;
};

enum class OdeStatus { Completed, Stopped, StepUnderflow };

template <std::size_t N>
struct OdeResult {
  OdeStatus status = OdeStatus::Completed;
  double s = 0.0;
  std::array<double, N> y{};
  int accepted = 0;
  int rejected = 0;
};

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

}  // namespace detail

// Integrates y' = rhs(s, y) from s0 to s1 (either direction).
//
// accept(s, y_old, y_new) may veto a step (it is then retried at half size);
// observe(s, y) is called after every accepted step and returns false to stop.
// If grid is non-null, steps are shortened so every grid value inside the span
// is hit exactly.
template <std::size_t N, class Rhs, class Accept, class Observe>
OdeResult<N> dormand_prince(Rhs&& rhs, State<N> y, double s0, double s1, const StepControl& ctl,
                            Accept&& accept, Observe&& observe,
                            const std::vector<double>* grid = nullptr) {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  // 5th minus 4th order weights
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  OdeResult<N> res;
  res.s = s0;
  res.y = y;
  const double span = s1 - s0;
  if (span == 0.0) return res;
  const double dir = span > 0.0 ? 1.0 : -1.0;

  std::size_t grid_idx = 0;
  auto next_grid = [&](double s) {
    if (grid == nullptr) return s1;
    while (grid_idx < grid->size() && dir * ((*grid)[grid_idx] - s) <= 0.0) ++grid_idx;
    if (grid_idx < grid->size() && dir * ((*grid)[grid_idx] - s1) < 0.0) return (*grid)[grid_idx];
    return s1;
  };

  State<N> k1 = rhs(s0, y);

  // Initial step from the scaled derivative size.
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = ctl.abs_tol + ctl.rel_tol * std::abs(y[i]);
    d0 = std::max(d0, std::abs(y[i]) / sc);
    d1 = std::max(d1, std::abs(k1[i]) / sc);
  }
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h = std::clamp(h, ctl.min_step, ctl.max_step);

  double s = s0;
  while (dir * (s1 - s) > 0.0) {
    const double target = next_grid(s);
    double step = std::min(h, std::abs(target - s));
    bool hits_target = step >= std::abs(target - s);
    if (step < ctl.min_step && !hits_target) {
      res.status = OdeStatus::StepUnderflow;
      break;
    }
    const double hs = dir * step;

    const State<N> k2 = rhs(s + hs / 5.0, detail::axpy<N>(y, hs, {{a21, &k1}}));
    const State<N> k3 = rhs(s + 3.0 * hs / 10.0, detail::axpy<N>(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 =
        rhs(s + 4.0 * hs / 5.0, detail::axpy<N>(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 = rhs(s + 8.0 * hs / 9.0,
                            detail::axpy<N>(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 = rhs(
        s + hs, detail::axpy<N>(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State<N> y_new =
        detail::axpy<N>(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double s_new = hits_target ? target : s + hs;
    const State<N> k7 = rhs(s_new, y_new);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      if (!std::isfinite(e) || !std::isfinite(y_new[i])) finite = false;
      err = std::max(err, std::abs(e) / sc);
    }

    if (!finite || err > 1.0 || !accept(s_new, y, y_new)) {
      ++res.rejected;
      const double shrink = (!finite || err > 1.0) && std::isfinite(err)
                                ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                                : 0.5;
      h = step * shrink;
      if (h < ctl.min_step) {
        res.status = OdeStatus::StepUnderflow;
        break;
      }
      continue;
    }

    ++res.accepted;
    s = s_new;
    y = y_new;
    k1 = k7;
    res.s = s;
    res.y = y;
    const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    // A step truncated at a grid point says nothing about the next step size.
    if (!hits_target || step == h) h = std::min(step * grow, ctl.max_step);
    h = std::max(h, ctl.min_step);
    if (!observe(s, y)) {
      res.status = OdeStatus::Stopped;
      break;
    }
  }
  return res;
}

// Fixed-step classical RK4 with `steps` equal steps from s0 to s1.
template <std::size_t N, class Rhs, class Observe>
State<N> classic_rk4(Rhs&& rhs, State<N> y, double s0, double s1, int steps, Observe&& observe) {
  const double h = (s1 - s0) / steps;
  for (int n = 0; n < steps; ++n) {
    const double s = s0 + n * h;
    const State<N> k1 = rhs(s, y);
    const State<N> k2 = rhs(s + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k1}}));
    const State<N> k3 = rhs(s + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k2}}));
    const State<N> k4 = rhs(s + h, detail::axpy<N>(y, h, {{1.0, &k3}}));
    y = detail::axpy<N>(y, h, {{1.0 / 6.0, &k1}, {1.0 / 3.0, &k2}, {1.0 / 3.0, &k3}, {1.0 / 6.0, &k4}});
    observe(n + 1 == steps ? s1 : s0 + (n + 1) * h, y);
  }
  return y;
}

}  // namespace kerrml

// kerrml - derivatives of phase-space scalar fields and the Poisson bracket
//
// A phase-space field is any callable that accepts PhaseVec<T> for T = double
// and for the dual types below, typically a generic lambda:
//
//   auto f = [&](const auto& x) { return expr::principal_symbol(x, params); };
//   Gradient8 g = gradient(f, pp);
//
// Derivatives are exact up to roundoff (forward-mode dual evaluation).

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kerrml/dual.hpp"
#include "kerrml/phase.hpp"

namespace kerrml {

struct Gradient8 {
  std::array<double, 4> d_q{};  // d/dt, d/dr, d/dtheta, d/dphi
  std::array<double, 4> d_p{};  // d/dp_t, d/dp_r, d/dp_theta, d/dp_phi

  double operator[](std::size_t i) const { return i < 4 ? d_q[i] : d_p[i - 4]; }
  PhaseVec<double> vec() const {
    return {d_q[0], d_q[1], d_q[2], d_q[3], d_p[0], d_p[1], d_p[2], d_p[3]};
  }
  double norm() const;  // Euclidean norm of all 8 components
};

using Hessian8 = std::array<std::array<double, 8>, 8>;

// (qdot, pdot) = (d_p f, -d_q f) packed as a PhaseVec.
using Velocity8 = PhaseVec<double>;

using Dual8 = Dual<double, 8>;
using HyperDual8 = Dual<Dual8, 1>;

template <class F>
Gradient8 gradient(F&& f, const PhaseVec<double>& x) {
  PhaseVec<Dual8> xd;
  for (std::size_t i = 0; i < 8; ++i) {
    xd[i].val = x[i];
    xd[i].d[i] = 1.0;
  }
  const Dual8 y = f(xd);
  Gradient8 g;
  for (std::size_t i = 0; i < 4; ++i) {
    g.d_q[i] = y.d[i];
    g.d_p[i] = y.d[i + 4];
  }
  return g;
}

template <class F>
Gradient8 gradient(F&& f, const PhasePoint& pp) {
  return gradient(std::forward<F>(f), pp.vec());
}

// Nested forward mode: one pass per row, each pass yields the full row.
template <class F>
Hessian8 hessian(F&& f, const PhaseVec<double>& x) {
  Hessian8 h{};
  for (std::size_t row = 0; row < 8; ++row) {
    PhaseVec<HyperDual8> xd;
    for (std::size_t i = 0; i < 8; ++i) {
      xd[i].val.val = x[i];
      xd[i].val.d[i] = 1.0;
      if (i == row) xd[i].d[0].val = 1.0;
    }
    const HyperDual8 y = f(xd);
    for (std::size_t col = 0; col < 8; ++col) h[row][col] = y.d[0].d[col];
  }
  return h;
}

template <class F>
Hessian8 hessian(F&& f, const PhasePoint& pp) {
  return hessian(std::forward<F>(f), pp.vec());
}

// {f, g} = sum_mu (d_{p_mu} f d_{q^mu} g - d_{q^mu} f d_{p_mu} g).
template <class F, class G>
double poisson_bracket(F&& f, G&& g, const PhaseVec<double>& x) {
  const Gradient8 df = gradient(std::forward<F>(f), x);
  const Gradient8 dg = gradient(std::forward<G>(g), x);
  double s = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) s += df.d_p[mu] * dg.d_q[mu] - df.d_q[mu] * dg.d_p[mu];
  return s;
}

template <class F, class G>
double poisson_bracket(F&& f, G&& g, const PhasePoint& pp) {
  return poisson_bracket(std::forward<F>(f), std::forward<G>(g), pp.vec());
}

template <class F>
Velocity8 hamiltonian_field(F&& f, const PhaseVec<double>& x) {
  const Gradient8 g = gradient(std::forward<F>(f), x);
  return {g.d_p[0], g.d_p[1], g.d_p[2], g.d_p[3], -g.d_q[0], -g.d_q[1], -g.d_q[2], -g.d_q[3]};
}

// Singular values of a symmetric 8x8 matrix, descending.
std::array<double, 8> singular_values(const Hessian8& h);

// Numerical rank of an m x 8 matrix (rows given) with relative threshold.
int matrix_rank(const std::vector<PhaseVec<double>>& rows, double rel_tol);

}  // namespace kerrml

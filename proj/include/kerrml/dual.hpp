// kerrml - forward-mode dual numbers
//
// Dual<T, N> carries a value and N tangent components. Nesting
// (Dual<Dual<double, 8>, 1>) yields exact second derivatives. Only the
// operations used by the closed-form phase-space expressions are provided.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace kerrml {

template <class T, std::size_t N>
struct Dual {
  T val{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T v, const std::array<T, N>& tangent) : val(v), d(tangent) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T, std::size_t N>
struct is_dual<Dual<T, N>> : std::true_type {};

// Innermost double value of a possibly nested dual.
inline double primal(double x) { return x; }
template <class T, std::size_t N>
double primal(const Dual<T, N>& x) {
  return primal(x.val);
}

template <class T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.val = -a.val;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N>& b) {
  return a += b;
}
template <class T, std::size_t N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N>& b) {
  return a -= b;
}

template <class T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.val = a.val * b.val;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.val + a.val * b.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.val = a.val / b.val;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.val * b.d[i]) / b.val;
  return r;
}

// Mixed operations with plain doubles.
template <class T, std::size_t N>
Dual<T, N> operator+(Dual<T, N> a, double b) {
  a.val += b;
  return a;
}
template <class T, std::size_t N>
Dual<T, N> operator+(double a, Dual<T, N> b) {
  b.val += a;
  return b;
}
template <class T, std::size_t N>
Dual<T, N> operator-(Dual<T, N> a, double b) {
  a.val -= b;
  return a;
}
template <class T, std::size_t N>
Dual<T, N> operator-(double a, const Dual<T, N>& b) {
  Dual<T, N> r = -b;
  r.val += a;
  return r;
}
template <class T, std::size_t N>
Dual<T, N> operator*(Dual<T, N> a, double b) {
  a.val *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
template <class T, std::size_t N>
Dual<T, N> operator*(double a, Dual<T, N> b) {
  return b * a;
}
template <class T, std::size_t N>
Dual<T, N> operator/(Dual<T, N> a, double b) {
  a.val /= b;
  for (auto& x : a.d) x /= b;
  return a;
}
template <class T, std::size_t N>
Dual<T, N> operator/(double a, const Dual<T, N>& b) {
  return Dual<T, N>(a) / b;
}

template <class T, std::size_t N>
Dual<T, N> sin(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  Dual<T, N> r;
  r.val = sin(a.val);
  const T c = cos(a.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = c * a.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> cos(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  Dual<T, N> r;
  r.val = cos(a.val);
  const T s = -sin(a.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  Dual<T, N> r;
  r.val = sqrt(a.val);
  const T k = 0.5 / r.val;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = k * a.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  Dual<T, N> r;
  r.val = exp(a.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = r.val * a.d[i];
  return r;
}

}  // namespace kerrml

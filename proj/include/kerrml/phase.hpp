// kerrml - Kerr parameters and phase-space points in Boyer-Lindquist coordinates

#pragma once

#include <array>
#include <cstddef>

namespace kerrml {

// Extremal Kerr spacetime: spin a = r_s/2 is structural. The only way to get
// a different spin is the explicit sub-extremal control constructor, which
// exists so that the verifier can demonstrate what breaks away from
// extremality.
class KerrParams {
 public:
  // Throws DomainError(InvalidArgument) unless r_s > 0 and c > 0.
  explicit KerrParams(double r_s = 2.0, double c = 1.0);

  // a = spin_factor * r_s / 2 with 0 <= spin_factor <= 1.
  static KerrParams sub_extremal_control(double r_s, double c, double spin_factor);

  double r_s() const { return r_s_; }
  double c() const { return c_; }
  double a() const { return a_; }
  double horizon_radius() const { return 0.5 * r_s_; }
  // Largest root of Delta; equals horizon_radius() when extremal.
  double outer_horizon() const;
  bool extremal() const { return extremal_; }

 private:
  double r_s_;
  double c_;
  double a_;
  bool extremal_ = true;
};

// Canonical coordinate slots of the 8-vector (q, p).
enum Slot : std::size_t {
  kT = 0,
  kR = 1,
  kTheta = 2,
  kPhi = 3,
  kPt = 4,
  kPr = 5,
  kPtheta = 6,
  kPphi = 7,
};

template <class T>
using PhaseVec = std::array<T, 8>;

struct SpacetimePoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct Covector {
  double p_t = 0.0;
  double p_r = 0.0;
  double p_theta = 0.0;
  double p_phi = 0.0;
};

struct PhasePoint {
  SpacetimePoint base;
  Covector mom;

  PhaseVec<double> vec() const {
    return {base.t, base.r, base.theta, base.phi, mom.p_t, mom.p_r, mom.p_theta, mom.p_phi};
  }
  static PhasePoint from_vec(const PhaseVec<double>& v) {
    return {{v[kT], v[kR], v[kTheta], v[kPhi]}, {v[kPt], v[kPr], v[kPtheta], v[kPphi]}};
  }
};

// Covector norm |p_t| + |p_r| + |p_theta| + |p_phi| used by every conic
// tolerance in the library.
double covector_norm(const Covector& p);
inline double covector_norm(const PhasePoint& pp) { return covector_norm(pp.mom); }

PhasePoint scale_momentum(const PhasePoint& pp, double s);

}  // namespace kerrml

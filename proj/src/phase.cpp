#include "kerrml/phase.hpp"

#include <cmath>
#include <sstream>

#include "kerrml/errors.hpp"

namespace kerrml {

KerrParams::KerrParams(double r_s, double c) : r_s_(r_s), c_(c), a_(0.5 * r_s) {
  if (!(r_s > 0.0) || !std::isfinite(r_s) || !(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream msg;
    msg << "KerrParams requires r_s > 0 and c > 0 (got r_s=" << r_s << ", c=" << c << ")";
    throw DomainError(ErrorKind::InvalidArgument, msg.str());
  }
}

KerrParams KerrParams::sub_extremal_control(double r_s, double c, double spin_factor) {
  if (!(spin_factor >= 0.0 && spin_factor <= 1.0))
    throw DomainError(ErrorKind::InvalidArgument, "spin factor must lie in [0, 1]");
  KerrParams p(r_s, c);
  p.a_ = spin_factor * 0.5 * r_s;
  p.extremal_ = spin_factor == 1.0;
  return p;
}

double KerrParams::outer_horizon() const {
  if (extremal_) return horizon_radius();
  return 0.5 * r_s_ + std::sqrt(0.25 * r_s_ * r_s_ - a_ * a_);
}

double covector_norm(const Covector& p) {
  return std::abs(p.p_t) + std::abs(p.p_r) + std::abs(p.p_theta) + std::abs(p.p_phi);
}

PhasePoint scale_momentum(const PhasePoint& pp, double s) {
  PhasePoint out = pp;
  out.mom.p_t *= s;
  out.mom.p_r *= s;
  out.mom.p_theta *= s;
  out.mom.p_phi *= s;
  return out;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RingSingular: return "RingSingular";
    case ErrorKind::HorizonSingular: return "HorizonSingular";
    case ErrorKind::PoleSingular: return "PoleSingular";
    case ErrorKind::DegenerateFactorization: return "DegenerateFactorization";
    case ErrorKind::ZeroCovector: return "ZeroCovector";
    case ErrorKind::NoRealRoot: return "NoRealRoot";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::NotNearSigma2: return "NotNearSigma2";
    case ErrorKind::ConormalDegenerate: return "ConormalDegenerate";
    case ErrorKind::SampleOnConormal: return "SampleOnConormal";
    case ErrorKind::DegenerateFibre: return "DegenerateFibre";
    case ErrorKind::UnclassifiableSample: return "UnclassifiableSample";
    case ErrorKind::ConormalEncounter: return "ConormalEncounter";
    case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorKind::InconclusiveDecay: return "InconclusiveDecay";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace kerrml

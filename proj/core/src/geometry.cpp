#include "sphrk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphrk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ZeroQuaternion: return "ZeroQuaternion";
    case ErrorCode::LogBranchUndefined: return "LogBranchUndefined";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::HemisphereViolation: return "HemisphereViolation";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::DegenerateFront: return "DegenerateFront";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::ReferenceUnavailable: return "ReferenceUnavailable";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr double kZeroNorm = 1e-300;
constexpr double kSmallAngle = 1e-8;
constexpr double kAntipodalMargin = 1e-8;
constexpr double kTangencyTol = 1e-10;
constexpr double kCollinearTol = 1e-14;

}  // namespace

UnitVector3 UnitVector3::normalize(const Vector3& v) {
  const double n = v.norm();
  if (!(n >= kZeroNorm)) {
    throw Error(ErrorCode::ZeroVector, "cannot normalize a vector of norm " + std::to_string(n));
  }
  return UnitVector3(v / n);
}

UnitVector3 UnitVector3::checked(const Vector3& v, double tol) {
  const double n = v.norm();
  if (!(std::abs(n - 1.0) <= tol)) {
    throw Error(ErrorCode::InvalidArgument, "vector is not unit: norm = " + std::to_string(n));
  }
  return UnitVector3(v);
}

TangentVector TangentVector::make(const UnitVector3& base, const Vector3& v, TangencyPolicy policy) {
  const double normal = base.vec().dot(v);
  if (policy == TangencyPolicy::Reject) {
    if (std::abs(normal) > kTangencyTol) {
      throw Error(ErrorCode::NotTangent, "normal component " + std::to_string(normal));
    }
    return {base, v};
  }
  return {base, v - normal * base.vec()};
}

UnitVector3 project(const Vector3& v) { return UnitVector3::normalize(v); }

double geodesic_distance(const UnitVector3& p, const UnitVector3& q) {
  // atan2 form of arccos(clamp(p·q)); keeps full precision near 0 and π.
  const double c = std::clamp(p.dot(q), -1.0, 1.0);
  const double s = p.vec().cross(q.vec()).norm();
  return std::atan2(s, c);
}

UnitVector3 exp_map(const UnitVector3& p, const Vector3& s) {
  const double n = s.norm();
  if (n < kSmallAngle) {
    // sin(n)/n ≈ 1 − n²/6, cos(n) ≈ 1 − n²/2
    const double n2 = n * n;
    return UnitVector3::from_trusted((1.0 - 0.5 * n2) * p.vec() + (1.0 - n2 / 6.0) * s);
  }
  return UnitVector3::from_trusted(std::cos(n) * p.vec() + (std::sin(n) / n) * s);
}

UnitVector3 exp_map(const TangentVector& s) { return exp_map(s.base(), s.vec()); }

UnitVector3 slerp(const UnitVector3& p, const UnitVector3& q, double t) {
  const double omega = geodesic_distance(p, q);
  if (omega > kPi - kAntipodalMargin) {
    throw Error(ErrorCode::AntipodalPoints,
                "slerp endpoints are antipodal (Omega = " + std::to_string(omega) + ")");
  }
  if (omega < kSmallAngle) {
    return project((1.0 - t) * p.vec() + t * q.vec());
  }
  const double s = std::sin(omega);
  return UnitVector3::from_trusted((std::sin((1.0 - t) * omega) / s) * p.vec() +
                                   (std::sin(t * omega) / s) * q.vec());
}

HemisphereTest same_hemisphere(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c) {
  const Vector3 n = (a.vec() - b.vec()).cross(a.vec() - c.vec());
  // φ(x) = n·x takes the same value (b × c)·a at all three points.
  const double phi = n.dot(a.vec());
  HemisphereTest out;
  out.collinear = std::abs(phi) <= kCollinearTol;
  out.same = !out.collinear;
  return out;
}

}  // namespace sphrk

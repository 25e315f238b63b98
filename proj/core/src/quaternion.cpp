#include "sphrk/quaternion.hpp"

#include <cmath>
#include <string>

namespace sphrk::quat {

namespace {

constexpr double kRealAxisTol = 1e-10;
constexpr double kSmallAngle = 1e-8;
constexpr double kAntipodalMargin = 1e-8;

}  // namespace

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

Quaternion operator*(const Quaternion& q1, const Quaternion& q2) {
  return {q1.a * q2.a - q1.u.dot(q2.u), q1.a * q2.u + q2.a * q1.u + q1.u.cross(q2.u)};
}

Quaternion operator*(double s, const Quaternion& q) { return {s * q.a, s * q.u}; }

Quaternion operator+(const Quaternion& q1, const Quaternion& q2) { return {q1.a + q2.a, q1.u + q2.u}; }

Quaternion inverse(const Quaternion& q) {
  const double n2 = q.squared_norm();
  if (!(n2 > 0.0)) throw Error(ErrorCode::ZeroQuaternion, "inverse of the zero quaternion");
  return {q.a / n2, -q.u / n2};
}

Quaternion q_exp(const Quaternion& q) {
  const double n = q.u.norm();
  const double ea = std::exp(q.a);
  const double sinc = n < kSmallAngle ? 1.0 - n * n / 6.0 : std::sin(n) / n;
  return {ea * std::cos(n), ea * sinc * q.u};
}

Quaternion q_log(const Quaternion& q) {
  const double un = q.u.norm();
  if (un < kRealAxisTol) {
    if (q.a > 0.0) return {std::log(q.a), Vector3::Zero()};
    if (un == 0.0) {
      throw Error(ErrorCode::LogBranchUndefined,
                  "log of a non-positive real quaternion (a = " + std::to_string(q.a) + ")");
    }
  }
  const double qn = q.norm();
  // arccos(a/‖q‖) evaluated as atan2 for accuracy near the real axis.
  const double angle = std::atan2(un, q.a);
  return {std::log(qn), (angle / un) * q.u};
}

Quaternion q_pow(const Quaternion& q, double t) {
  if (t == 0.0) return {};
  if (t == 1.0) return q;
  return q_exp(t * q_log(q));
}

Quaternion quat_slerp_full(const UnitVector3& pa, const UnitVector3& pb, double t) {
  const Quaternion qa = Quaternion::pure(pa.vec());
  const Quaternion qb = Quaternion::pure(pb.vec());
  const Quaternion rel = inverse(qa) * qb;
  const double omega = std::atan2(rel.u.norm(), rel.a);
  if (omega > kPi - kAntipodalMargin) {
    throw Error(ErrorCode::AntipodalPoints,
                "quaternion slerp endpoints are antipodal (Omega = " + std::to_string(omega) + ")");
  }
  return qa * q_pow(rel, t);
}

UnitVector3 quat_slerp(const UnitVector3& pa, const UnitVector3& pb, double t) {
  return UnitVector3::from_trusted(quat_slerp_full(pa, pb, t).u);
}

}  // namespace sphrk::quat

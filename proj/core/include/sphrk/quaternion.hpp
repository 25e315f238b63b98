#pragma once

#include "sphrk/geometry.hpp"

namespace sphrk::quat {

/// (scalar a, vector u) = a + b i + c j + d k.
struct Quaternion {
  double a = 1.0;
  Vector3 u = Vector3::Zero();

  Quaternion() = default;
  Quaternion(double scalar, const Vector3& vec) : a(scalar), u(vec) {}

  static Quaternion pure(const Vector3& v) { return {0.0, v}; }

  double norm() const;
  double squared_norm() const { return a * a + u.squaredNorm(); }
};

Quaternion operator*(const Quaternion& q1, const Quaternion& q2);  // Hamilton product
Quaternion operator*(double s, const Quaternion& q);
Quaternion operator+(const Quaternion& q1, const Quaternion& q2);

inline Quaternion hamilton_product(const Quaternion& q1, const Quaternion& q2) { return q1 * q2; }

/// q⁻¹ = (a, −u)/‖q‖². Throws ZeroQuaternion.
Quaternion inverse(const Quaternion& q);

/// exp(a, u) = eᵃ (cos‖u‖, sin‖u‖ u/‖u‖).
Quaternion q_exp(const Quaternion& q);

/// ln(a, u) = (ln‖q‖, angle(q) u/‖u‖). Real quaternions with a > 0 map to
/// (ln a, 0); real quaternions with a ≤ 0 throw LogBranchUndefined.
Quaternion q_log(const Quaternion& q);

/// qᵗ = exp(t ln q).
Quaternion q_pow(const Quaternion& q, double t);

/// SLERP(q_a, q_b, t) = q_a (q_a⁻¹ q_b)ᵗ with points embedded as pure
/// quaternions (0, p). Returns the vector part, which is the interpolated point;
/// the scalar part is zero up to rounding.
UnitVector3 quat_slerp(const UnitVector3& pa, const UnitVector3& pb, double t);

/// Same as quat_slerp but returns the full quaternion (for checking the scalar part).
Quaternion quat_slerp_full(const UnitVector3& pa, const UnitVector3& pb, double t);

}  // namespace sphrk::quat

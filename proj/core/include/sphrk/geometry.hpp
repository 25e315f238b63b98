#pragma once

// Exact primitives on the unit sphere S²: unit and tangent vectors, the radial
// projection, geodesic distance, the exponential map and geodesic SLERP.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "sphrk/errors.hpp"

namespace sphrk {

/// Unconstrained vector of the embedding space R³.
using Vector3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of S². Every constructor either normalizes or rejects, so a value of
/// this type always satisfies |‖v‖ − 1| ≤ 1e-12 (up to accumulated rounding for
/// values produced by exp_map / slerp, which are closed-form on the sphere).
class UnitVector3 {
 public:
  /// e₁; exists so containers of points can be default-constructed.
  UnitVector3() : v_(1.0, 0.0, 0.0) {}

  /// Normalizes `v`. Throws ZeroVector when ‖v‖ < 1e-300.
  static UnitVector3 normalize(const Vector3& v);

  /// Accepts `v` only if it is already unit within `tol`; throws InvalidArgument
  /// otherwise. No rescaling is applied.
  static UnitVector3 checked(const Vector3& v, double tol = 1e-12);

  /// Wraps the output of a closed-form sphere map. Only for values that are
  /// unit by construction up to rounding (exp_map, slerp, rotations).
  static UnitVector3 from_trusted(const Vector3& v) { return UnitVector3(v); }

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vector3& vec() const { return v_; }
  double dot(const UnitVector3& o) const { return v_.dot(o.v_); }

  UnitVector3 operator-() const { return UnitVector3(-v_); }

 private:
  explicit UnitVector3(const Vector3& v) : v_(v) {}
  Vector3 v_;
};

enum class TangencyPolicy { Project, Reject };

/// A velocity in T_p S², always carried with its base point p.
class TangentVector {
 public:
  /// Builds a tangent vector at `base`. With TangencyPolicy::Project the normal
  /// component of `v` is removed; with Reject a normal component larger than
  /// 1e-10 raises NotTangent.
  static TangentVector make(const UnitVector3& base, const Vector3& v,
                            TangencyPolicy policy = TangencyPolicy::Project);

  static TangentVector zero(const UnitVector3& base) { return {base, Vector3::Zero()}; }

  const UnitVector3& base() const { return base_; }
  const Vector3& vec() const { return v_; }
  double norm() const { return v_.norm(); }

  TangentVector scaled(double s) const { return {base_, s * v_}; }

 private:
  TangentVector(const UnitVector3& base, const Vector3& v) : base_(base), v_(v) {}
  UnitVector3 base_;
  Vector3 v_;
};

/// Radial projection 𝒫(v) = v/‖v‖.
UnitVector3 project(const Vector3& v);

/// Great-circle distance in [0, π].
double geodesic_distance(const UnitVector3& p, const UnitVector3& q);

/// exp_p(s) = cos‖s‖ p + sin‖s‖ s/‖s‖. `s` must be tangent at `p`; the caller
/// owns that precondition (use the TangentVector overload to have it enforced).
UnitVector3 exp_map(const UnitVector3& p, const Vector3& s);
UnitVector3 exp_map(const TangentVector& s);

/// Constant-speed point on the minor arc from p (t = 0) to q (t = 1).
/// Throws AntipodalPoints when the arc is not unique (Ω > π − 1e-8).
UnitVector3 slerp(const UnitVector3& p, const UnitVector3& q, double t);

struct HemisphereTest {
  bool same = false;
  bool collinear = false;  // all three on one great circle
};

/// Whether a, b, c lie strictly inside one open hemisphere, tested through the
/// plane through the origin normal to (a − b) × (a − c).
HemisphereTest same_hemisphere(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c);

}  // namespace sphrk

#pragma once

#include <functional>
#include <string>
#include <utility>

#include "sphrk/geometry.hpp"

namespace sphrk {

/// f : S² × [0, ∞) → T S². Wraps any callable returning an embedded-space
/// vector; outputs are projected onto the tangent plane at evaluation time so
/// O(1e-16) normal drift from embedded formulas never reaches the steppers.
class VelocityField {
 public:
  using Fn = std::function<Vector3(const UnitVector3&, double)>;

  VelocityField() = default;
  VelocityField(Fn fn, bool autonomous, std::string name = {})
      : fn_(std::move(fn)), autonomous_(autonomous), name_(std::move(name)) {}

  explicit operator bool() const { return static_cast<bool>(fn_); }

  TangentVector operator()(const UnitVector3& p, double t) const {
    return TangentVector::make(p, fn_(p, t));
  }

  /// Tangent vector at p as a plain R³ vector.
  Vector3 tangent(const UnitVector3& p, double t) const;

  /// Off-sphere extension f(x, t) = f(𝒫(x), t) used by the embedded RK baselines.
  Vector3 extended(const Vector3& x, double t) const { return tangent(project(x), t); }

  bool autonomous() const { return autonomous_; }
  const std::string& name() const { return name_; }

 private:
  Fn fn_;
  bool autonomous_ = false;
  std::string name_;
};

}  // namespace sphrk

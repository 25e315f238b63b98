#include "sphrk/velocity_field.hpp"

namespace sphrk {

Vector3 VelocityField::tangent(const UnitVector3& p, double t) const {
  if (!fn_) throw Error(ErrorCode::InvalidArgument, "evaluating an empty VelocityField");
  const Vector3 v = fn_(p, t);
  return v - p.vec().dot(v) * p.vec();
}

}  // namespace sphrk

#include "sphrk/problems.hpp"

#include <cmath>
#include <string>

namespace sphrk {

const VortexConfig& vortex4_config() {
  static const VortexConfig cfg{
      {project(Vector3(1, -1, 1)), project(Vector3(1, -1, -1)), project(Vector3(-2, 1, 0)),
       project(Vector3(-1, -1, 0))},
      UnitVector3::normalize(Vector3(1, 0, 0)),
      2.0,
  };
  return cfg;
}

Vector3 vortex4_value(const UnitVector3& p) {
  Vector3 sum = Vector3::Zero();
  for (const UnitVector3& c : vortex4_config().centers) {
    const double gap = 1.0 - c.dot(p);
    if (gap < 1e-12) {
      throw Error(ErrorCode::NearPole, "evaluation point within 1e-12 of a vortex centre (1 - x.p = " +
                                           std::to_string(gap) + ")");
    }
    sum += c.vec().cross(p.vec()) / (2.0 * gap);
  }
  return sum;
}

VelocityField vortex4_field() {
  return VelocityField([](const UnitVector3& p, double) { return vortex4_value(p); }, true, "vortex4");
}

VelocityField rigid_rotation_field(const Vector3& omega) {
  return VelocityField([omega](const UnitVector3& p, double) -> Vector3 { return omega.cross(p.vec()); }, true,
                       "rotation");
}

UnitVector3 rigid_rotation_exact(const Vector3& omega, const UnitVector3& p0, double t) {
  const double w = omega.norm();
  if (w == 0.0) return p0;
  const Eigen::AngleAxisd rot(w * t, omega / w);
  return UnitVector3::from_trusted(rot * p0.vec());
}

VelocityField projected_linear_field(const Matrix3& M) {
  return VelocityField(
      [M](const UnitVector3& q, double) -> Vector3 {
        const Vector3 mq = M * q.vec();
        return mq - q.vec().dot(mq) * q.vec();
      },
      true, "projected-linear");
}

Matrix3 projected_linear_jacobian(const Matrix3& M, const Vector3& q) {
  const double r = q.dot(M * q);
  return M - r * Matrix3::Identity() - q * (q.transpose() * (M + M.transpose()));
}

StabilitySigma stability_sigma(const Matrix3& M) {
  StabilitySigma out;
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      out.table(i, j) = M(j, j) - M(i, i);
      if (first || out.table(i, j) < out.sigma) out.sigma = out.table(i, j);
      first = false;
    }
  }
  return out;
}

double stability_interval(int order) {
  if (order == 1 || order == 2) return -2.0;
  if (order != 3) throw Error(ErrorCode::InvalidArgument, "stability interval known for orders 1-3");
  auto poly = [](double m) { return ((m / 6.0 + 0.5) * m + 1.0) * m + 2.0; };
  double lo = -3.0, hi = -2.0;  // poly(−3) < 0 < poly(−2)
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (poly(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(poly(lo)) < std::abs(poly(hi)) ? lo : hi;
}

}  // namespace sphrk

#include <cmath>
#include <string>

#include "sphrk/integrators.hpp"

namespace sphrk {

namespace {

// log_q(p): tangent vector at q pointing along the geodesic to p, length d(q, p).
Vector3 log_map(const UnitVector3& q, const UnitVector3& p) {
  const double theta = geodesic_distance(q, p);
  const Vector3 dir = p.vec() - q.dot(p) * q.vec();
  const double n = dir.norm();
  if (n < 1e-300) return Vector3::Zero();
  return (theta / n) * dir;
}

Vector3 descent_direction(const WeightedPoints& wp, const UnitVector3& q) {
  Vector3 g = Vector3::Zero();
  for (const WeightedPoint& x : wp.items()) {
    if (x.w > 0.0) g += x.w * log_map(q, x.p);
  }
  return g;
}

}  // namespace

WeightedPoints::WeightedPoints(std::vector<WeightedPoint> pts) : pts_(std::move(pts)) {
  if (pts_.empty()) throw Error(ErrorCode::InvalidArgument, "no points to combine");
  double sum = 0.0;
  for (const WeightedPoint& x : pts_) {
    if (!(x.w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative weight " + std::to_string(x.w));
    sum += x.w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "weights sum to " + std::to_string(sum) + ", not 1");
  }
}

UnitVector3 WeightedPoints::projected_average() const {
  Vector3 m = Vector3::Zero();
  for (const WeightedPoint& x : pts_) m += x.w * x.p.vec();
  return project(m);
}

double frechet_objective(const WeightedPoints& wp, const UnitVector3& q) {
  double s = 0.0;
  for (const WeightedPoint& x : wp.items()) {
    const double d = geodesic_distance(q, x.p);
    s += x.w * d * d;
  }
  return s;
}

double frechet_gradient_norm(const WeightedPoints& wp, const UnitVector3& q) {
  return descent_direction(wp, q).norm();
}

UnitVector3 frechet_mean(const WeightedPoints& wp, FrechetOptions opts) {
  Vector3 m = Vector3::Zero();
  for (const WeightedPoint& x : wp.items()) m += x.w * x.p.vec();
  if (m.norm() < 1e-12) {
    throw Error(ErrorCode::HemisphereViolation, "weighted average vanishes; points are not in one hemisphere");
  }
  UnitVector3 q = project(m);
  for (const WeightedPoint& x : wp.items()) {
    if (x.w > 0.0 && !(q.dot(x.p) > 0.0)) {
      throw Error(ErrorCode::HemisphereViolation, "a weighted point lies outside the open hemisphere of the mean");
    }
  }
  double g = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vector3 step = descent_direction(wp, q);
    g = step.norm();
    if (g <= opts.tol) return q;
    q = exp_map(q, step);
  }
  throw Error(ErrorCode::NoConvergence, "Frechet mean gradient " + std::to_string(g) + " after " +
                                            std::to_string(opts.max_iter) + " iterations");
}

}  // namespace sphrk

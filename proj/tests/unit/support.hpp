#pragma once

#include <cmath>
#include <random>

#include <sphrk/geometry.hpp>

namespace testsupport {

inline sphrk::UnitVector3 random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return sphrk::project(sphrk::Vector3(n(rng), n(rng), n(rng)));
}

inline sphrk::Vector3 random_tangent(std::mt19937_64& rng, const sphrk::UnitVector3& p, double len) {
  std::normal_distribution<double> n(0.0, 1.0);
  sphrk::Vector3 v(n(rng), n(rng), n(rng));
  v -= v.dot(p.vec()) * p.vec();
  return len * v.normalized();
}

inline double dist(const sphrk::Vector3& a, const sphrk::Vector3& b) { return (a - b).norm(); }
inline double dist(const sphrk::UnitVector3& a, const sphrk::UnitVector3& b) { return (a.vec() - b.vec()).norm(); }

// least-squares slope of log(err) against log(h)
template <class H, class E>
double loglog_slope(const H& hs, const E& errs) {
  const std::size_t n = hs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsupport

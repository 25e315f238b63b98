#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <sphrk/eikonal.hpp>

#include "support.hpp"

using namespace sphrk;
using testsupport::dist;

namespace {

const UnitVector3 xs = UnitVector3::normalize({1, 0, 0});

Vector3 fd_gradient(const VelocityModel& m, const Vector3& x, double eps = 1e-6) {
  Vector3 g;
  for (int i = 0; i < 3; ++i) {
    const Vector3 e = Vector3::Unit(i);
    g[i] = (m.value(x + eps * e) - m.value(x - eps * e)) / (2 * eps);
  }
  return g;
}

Wavefront circle_front(double r, int n) {
  Wavefront w;
  for (int j = 0; j < n; ++j) {
    const double a = 2 * kPi * j / n;
    RayState s;
    s.x = std::cos(r) * xs.vec() + std::sin(r) * Vector3(0, std::cos(a), std::sin(a));
    w.rays.push_back(s);
  }
  return w;
}

}  // namespace

TEST_SUITE("eikonal") {

TEST_CASE("model names") {
  CHECK(VelocityModel::from_string("const")->kind() == VelocityModel::Kind::Constant);
  CHECK(VelocityModel::from_string("expz2")->kind() == VelocityModel::Kind::ExpZ2);
  CHECK(VelocityModel::from_string("y31")->kind() == VelocityModel::Kind::Y31);
  CHECK_FALSE(VelocityModel::from_string("linear").has_value());
}

TEST_CASE("ray equations for unit speed") {
  const VelocityModel one = VelocityModel::constant(1.0);
  RayState s;
  s.x = Vector3(1, 0, 0);
  s.k = Vector3(0, 0.6, 0.8);
  const RayRhs r = ray_rhs(one, s);
  CHECK(dist(r.dx, s.k) == 0.0);
  CHECK(r.dk.norm() == 0.0);
  CHECK(r.du == 1.0);
  CHECK(hamiltonian(one, s.x, s.k) == doctest::Approx(0.0));
}

TEST_CASE("initial rays satisfy the eikonal constraint") {
  for (const char* name : {"const", "expz2", "y31"}) {
    const VelocityModel m = *VelocityModel::from_string(name);
    for (const UnitVector3& src : {xs, project({0.3, -0.4, 0.8})}) {
      for (const RayState& r : initial_rays(m, src, 16)) {
        CHECK(std::abs(hamiltonian(m, r.x, r.k)) < 1e-14);
        CHECK(std::abs(r.k.dot(src.vec())) < 1e-15);
        CHECK(dist(r.x, src.vec()) == 0.0);
      }
    }
  }
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(41);
  const VelocityModel e = VelocityModel::exp_z2(), y = VelocityModel::y31_harmonic();
  for (int n = 0; n < 200; ++n) {
    const Vector3 x = testsupport::random_point(rng).vec();
    CHECK(dist(e.gradient(x), fd_gradient(e, x)) < 1e-6);
    CHECK(dist(y.gradient(x), fd_gradient(y, x)) < 1e-6);
  }
  CHECK(dist(e.gradient(Vector3(0, 0.6, 0.8)), Vector3(0, 0, -1.6 * std::exp(-0.64))) < 1e-16);
  CHECK(VelocityModel::constant(2.0).gradient(Vector3(0, 1, 0)).norm() == 0.0);
}

TEST_CASE("spherical harmonic") {
  CHECK(y31(0.0, 1.3) == 0.0);
  CHECK(std::abs(y31(1.1, kPi / 2)) < 1e-16);
  double lo = 1e9;
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j < 800; ++j) lo = std::min(lo, 1.0 + y31(kPi * i / 400, 2 * kPi * j / 800));
  }
  CHECK(lo > 0.0);
  // value() reads θ, φ off the direction of x
  const double th = 0.9, ph = 2.2;
  const Vector3 x(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  CHECK(VelocityModel::y31_harmonic().value(3.0 * x) == doctest::Approx(1.0 + y31(th, ph)).epsilon(1e-14));
}

TEST_CASE("single ray on a great circle") {
  const VelocityModel one = VelocityModel::constant(1.0);
  for (int order : {1, 2, 3}) {
    std::vector<double> hs, errs;
    for (int n : {16, 32, 64}) {
      const double h = (kPi / 2) / n;
      RayState s = initial_rays(one, xs, 4)[1];
      for (int i = 0; i < n; ++i) s = coupled_step(order, one, s, h);
      CHECK(s.u == doctest::Approx(n * h).epsilon(1e-14));
      CHECK(std::abs(s.x.norm() - 1.0) <= 1e-12);
      hs.push_back(h);
      errs.push_back(std::abs(geodesic_distance(project(s.x), xs) - kPi / 2));
    }
    CAPTURE(order);
    CHECK(testsupport::loglog_slope(hs, errs) == doctest::Approx(order).epsilon(0.3 / order));
  }
}

TEST_CASE("step guard in sphere mode") {
  const VelocityModel one = VelocityModel::constant(1.0);
  const RayState s = initial_rays(one, xs, 4)[0];
  try {
    coupled_step(3, one, s, 2.0);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
  CHECK_NOTHROW(coupled_step(3, one, s, 2.0, PositionMode::Cartesian));
  CHECK_THROWS_AS(coupled_step(4, one, s, 0.1), Error);
}

TEST_CASE("trace errors carry the ray index") {
  TraceOptions opts;
  opts.h = 2.0;
  try {
    trace_wavefront(VelocityModel::constant(1.0), xs, 8, opts, {4.0});
    FAIL("expected StepError");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
    CHECK(e.ray() == 0);
    CHECK(e.step() == 0);
  }
}

TEST_CASE("unit speed wavefront is the circle of radius t") {
  TraceOptions opts;
  opts.h = kPi / 200;
  const auto fronts = trace_wavefront(VelocityModel::constant(1.0), xs, 64, opts, {0.0, 0.5, kPi / 2});
  REQUIRE(fronts.size() == 3);
  CHECK(fronts[0].t == 0.0);
  for (const Wavefront& w : fronts) {
    for (const RayState& r : w.rays) {
      CHECK(std::abs(geodesic_distance(project(r.x), xs) - w.t) < 1e-5);
      CHECK(r.u == doctest::Approx(w.t).epsilon(1e-12));
    }
  }
  CHECK(max_norm_deviation(fronts) <= 1e-12);
}

TEST_CASE("wavefront error measure") {
  CHECK(wavefront_E2(circle_front(kPi / 2, 256), xs, kPi / 2) < 1e-14);
  const double eps = 1e-3, r = kPi / 2 + eps;
  const Wavefront w = circle_front(r, 512);
  double len = 0.0;
  for (std::size_t j = 0; j < w.rays.size(); ++j) {
    len += geodesic_distance(project(w.rays[j].x), project(w.rays[(j + 1) % w.rays.size()].x));
  }
  CHECK(wavefront_E2(w, xs, kPi / 2) == doctest::Approx(eps * std::sqrt(len)).epsilon(1e-9));
  CHECK(len == doctest::Approx(2 * kPi * std::sin(r)).epsilon(1e-4));

  try {
    wavefront_E2(circle_front(0.0, 16), xs, 0.0);
    FAIL("expected DegenerateFront");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFront);
  }
}

TEST_CASE("sphere-stepped rays stay on the sphere, Cartesian ones do not") {
  const VelocityModel m = VelocityModel::exp_z2();
  const double dt = kPi / 5;
  TraceOptions opts;
  opts.h = dt;
  const std::vector<double> snaps = {dt, 3 * dt, 5 * dt};
  CHECK(max_norm_deviation(trace_wavefront(m, xs, 128, opts, snaps)) <= 1e-12);
  opts.mode = PositionMode::Projected;
  CHECK(max_norm_deviation(trace_wavefront(m, xs, 128, opts, snaps)) <= 1e-15);
  opts.mode = PositionMode::Cartesian;
  CHECK(max_norm_deviation(trace_wavefront(m, xs, 128, opts, snaps)) > 1e-3);
}

TEST_CASE("csv layout") {
  TraceOptions opts;
  opts.h = 0.1;
  std::ostringstream os;
  write_wavefront_csv(os, trace_wavefront(VelocityModel::constant(1.0), xs, 4, opts, {0.2}));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,ray_index,x,y,z,kx,ky,kz,u");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);
}

}

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <sphrk/integrators.hpp>
#include <sphrk/problems.hpp>

#include "support.hpp"

using namespace sphrk;
using testsupport::dist;

namespace {

constexpr std::array<SchemeId, 6> kSchemes = {SchemeId::SFE,     SchemeId::STVDRK2,  SchemeId::STVDRK3,
                                              SchemeId::STVDRK4, SchemeId::SSSPRK54, SchemeId::SSSPRK104};

const UnitVector3 e1 = UnitVector3::normalize({1, 0, 0});

VelocityField zero_field() {
  return VelocityField([](const UnitVector3&, double) { return Vector3::Zero(); }, true, "zero");
}

UnitVector3 fine_reference(const VelocityField& f, const UnitVector3& p, double h) {
  return integrate_endpoint(SchemeId::STVDRK3, f, p, 0.0, h, h / 1000.0);
}

double local_order(SchemeId id) {
  const VelocityField f = vortex4_field();
  std::vector<double> hs, errs;
  for (int k = 0; k <= 4; ++k) {
    const double h = 0.1 / (1 << k);
    hs.push_back(h);
    errs.push_back(dist(step(id, f, e1, 0.0, h), fine_reference(f, e1, h)));
  }
  return testsupport::loglog_slope(hs, errs);
}

}  // namespace

TEST_SUITE("integrators") {

TEST_CASE("zero field leaves the point fixed") {
  std::mt19937_64 rng(1);
  const UnitVector3 p = testsupport::random_point(rng);
  for (SchemeId id : kSchemes) {
    CAPTURE(to_string(id));
    CHECK(dist(step(id, zero_field(), p, 0.0, 0.1), p) < 1e-15);
  }
}

TEST_CASE("scheme names round trip") {
  for (SchemeId id : kSchemes) CHECK(scheme_from_string(to_string(id)) == id);
  CHECK_FALSE(scheme_from_string("RK45").has_value());
}

TEST_CASE("SFE on a rigid rotation follows the great circle") {
  // ω × e3 = −e2 for ω = e1
  const VelocityField f = rigid_rotation_field({1, 0, 0});
  const double h = 0.1;
  CHECK(dist(sfe_step(f, project({0, 0, 1}), 0.0, h).vec(), {0, -std::sin(h), std::cos(h)}) < 1e-16);
}

TEST_CASE("rotation about an axis orthogonal to the point is reproduced exactly") {
  const Vector3 omega(0.3, -0.4, 1.2);
  const VelocityField f = rigid_rotation_field(omega);
  std::mt19937_64 rng(8);
  for (double frac : {0.05, 0.3, 0.6, 0.9}) {
    const double h = frac * (kPi / 2) / omega.norm();
    for (int n = 0; n < 20; ++n) {
      // points on the equator of ω move along a great circle
      const UnitVector3 p = project(omega.cross(testsupport::random_point(rng).vec()));
      const UnitVector3 exact = rigid_rotation_exact(omega, p, h);
      CHECK(dist(sfe_step(f, p, 0.0, h), exact) <= 1e-12);
      CHECK(dist(stvdrk2_step(f, p, 0.0, h), exact) <= 1e-12);
      CHECK(dist(stvdrk3_step(f, p, 0.0, h), exact) <= 1e-12);
      // negative-coefficient stages of the fourth-order schemes spread the
      // points along the circle; past a certain h they are more than π apart
      // and SLERP takes the other arc
      if (frac > 0.3) continue;
      CHECK(dist(stvdrk4_step(f, p, 0.0, h), exact) <= 1e-12);
      CHECK(dist(ssprk104_step(f, p, 0.0, h), exact) <= 1e-12);
      // the 15-digit coefficients of SSSPRK(5,4) only sum to one within ~1e-11
      CHECK(dist(ssprk54_step(f, p, 0.0, h), exact) <= 1e-9);
    }
  }
}

TEST_CASE("SFE matches an extended-precision evaluation of the vortex field") {
  const long double s5 = std::sqrt(5.0L), s3 = std::sqrt(3.0L), s2 = std::sqrt(2.0L);
  const long double c[4][3] = {{1 / s3, -1 / s3, 1 / s3}, {1 / s3, -1 / s3, -1 / s3}, {-2 / s5, 1 / s5, 0},
                               {-1 / s2, -1 / s2, 0}};
  const long double p[3] = {1, 0, 0};
  long double v[3] = {0, 0, 0};
  for (const auto& x : c) {
    const long double cross[3] = {x[1] * p[2] - x[2] * p[1], x[2] * p[0] - x[0] * p[2], x[0] * p[1] - x[1] * p[0]};
    const long double d = 2 * (1 - (x[0] * p[0] + x[1] * p[1] + x[2] * p[2]));
    for (int i = 0; i < 3; ++i) v[i] += cross[i] / d;
  }
  const long double h = 0.01L;
  const long double n = h * std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  Vector3 expected;
  for (int i = 0; i < 3; ++i) expected[i] = static_cast<double>(std::cos(n) * p[i] + std::sin(n) * h * v[i] / n);
  CHECK(dist(sfe_step(vortex4_field(), e1, 0.0, 0.01).vec(), expected) < 1e-15);
}

TEST_CASE("local orders on the vortex flow") {
  CHECK(local_order(SchemeId::SFE) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(local_order(SchemeId::STVDRK2) == doctest::Approx(3.0).epsilon(0.1));
  CHECK(local_order(SchemeId::STVDRK3) == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("forward Euler and spherical forward Euler differ at second order") {
  const VelocityField f = vortex4_field();
  std::vector<double> hs, errs;
  for (int k = 0; k <= 5; ++k) {
    const double h = 0.1 / (1 << k);
    hs.push_back(h);
    errs.push_back(dist(e1.vec() + h * f.tangent(e1, 0.0), sfe_step(f, e1, 0.0, h).vec()));
  }
  CHECK(testsupport::loglog_slope(hs, errs) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("step size guard") {
  const VelocityField f = rigid_rotation_field({0, 0, 1});
  auto code_of = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([&] { sfe_step(f, e1, 0.0, 3.2); }) == ErrorCode::StepTooLarge);
  CHECK_NOTHROW(sfe_step(f, e1, 0.0, 3.0));
  CHECK(code_of([&] { stvdrk2_step(f, e1, 0.0, 1.6); }) == ErrorCode::StepTooLarge);
  CHECK(code_of([&] { stvdrk3_step(f, e1, 0.0, 1.6); }) == ErrorCode::StepTooLarge);
  CHECK(code_of([&] { stvdrk4_step(f, e1, 0.0, 1.6); }) == ErrorCode::StepTooLarge);
}

TEST_CASE("progressive slerp combination") {
  const UnitVector3 a = project({1, 0, 0}), b = project({0, 1, 0}), c = project({0, 0, 1});
  const std::array<UnitVector3, 1> one = {b};
  const std::array<double, 1> w1 = {1.0};
  CHECK(dist(progressive_slerp_combine(one, w1), b) == 0.0);

  const std::array<UnitVector3, 2> two = {a, b};
  const std::array<double, 2> half = {0.5, 0.5};
  CHECK(dist(progressive_slerp_combine(two, half), slerp(a, b, 0.5)) < 1e-16);

  const std::array<UnitVector3, 3> fwd = {a, b, c}, rev = {c, b, a};
  const std::array<double, 3> wf = {0.25, 0.25, 0.5}, wr = {0.5, 0.25, 0.25};
  CHECK(dist(progressive_slerp_combine(fwd, wf), progressive_slerp_combine(rev, wr)) > 1e-6);

  // zero weights are skipped entirely, even for an antipodal point
  const std::array<UnitVector3, 3> with_anti = {a, -a, b};
  const std::array<double, 3> skip = {0.5, 0.0, 0.5};
  CHECK(dist(progressive_slerp_combine(with_anti, skip), slerp(a, b, 0.5)) < 1e-16);

  const std::array<double, 2> bad = {0.7, 0.7};
  CHECK_THROWS_AS(progressive_slerp_combine(two, bad), Error);
}

TEST_CASE("the two fold orders of the fourth-order q3 differ") {
  const VelocityField f = vortex4_field();
  const double h = 0.1;
  auto E = [&](const UnitVector3& q, double c) { return exp_map(q, c * h * f.tangent(q, 0.0)); };
  const UnitVector3 q1 = E(e1, 0.5);
  const UnitVector3 q2 = slerp(E(e1, -1.065687335761845), E(q1, 1.068486941019387), 0.594375);
  const UnitVector3 q30 = E(e1, -0.947054029524533), q31 = E(q1, -1.065495848810696),
                    q32 = E(q2, 1.066666666666667);
  const UnitVector3 q3 = slerp(slerp(q30, q31, 0.917544541224197), q32, 0.738093750000000);
  const UnitVector3 q3r = slerp(slerp(q32, q31, 0.24031065 / (0.24031065 + 0.73809375)), q30, 0.0215956);
  CHECK(dist(q3, q3r) > 1e-8);
}

TEST_CASE("Frechet mean examples") {
  const UnitVector3 a = project({1, 0, 0}), b = project({0, 1, 0}), c = project({0, 0, 1});
  CHECK(dist(frechet_mean(WeightedPoints({{1.0, b}})), b) < 1e-15);
  for (double t : {0.1, 0.5, 0.8}) {
    CHECK(dist(frechet_mean(WeightedPoints({{1 - t, a}, {t, b}})), slerp(a, b, t)) < 1e-12);
  }
  const WeightedPoints three({{1.0 / 3, a}, {1.0 / 3, b}, {1.0 - 2.0 / 3, c}});
  const UnitVector3 m = frechet_mean(three);
  CHECK(dist(m.vec(), Vector3(1, 1, 1) / std::sqrt(3.0)) < 1e-12);
  CHECK(frechet_gradient_norm(three, m) <= 1e-12);
}

TEST_CASE("Frechet mean improves on the projected average") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const UnitVector3 centre = testsupport::random_point(rng);
    std::vector<WeightedPoint> pts;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double w = u(rng);
      pts.push_back({w, exp_map(centre, testsupport::random_tangent(rng, centre, 0.75 * u(rng)))});
      sum += w;
    }
    for (WeightedPoint& p : pts) p.w /= sum;
    const WeightedPoints wp(pts);
    const UnitVector3 m = frechet_mean(wp);
    CHECK(frechet_gradient_norm(wp, m) <= 1e-13);
    CHECK(frechet_objective(wp, m) <= frechet_objective(wp, wp.projected_average()) + 1e-15);
  }
}

TEST_CASE("Frechet mean failures") {
  const UnitVector3 a = project({1, 0, 0}), b = project({0, 1, 0});
  try {
    frechet_mean(WeightedPoints({{0.5, a}, {0.5, -a}}));
    FAIL("expected HemisphereViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HemisphereViolation);
  }
  try {
    frechet_mean(WeightedPoints({{0.3, a}, {0.3, b}, {0.4, project({0, 0, 1})}}), {1e-13, 1});
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
  CHECK_THROWS_AS(WeightedPoints({{0.6, a}, {0.6, b}}), Error);
  CHECK_THROWS_AS(WeightedPoints({{1.5, a}, {-0.5, b}}), Error);
  CHECK_THROWS_AS(WeightedPoints({}), Error);
}

TEST_CASE("Frechet combination weights of the fourth-order q3 match the fold") {
  const double t1 = 0.917544541224197, t2 = 0.738093750000000;
  CHECK((1 - t1) * (1 - t2) == doctest::Approx(0.0215956).epsilon(1e-5));
  CHECK(t1 * (1 - t2) == doctest::Approx(0.24031065).epsilon(1e-6));
}

TEST_CASE("generic SSP step reproduces the hand-written schemes") {
  const VelocityField f = vortex4_field();
  std::mt19937_64 rng(19);
  for (int n = 0; n < 20; ++n) {
    UnitVector3 p = testsupport::random_point(rng);
    // keep clear of the vortex centres
    try {
      vortex4_value(p);
    } catch (const Error&) {
      continue;
    }
    const double h = 0.01;
    CHECK(dist(ssp_step(SspTableau::tvdrk2(), f, p, 0.0, h), stvdrk2_step(f, p, 0.0, h)) <= 1e-14);
    CHECK(dist(ssp_step(SspTableau::tvdrk3(), f, p, 0.0, h), stvdrk3_step(f, p, 0.0, h)) <= 1e-14);
    CHECK(dist(ssp_step(SspTableau::ssprk104(), f, p, 0.0, h), ssprk104_step(f, p, 0.0, h)) <= 1e-14);
  }
}

TEST_CASE("tableau validation") {
  CHECK_THROWS_AS(SspTableau({{0.5}}, {{0.5}}), Error);
  CHECK_THROWS_AS(SspTableau({{1.0}, {1.2, -0.2}}, {{1.0}, {0.0, 0.0}}), Error);
  CHECK_THROWS_AS(SspTableau({{1.0}, {1.0, 0.0}}, {{1.0}, {0.0, 0.5}}), Error);
  CHECK_NOTHROW(SspTableau({{1.0}, {0.5, 0.5}}, {{1.0}, {0.0, 0.5}}));
  CHECK(SspTableau::ssprk104().stages() == 10);
}

TEST_CASE("step cost") {
  CHECK(step_cost(SchemeId::SFE).exp_maps == 1);
  CHECK(step_cost(SchemeId::SFE).slerps == 0);
  CHECK(step_cost(SchemeId::STVDRK2).exp_maps == 2);
  CHECK(step_cost(SchemeId::STVDRK2).slerps == 1);
  CHECK(step_cost(SchemeId::STVDRK3).exp_maps == 3);
  CHECK(step_cost(SchemeId::STVDRK3).slerps == 2);
  CHECK(step_cost(SchemeId::STVDRK4).slerps == 6);
  CHECK(step_cost(SchemeId::SSSPRK54).slerps == 6);
  CHECK(step_cost(SchemeId::SSSPRK104).exp_maps == 10);
  CHECK(step_cost(SchemeId::SSSPRK104).slerps == 3);
}

TEST_CASE("integrate on a uniform grid") {
  const VelocityField f = rigid_rotation_field({0, 0, 1});
  const Trajectory none = integrate(SchemeId::STVDRK3, f, e1, 0.0, 0.0, 0.1);
  REQUIRE(none.size() == 1);
  CHECK(dist(none[0].state, e1) == 0.0);

  const Trajectory rev = integrate(SchemeId::STVDRK3, f, e1, 0.0, 2 * kPi, kPi / 100);
  CHECK(rev.size() == 201);
  CHECK(dist(rev.back().state, e1) <= 1e-10);
  for (const auto& s : rev) CHECK(std::abs(s.state.vec().norm() - 1.0) <= 1e-12);

  // partial last step lands on t_final
  const Trajectory part = integrate(SchemeId::STVDRK2, f, e1, 0.0, 0.25, 0.1);
  CHECK(part.size() == 4);
  CHECK(part.back().t == doctest::Approx(0.25));
  CHECK(dist(part.back().state, rigid_rotation_exact({0, 0, 1}, e1, 0.25)) < 1e-14);
}

TEST_CASE("integrate reports the failing step") {
  const VelocityField f(
      [](const UnitVector3& p, double t) -> Vector3 { return (t > 0.45 ? 100.0 : 0.1) * Vector3(0, 0, 1).cross(p.vec()); },
      false, "switching");
  try {
    integrate(SchemeId::STVDRK3, f, e1, 0.0, 1.0, 0.1);
    FAIL("expected StepError");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
    CHECK(e.step() == 4);
  }
}

TEST_CASE("vortex endpoint against a fine reference") {
  const VelocityField f = vortex4_field();
  const UnitVector3 coarse = integrate_endpoint(SchemeId::STVDRK3, f, e1, 0.0, 2.0, 1e-3);
  const UnitVector3 fine = integrate_endpoint(SchemeId::STVDRK3, f, e1, 0.0, 2.0, 1e-5);
  CHECK(dist(coarse, fine) < 1e-8);
}

TEST_CASE("outputs stay on the sphere for every scheme and combination") {
  const VelocityField f = vortex4_field();
  for (SchemeId id : kSchemes) {
    for (CombineMode mode : {CombineMode::ProgressiveSlerp, CombineMode::FrechetMean, CombineMode::ProjectedAverage}) {
      const Trajectory tr = integrate(id, f, e1, 0.0, 2.0, 0.05, mode);
      double worst = 0.0;
      for (const auto& s : tr) worst = std::max(worst, std::abs(s.state.vec().norm() - 1.0));
      CAPTURE(to_string(id));
      CAPTURE(to_string(mode));
      CHECK(worst <= 1e-12);
    }
  }
}

}

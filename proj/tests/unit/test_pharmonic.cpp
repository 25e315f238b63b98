#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <sphrk/pharmonic.hpp>

#include "support.hpp"

using namespace sphrk;

namespace {

DirectorCurve great_circle(int n) {
  DirectorCurve c;
  for (int j = 0; j < n; ++j) {
    const double s = 2 * kPi * j / n;
    c.m.push_back(UnitVector3::normalize({std::cos(s), std::sin(s), 0}));
  }
  return c;
}

DirectorCurve wobbly(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  DirectorCurve c;
  for (int j = 0; j < n; ++j) {
    const double s = 2 * kPi * j / n;
    c.m.push_back(project({std::cos(s), std::sin(s), 0.5 + u(rng)}));
  }
  return c;
}

DirectorCurve constant_curve(int n) {
  DirectorCurve c;
  c.m.assign(n, project({0.2, -0.3, 0.9}));
  return c;
}

}  // namespace

TEST_SUITE("pharmonic") {

TEST_CASE("constant curve has no flow") {
  const DirectorCurve c = constant_curve(16);
  for (double p : {1.0, 2.0}) {
    for (const Vector3& v : p_laplacian(c, p, 1e-6)) CHECK(v.norm() == 0.0);
    for (const Vector3& v : pflow_rhs(c, p, 1e-6)) CHECK(v.norm() == 0.0);
  }
  PFlowParams prm;
  prm.t_final = 1e-3;
  const auto snaps = pflow_evolve(c, prm, 3);
  for (std::size_t j = 0; j < c.size(); ++j) CHECK(testsupport::dist(snaps.back().curve.m[j], c.m[j]) < 1e-15);
}

TEST_CASE("Laplacian of a great circle") {
  std::vector<double> ds, errs;
  for (int n : {16, 32, 64, 128}) {
    const DirectorCurve c = great_circle(n);
    const auto lap = p_laplacian(c, 2.0, 1e-6);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      // centripetal with magnitude (2π)²
      worst = std::max(worst, (lap[j] + 4 * kPi * kPi * c.m[j].vec()).norm());
    }
    ds.push_back(c.ds());
    errs.push_back(worst);
  }
  CHECK(testsupport::loglog_slope(ds, errs) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("p = 2 ignores the regularisation") {
  const DirectorCurve c = wobbly(32, 1);
  const auto a = p_laplacian(c, 2.0, 1e-6), b = p_laplacian(c, 2.0, 0.3);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK((a[j] - b[j]).norm() == 0.0);
  CHECK(max_flux_weight(c, 2.0, 1e-6) == 1.0);
  CHECK(default_dt(c, 2.0, 1e-6) == doctest::Approx(0.1 * c.ds() * c.ds()));
  CHECK_THROWS_AS(p_laplacian(constant_curve(3), 2.0, 1e-6), Error);
}

TEST_CASE("flow is tangent") {
  const DirectorCurve c = wobbly(64, 2);
  for (double p : {1.0, 2.0}) {
    for (FlowSign sign : {FlowSign::Descent, FlowSign::Literal}) {
      const auto rhs = pflow_rhs(c, p, 1e-6, sign);
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(std::abs(rhs[j].dot(c.m[j].vec())) < 1e-9 * (1 + rhs[j].norm()));
    }
  }
}

TEST_CASE("descent sign lowers the energy, the literal sign raises it") {
  const DirectorCurve c = wobbly(64, 3);
  PFlowParams prm;
  prm.dt = 0.1 * c.ds() * c.ds();
  prm.t_final = 20 * prm.dt;
  std::vector<double> times;
  for (int i = 1; i <= 20; ++i) times.push_back(i * prm.dt);
  const auto down = pflow_evolve(c, prm, 3, times);
  double prev = p_energy(c, 2.0);
  for (const CurveSnapshot& s : down) {
    const double e = p_energy(s.curve, 2.0);
    CHECK(e < prev);
    prev = e;
  }
  prm.t_final = 2 * prm.dt;
  const auto up = pflow_evolve(c, prm, 3, {}, FlowSign::Literal);
  CHECK(p_energy(up.back().curve, 2.0) > p_energy(c, 2.0));
}

TEST_CASE("evolution keeps unit norms and hits the snapshot times") {
  const DirectorCurve c = initial_discontinuous_curve(64);
  PFlowParams prm;
  prm.t_final = 1e-3;
  const auto snaps = pflow_evolve(c, prm, 2, {0.0, 2.5e-4});
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[0].t == 0.0);
  CHECK(snaps[1].t == doctest::Approx(2.5e-4));
  CHECK(snaps[2].t == doctest::Approx(1e-3));
  for (const CurveSnapshot& s : snaps) CHECK(max_norm_deviation(s.curve) <= 1e-12);
  CHECK_THROWS_AS(pflow_evolve(c, prm, 4), Error);
  CHECK_THROWS_AS(pflow_evolve(c, prm, 2, {2e-3}), Error);
}

TEST_CASE("discontinuous initial curve") {
  const int n = 64;
  const DirectorCurve c = initial_discontinuous_curve(n);
  REQUIRE(c.size() == static_cast<std::size_t>(n));
  CHECK(max_norm_deviation(c) <= 1e-15);
  CHECK(testsupport::dist(c.m[n / 4].vec(), {1, 0, 0}) < 1e-15);
  CHECK(testsupport::dist(c.m[n / 2 + n / 4].vec(), {-1, 0, 0}) < 1e-15);
  const auto [s1, s2] = seam_indices(c);
  const auto gaps = node_gaps(c);
  CHECK(gaps[s1] > 0.5);
  CHECK(gaps[s2] > 0.5);
  double tv = 0.0;
  for (double g : gaps) tv += g;
  CHECK(total_variation(c) == doctest::Approx(tv));
}

TEST_CASE("csv layout") {
  PFlowParams prm;
  prm.t_final = 1e-5;
  std::ostringstream os;
  write_curve_csv(os, pflow_evolve(initial_discontinuous_curve(8), prm, 2));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,s,mx,my,mz");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
}

}

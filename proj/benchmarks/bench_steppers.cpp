#include <benchmark/benchmark.h>

#include <sphrk/baselines.hpp>
#include <sphrk/eikonal.hpp>
#include <sphrk/integrators.hpp>
#include <sphrk/pharmonic.hpp>
#include <sphrk/problems.hpp>

using namespace sphrk;

namespace {

const UnitVector3 e1 = UnitVector3::normalize({1, 0, 0});

void BM_SphereStep(benchmark::State& st) {
  const auto id = static_cast<SchemeId>(st.range(0));
  const VelocityField f = vortex4_field();
  UnitVector3 p = e1;
  for (auto _ : st) {
    p = step(id, f, e1, 0.0, 0.01);
    benchmark::DoNotOptimize(p);
  }
  st.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_SphereStep)->DenseRange(0, 5);

void BM_BaselineStep(benchmark::State& st) {
  const auto id = static_cast<BaselineId>(st.range(0));
  const VelocityField f = vortex4_field();
  Vector3 x = e1.vec();
  for (auto _ : st) {
    x = baseline_step(id, f, e1.vec(), 0.0, 0.01);
    benchmark::DoNotOptimize(x);
  }
  st.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_BaselineStep)->DenseRange(0, 13);

void BM_CombineMode(benchmark::State& st) {
  const auto mode = static_cast<CombineMode>(st.range(0));
  const VelocityField f = vortex4_field();
  for (auto _ : st) benchmark::DoNotOptimize(ssprk104_step(f, e1, 0.0, 0.01, mode));
  st.SetLabel(std::string(to_string(mode)));
}
BENCHMARK(BM_CombineMode)->DenseRange(0, 2);

void BM_Slerp(benchmark::State& st) {
  const UnitVector3 a = e1, b = project({0.3, 0.9, -0.2});
  double t = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(slerp(a, b, t));
    t = t > 0.9 ? 0.0 : t + 0.01;
  }
}
BENCHMARK(BM_Slerp);

void BM_Wavefront(benchmark::State& st) {
  const VelocityModel m = VelocityModel::exp_z2();
  TraceOptions opts;
  opts.h = kPi / 100;
  for (auto _ : st) benchmark::DoNotOptimize(trace_wavefront(m, e1, static_cast<int>(st.range(0)), opts, {kPi / 2}));
}
BENCHMARK(BM_Wavefront)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PFlowStep(benchmark::State& st) {
  const DirectorCurve c = initial_discontinuous_curve(static_cast<int>(st.range(0)));
  PFlowParams prm;
  prm.dt = default_dt(c, 2.0, prm.eps_reg);
  prm.t_final = 10 * prm.dt;
  for (auto _ : st) benchmark::DoNotOptimize(pflow_evolve(c, prm, 3));
}
BENCHMARK(BM_PFlowStep)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

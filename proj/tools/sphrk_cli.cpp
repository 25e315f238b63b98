// sphrk: command-line driver for the sphere integrator experiments.
//
//   sphrk converge  --problem vortex4 --scheme all --h "0.1/2^0..5" --out conv.csv
//   sphrk stability --scheme STVDRK3 --h 2.51 --steps 500 --out stab.csv
//   sphrk eikonal   --velocity expz2 --order 3 --rays 512 --dt 0.628 --t-final 6.28 --out rays.csv
//   sphrk pharmonic --p 1 --nodes 256 --t-final 1e-3 --snapshots 1e-4,5e-4 --out curve.csv
//   sphrk verify    --target appendix-b
//
// Exit status: 0 success, 1 usage error, 2 verification failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphrk/eikonal.hpp"
#include "sphrk/harness.hpp"
#include "sphrk/pharmonic.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kVerifyFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open '" + path + "' for writing");
  return os;
}

int cmd_converge(const std::string& problem_name, const std::string& scheme, double t_final,
                 const std::string& h_spec, const std::string& out) {
  const auto problem = sphrk::problem_from_string(problem_name);
  if (!problem) throw UsageError("unknown problem '" + problem_name + "'");
  std::vector<sphrk::Method> methods;
  if (scheme == "all") {
    methods = sphrk::all_methods();
  } else if (const auto m = sphrk::method_from_string(scheme)) {
    methods.push_back(*m);
  } else {
    throw UsageError("unknown scheme '" + scheme + "'");
  }
  std::vector<double> hs;
  try {
    hs = sphrk::parse_h_list(h_spec);
  } catch (const sphrk::Error& e) {
    throw UsageError(e.what());
  }

  const auto reports = sphrk::run_convergence(*problem, methods, hs, t_final);
  const std::filesystem::path path(out);
  if (path.extension() == ".json") {
    open_out(out) << sphrk::convergence_json(reports);
  } else {
    auto csv = open_out(out);
    sphrk::write_convergence_csv(csv, reports);
    std::filesystem::path sidecar = path;
    sidecar.replace_extension(".json");
    open_out(sidecar.string()) << sphrk::convergence_json(reports);
  }
  for (const auto& r : reports) {
    std::cout << r.scheme << "  order_e2=";
    r.order_e2 ? std::cout << *r.order_e2 : std::cout << "n/a";
    std::cout << "  order_enorm=";
    r.order_enorm ? std::cout << *r.order_enorm : std::cout << "exact";
    std::cout << '\n';
  }
  return 0;
}

int cmd_stability(const std::string& scheme, double h, std::size_t steps, const std::string& out) {
  const auto m = sphrk::method_from_string(scheme);
  if (!m) throw UsageError("unknown scheme '" + scheme + "'");
  const sphrk::StabilityRun run = sphrk::run_stability(*m, h, steps);
  auto os = open_out(out);
  sphrk::write_stability_csv(os, run);
  std::cout << run.scheme << " h=" << h << " steps=" << steps << " final_distance=" << run.distance.back() << ' '
            << sphrk::to_string(run.verdict) << '\n';
  return 0;
}

std::vector<double> snapshot_list(std::vector<double> snaps, double t_final) {
  if (snaps.empty()) snaps.push_back(t_final);
  std::sort(snaps.begin(), snaps.end());
  for (double t : snaps) {
    if (t < 0.0 || t > t_final) throw UsageError("snapshot times must lie in [0, t-final]");
  }
  return snaps;
}

int cmd_eikonal(const std::string& velocity, int order, int rays, double dt, double t_final,
                const std::vector<double>& snaps, const std::string& mode_name, const std::string& out) {
  const auto model = sphrk::VelocityModel::from_string(velocity);
  if (!model) throw UsageError("unknown velocity model '" + velocity + "'");
  sphrk::TraceOptions opts;
  opts.order = order;
  opts.h = dt;
  if (mode_name == "sphere") {
    opts.mode = sphrk::PositionMode::Sphere;
  } else if (mode_name == "projected") {
    opts.mode = sphrk::PositionMode::Projected;
  } else if (mode_name == "cartesian") {
    opts.mode = sphrk::PositionMode::Cartesian;
  } else {
    throw UsageError("unknown position mode '" + mode_name + "'");
  }
  const auto xs = sphrk::UnitVector3::normalize(sphrk::Vector3(1, 0, 0));
  const auto fronts = sphrk::trace_wavefront(*model, xs, rays, opts, snapshot_list(snaps, t_final));
  auto os = open_out(out);
  sphrk::write_wavefront_csv(os, fronts);
  std::cout << "rays=" << rays << " snapshots=" << fronts.size()
            << " max|norm-1|=" << sphrk::max_norm_deviation(fronts) << '\n';
  if (model->kind() == sphrk::VelocityModel::Kind::Constant) {
    for (const auto& f : fronts) {
      if (f.t > 0.0) std::cout << "t=" << f.t << " E2=" << sphrk::wavefront_E2(f, xs, f.t) << '\n';
    }
  }
  return 0;
}

int cmd_pharmonic(double p, int nodes, double dt, double t_final, const std::vector<double>& snaps, int order,
                  const std::string& out) {
  if (nodes < 4 || nodes % 2 != 0) throw UsageError("--nodes must be even and at least 4");
  const sphrk::DirectorCurve c0 = sphrk::initial_discontinuous_curve(nodes);
  sphrk::PFlowParams params;
  params.p = p;
  params.dt = dt;
  params.t_final = t_final;
  std::vector<double> times = snaps;
  times.insert(times.begin(), 0.0);
  auto snapshots = sphrk::pflow_evolve(c0, params, order, times);
  auto os = open_out(out);
  sphrk::write_curve_csv(os, snapshots);
  for (const auto& s : snapshots) {
    std::cout << "t=" << s.t << " E_p=" << sphrk::p_energy(s.curve, p) << " TV=" << sphrk::total_variation(s.curve)
              << " max|norm-1|=" << sphrk::max_norm_deviation(s.curve) << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& target) {
  sphrk::VerifyReport rep;
  if (target == "appendix-a") {
    rep = sphrk::verify_tvdrk2_norm();
  } else if (target == "appendix-b") {
    rep = sphrk::verify_angle_recurrences();
  } else if (target == "slerp-parity") {
    rep = sphrk::verify_slerp_parity();
  } else if (target == "table2") {
    rep = sphrk::verify_vortex_orders();
  } else {
    throw UsageError("unknown verification target '" + target + "'");
  }
  sphrk::print_report(std::cout, rep);
  return rep.pass() ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphere-constrained explicit Runge-Kutta experiments"};
  app.require_subcommand(1);
  // --h is a step size, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string problem = "vortex4", scheme = "all", h_spec = "0.1/2^0..5", out;
  double t_final = 2.0;
  auto* converge = app.add_subcommand("converge", "Convergence table with fitted orders");
  converge->add_option("--problem", problem, "vortex4 | rotation")->check(CLI::IsMember({"vortex4", "rotation"}));
  converge->add_option("--scheme", scheme, "Scheme id or 'all'");
  converge->add_option("--t-final", t_final, "Final time");
  converge->add_option("--h", h_spec, "Step sizes, e.g. 0.1/2^0..5 or 0.1,0.05");
  converge->add_option("--out", out, "Output .csv (with .json sidecar) or .json")->required();

  std::string stab_scheme;
  double stab_h = 0.0;
  std::size_t stab_steps = 500;
  std::string stab_out;
  auto* stability = app.add_subcommand("stability", "Step-size stability run on the projected linear model");
  stability->add_option("--scheme", stab_scheme, "Scheme id")->required();
  stability->add_option("--h", stab_h, "Step size")->required()->check(CLI::PositiveNumber);
  stability->add_option("--steps", stab_steps, "Number of steps");
  stability->add_option("--out", stab_out, "Output CSV")->required();

  std::string velocity = "const", mode = "sphere", eik_out;
  int eik_order = 3, rays = 512;
  double eik_dt = M_PI / 100.0, eik_t = M_PI / 2.0;
  std::vector<double> eik_snaps;
  auto* eikonal = app.add_subcommand("eikonal", "Wavefront ray tracing on the sphere");
  eikonal->add_option("--velocity", velocity, "const | expz2 | y31")->check(CLI::IsMember({"const", "expz2", "y31"}));
  eikonal->add_option("--order", eik_order, "1 | 2 | 3")->check(CLI::Range(1, 3));
  eikonal->add_option("--rays", rays, "Rays per wavefront")->check(CLI::Range(3, 1 << 24));
  eikonal->add_option("--dt", eik_dt, "Time step")->check(CLI::PositiveNumber);
  eikonal->add_option("--t-final", eik_t, "Final time")->check(CLI::NonNegativeNumber);
  eikonal->add_option("--snapshots", eik_snaps, "Snapshot times (comma separated)")->delimiter(',');
  eikonal->add_option("--mode", mode, "sphere | projected | cartesian");
  eikonal->add_option("--out", eik_out, "Output CSV")->required();

  double p = 2.0, ph_dt = 0.0, ph_t = 1e-3;
  int nodes = 256, ph_order = 3;
  std::vector<double> ph_snaps;
  std::string ph_out;
  auto* pharmonic = app.add_subcommand("pharmonic", "p-harmonic flow of the discontinuous test curve");
  pharmonic->add_option("--p", p, "1 | 2")->check(CLI::Range(1.0, 2.0));
  pharmonic->add_option("--nodes", nodes, "Grid nodes (even)");
  pharmonic->add_option("--dt", ph_dt, "Time step (default 0.1 ds^2 / max flux weight)");
  pharmonic->add_option("--t-final", ph_t, "Final time")->check(CLI::NonNegativeNumber);
  pharmonic->add_option("--snapshots", ph_snaps, "Snapshot times (comma separated)")->delimiter(',');
  pharmonic->add_option("--order", ph_order, "STVDRK order, 2 | 3")->check(CLI::Range(2, 3));
  pharmonic->add_option("--out", ph_out, "Output CSV")->required();

  std::string target;
  auto* verify = app.add_subcommand("verify", "Built-in verifications");
  verify->add_option("--target", target, "appendix-a | appendix-b | slerp-parity | table2")
      ->required()
      ->check(CLI::IsMember({"appendix-a", "appendix-b", "slerp-parity", "table2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*converge) return cmd_converge(problem, scheme, t_final, h_spec, out);
    if (*stability) return cmd_stability(stab_scheme, stab_h, stab_steps, stab_out);
    if (*eikonal) return cmd_eikonal(velocity, eik_order, rays, eik_dt, eik_t, eik_snaps, mode, eik_out);
    if (*pharmonic) return cmd_pharmonic(p, nodes, ph_dt, ph_t, ph_snaps, ph_order, ph_out);
    if (*verify) return cmd_verify(target);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const sphrk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

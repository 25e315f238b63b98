#include "sphrk/pharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "sphrk/detail/tvd_stages.hpp"
#include "sphrk/detail/uniform_grid.hpp"

namespace sphrk {

namespace {

using Nodes = std::vector<UnitVector3>;

std::vector<Vector3> forward_differences(const Nodes& m) {
  const std::size_t n = m.size();
  const double inv_ds = static_cast<double>(n);
  std::vector<Vector3> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = (m[(j + 1) % n].vec() - m[j].vec()) * inv_ds;
  return d;
}

double flux_weight(const Vector3& d, double p, double eps) {
  if (p == 2.0) return 1.0;
  return std::pow(d.squaredNorm() + eps * eps, 0.5 * (p - 2.0));
}

struct CurveSpace {
  double p;
  double eps;
  FlowSign sign;

  Nodes euler(const Nodes& m, double, double dt) const {
    const std::vector<Vector3> v = pflow_rhs(DirectorCurve{m}, p, eps, sign);
    Nodes out(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double travel = std::abs(dt) * v[j].norm();
      if (!(travel < 0.5 * kPi)) {
        throw Error(ErrorCode::StepTooLarge,
                    "node " + std::to_string(j) + " stage travel " + std::to_string(travel) + " exceeds pi/2");
      }
      out[j] = exp_map(m[j], dt * v[j]);
    }
    return out;
  }

  Nodes blend(const Nodes& a, const Nodes& b, double w) const {
    Nodes out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = slerp(a[j], b[j], w);
    return out;
  }
};

}  // namespace

std::vector<Vector3> p_laplacian(const DirectorCurve& curve, double p, double eps_reg) {
  const std::size_t n = curve.size();
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "p-Laplacian needs at least 4 nodes");
  const std::vector<Vector3> d = forward_differences(curve.m);
  std::vector<Vector3> flux(n);
  for (std::size_t j = 0; j < n; ++j) flux[j] = flux_weight(d[j], p, eps_reg) * d[j];
  const double inv_ds = static_cast<double>(n);
  std::vector<Vector3> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = (flux[j] - flux[(j + n - 1) % n]) * inv_ds;
  return out;
}

double max_flux_weight(const DirectorCurve& curve, double p, double eps_reg) {
  double w = 0.0;
  for (const Vector3& d : forward_differences(curve.m)) w = std::max(w, flux_weight(d, p, eps_reg));
  return w;
}

std::vector<Vector3> pflow_rhs(const DirectorCurve& curve, double p, double eps_reg, FlowSign sign) {
  std::vector<Vector3> lap = p_laplacian(curve, p, eps_reg);
  for (std::size_t j = 0; j < lap.size(); ++j) {
    const Vector3& m = curve.m[j].vec();
    const Vector3 triple = m.cross(m.cross(lap[j]));
    lap[j] = sign == FlowSign::Descent ? Vector3(-triple) : triple;
  }
  return lap;
}

double p_energy(const DirectorCurve& curve, double p) {
  double e = 0.0;
  for (const Vector3& d : forward_differences(curve.m)) e += std::pow(d.norm(), p);
  return e * curve.ds() / p;
}

std::vector<double> node_gaps(const DirectorCurve& curve) {
  const std::size_t n = curve.size();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = geodesic_distance(curve.m[j], curve.m[(j + 1) % n]);
  return g;
}

double total_variation(const DirectorCurve& curve) {
  double tv = 0.0;
  for (double g : node_gaps(curve)) tv += g;
  return tv;
}

double max_norm_deviation(const DirectorCurve& curve) {
  double worst = 0.0;
  for (const UnitVector3& m : curve.m) worst = std::max(worst, std::abs(m.vec().norm() - 1.0));
  return worst;
}

double default_dt(const DirectorCurve& curve, double p, double eps_reg) {
  const double ds = curve.ds();
  return 0.1 * ds * ds / std::max(1.0, max_flux_weight(curve, p, eps_reg));
}

std::vector<CurveSnapshot> pflow_evolve(const DirectorCurve& curve0, const PFlowParams& params, int order,
                                        std::vector<double> snapshot_times, FlowSign sign) {
  if (order != 2 && order != 3) throw Error(ErrorCode::InvalidArgument, "p-harmonic stepping order must be 2 or 3");
  if (!(params.p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  if (!(params.eps_reg > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_reg must be positive");
  if (params.t_final < 0.0) throw Error(ErrorCode::InvalidArgument, "t_final must be non-negative");
  const double dt = params.dt > 0.0 ? params.dt : default_dt(curve0, params.p, params.eps_reg);

  for (double ts : snapshot_times) {
    if (!(ts >= 0.0 && ts <= params.t_final)) {
      throw Error(ErrorCode::InvalidArgument, "snapshot time " + std::to_string(ts) + " outside [0, t_final]");
    }
  }
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(std::remove(snapshot_times.begin(), snapshot_times.end(), params.t_final),
                       snapshot_times.end());
  snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()), snapshot_times.end());
  snapshot_times.push_back(params.t_final);

  const CurveSpace space{params.p, params.eps_reg, sign};
  std::vector<CurveSnapshot> out;
  Nodes m = curve0.m;
  double t = 0.0;
  std::size_t steps = 0;
  try {
    for (double ts : snapshot_times) {
      const detail::GridPlan plan = detail::plan_grid(t, ts, dt);
      for (std::size_t k = 0; k < plan.full_steps; ++k, ++steps) m = detail::tvd_stages(order, space, m, t, dt);
      if (plan.partial > 0.0) {
        m = detail::tvd_stages(order, space, m, t, plan.partial);
        ++steps;
      }
      t = ts;
      out.push_back({ts, DirectorCurve{m}});
    }
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(e, steps);
  }
  return out;
}

DirectorCurve initial_discontinuous_curve(int n) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "node count must be even and at least 4");
  const int half = n / 2;
  DirectorCurve c;
  c.m.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < half; ++j) {
    const double y = -1.0 + 2.0 * j / half;
    c.m.push_back(project(Vector3(1.0, y, 2.0 * std::sin(kPi * y))));
  }
  for (int j = 0; j < half; ++j) {
    const double y = 1.0 - 2.0 * j / half;
    c.m.push_back(project(Vector3(-1.0, y, -2.0 * std::sin(kPi * y))));
  }
  return c;
}

std::pair<std::size_t, std::size_t> seam_indices(const DirectorCurve& curve) {
  return {curve.size() / 2 - 1, curve.size() - 1};
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSnapshot>& snaps) {
  const auto old_precision = os.precision(17);
  os << "t,s,mx,my,mz\n";
  for (const CurveSnapshot& s : snaps) {
    const double ds = s.curve.ds();
    for (std::size_t j = 0; j < s.curve.size(); ++j) {
      const Vector3& m = s.curve.m[j].vec();
      os << s.t << ',' << static_cast<double>(j) * ds << ',' << m.x() << ',' << m.y() << ',' << m.z() << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace sphrk

#include "sphrk/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "sphrk/detail/tvd_stages.hpp"
#include "sphrk/detail/uniform_grid.hpp"

namespace sphrk {

namespace {

const double kY31Scale = 0.125 * std::sqrt(21.0 / kPi);

struct RaySpace {
  const VelocityModel& model;
  PositionMode mode;
  double bound;

  RayState euler(const RayState& s, double, double dt) const {
    const RayRhs r = ray_rhs(model, s);
    RayState out;
    if (mode == PositionMode::Sphere) {
      const UnitVector3 x = UnitVector3::from_trusted(s.x);
      const Vector3 v = TangentVector::make(x, r.dx).vec();
      const double travel = std::abs(dt) * v.norm();
      if (!(travel < bound)) {
        throw Error(ErrorCode::StepTooLarge, "ray stage travel " + std::to_string(travel) +
                                                 " violates the bound " + std::to_string(bound));
      }
      out.x = exp_map(x, dt * v).vec();
    } else {
      out.x = s.x + dt * r.dx;
    }
    out.k = s.k + dt * r.dk;
    out.u = s.u + dt * r.du;
    return out;
  }

  RayState blend(const RayState& a, const RayState& b, double w) const {
    RayState out;
    out.x = mode == PositionMode::Sphere
                ? slerp(UnitVector3::from_trusted(a.x), UnitVector3::from_trusted(b.x), w).vec()
                : Vector3((1.0 - w) * a.x + w * b.x);
    out.k = (1.0 - w) * a.k + w * b.k;
    out.u = (1.0 - w) * a.u + w * b.u;
    return out;
  }
};

// Unit tangent frame at xs.
std::pair<Vector3, Vector3> tangent_frame(const UnitVector3& xs) {
  const Vector3 p = xs.vec();
  Vector3 seed = std::abs(p.x()) < 0.9 ? Vector3(1, 0, 0) : Vector3(0, 1, 0);
  const Vector3 e2 = (seed - p.dot(seed) * p).normalized();
  return {e2, p.cross(e2)};
}

}  // namespace

double y31(double theta, double phi) {
  const double c = std::cos(theta);
  return -kY31Scale * std::cos(phi) * std::sin(theta) * (5.0 * c * c - 1.0);
}

VelocityModel VelocityModel::constant(double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "wave speed must be positive");
  return {Kind::Constant, c};
}

VelocityModel VelocityModel::exp_z2() { return {Kind::ExpZ2, 0.0}; }

VelocityModel VelocityModel::y31_harmonic() { return {Kind::Y31, 0.0}; }

std::optional<VelocityModel> VelocityModel::from_string(std::string_view name) {
  if (name == "const") return constant();
  if (name == "expz2") return exp_z2();
  if (name == "y31") return y31_harmonic();
  return std::nullopt;
}

std::string_view VelocityModel::name() const {
  switch (kind_) {
    case Kind::Constant: return "const";
    case Kind::ExpZ2: return "expz2";
    case Kind::Y31: return "y31";
  }
  return "?";
}

double VelocityModel::value(const Vector3& x) const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::ExpZ2: return std::exp(-x.z() * x.z());
    case Kind::Y31: {
      // In Cartesian form on the unit sphere: Y₃¹ = −c X (5Z² − 1).
      const Vector3 n = x.normalized();
      return 1.0 - kY31Scale * n.x() * (5.0 * n.z() * n.z() - 1.0);
    }
  }
  return 1.0;
}

Vector3 VelocityModel::gradient(const Vector3& x) const {
  switch (kind_) {
    case Kind::Constant: return Vector3::Zero();
    case Kind::ExpZ2: return {0.0, 0.0, -2.0 * x.z() * std::exp(-x.z() * x.z())};
    case Kind::Y31: {
      // v depends on x/‖x‖ only, so ∇v = (I − nnᵀ)∇_n G / ‖x‖.
      const double r = x.norm();
      const Vector3 n = x / r;
      const Vector3 g(-kY31Scale * (5.0 * n.z() * n.z() - 1.0), 0.0, -10.0 * kY31Scale * n.x() * n.z());
      return (g - n.dot(g) * n) / r;
    }
  }
  return Vector3::Zero();
}

RayRhs ray_rhs(const VelocityModel& model, const RayState& s) {
  const double r = s.x.norm();
  const double v = model.value(s.x);
  const double xk = s.x.dot(s.k) / r;
  const Vector3 tangential = s.k - xk * s.x;
  RayRhs out;
  out.dx = v * v * tangential;
  out.dk = v * v * xk * tangential - model.gradient(s.x) / v;
  out.du = 1.0;
  return out;
}

double hamiltonian(const VelocityModel& model, const Vector3& x, const Vector3& k) {
  const double v = model.value(x);
  const double kn = k.dot(x) / x.norm();
  return 0.5 * (v * v * (k.squaredNorm() - kn * kn) - 1.0);
}

std::string_view to_string(PositionMode mode) {
  switch (mode) {
    case PositionMode::Sphere: return "sphere";
    case PositionMode::Projected: return "projected";
    case PositionMode::Cartesian: return "cartesian";
  }
  return "?";
}

RayState coupled_step(int order, const VelocityModel& model, const RayState& s, double h, PositionMode mode) {
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidArgument, "coupled step order must be 1, 2 or 3");
  const RaySpace space{model, mode, order == 1 ? kPi : 0.5 * kPi};
  RayState out = detail::tvd_stages(order, space, s, s.u, h);
  if (mode == PositionMode::Projected) out.x = project(out.x).vec();
  out.u = s.u + h;
  return out;
}

std::vector<RayState> initial_rays(const VelocityModel& model, const UnitVector3& xs, int n_rays) {
  if (n_rays < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 rays");
  const auto [e2, e3] = tangent_frame(xs);
  const double inv_v = 1.0 / model.value(xs.vec());
  std::vector<RayState> rays(static_cast<std::size_t>(n_rays));
  for (int j = 0; j < n_rays; ++j) {
    const double a = 2.0 * kPi * j / n_rays;
    rays[static_cast<std::size_t>(j)] = {xs.vec(), inv_v * (std::cos(a) * e2 + std::sin(a) * e3), 0.0};
  }
  return rays;
}

std::vector<Wavefront> trace_wavefront(const VelocityModel& model, const UnitVector3& xs, int n_rays,
                                       const TraceOptions& opts, const std::vector<double>& snapshot_times) {
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()) ||
      (!snapshot_times.empty() && snapshot_times.front() < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "snapshot times must be non-negative and ascending");
  }
  const std::vector<RayState> rays0 = initial_rays(model, xs, n_rays);
  std::vector<Wavefront> fronts(snapshot_times.size());
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    fronts[i].t = snapshot_times[i];
    fronts[i].rays.resize(rays0.size());
  }

  auto trace_ray = [&](std::size_t j) {
    RayState s = rays0[j];
    double t = 0.0;
    std::size_t steps = 0;
    try {
      for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
        const detail::GridPlan plan = detail::plan_grid(t, snapshot_times[i], opts.h);
        for (std::size_t k = 0; k < plan.full_steps; ++k, ++steps) s = coupled_step(opts.order, model, s, opts.h, opts.mode);
        if (plan.partial > 0.0) {
          s = coupled_step(opts.order, model, s, plan.partial, opts.mode);
          ++steps;
        }
        s.u = snapshot_times[i];
        t = snapshot_times[i];
        fronts[i].rays[j] = s;
      }
    } catch (const Error& e) {
      throw StepError(e, steps, static_cast<long>(j));
    }
  };

  // Rays are independent; split them into contiguous blocks.
  const std::size_t n = rays0.size();
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1) {
    for (std::size_t j = 0; j < n; ++j) trace_ray(j);
    return fronts;
  }
  std::vector<std::future<void>> jobs;
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t lo = 0; lo < n; lo += block) {
    const std::size_t hi = std::min(n, lo + block);
    jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t j = lo; j < hi; ++j) trace_ray(j);
    }));
  }
  for (auto& job : jobs) job.get();
  return fronts;
}

double wavefront_E2(const Wavefront& front, const UnitVector3& xs, double t) {
  const std::size_t n = front.rays.size();
  if (n < 2) throw Error(ErrorCode::DegenerateFront, "front has fewer than two rays");
  std::vector<UnitVector3> pts;
  std::vector<double> err2;
  pts.reserve(n);
  err2.reserve(n);
  for (const RayState& r : front.rays) {
    pts.push_back(project(r.x));
    const double e = t - geodesic_distance(pts.back(), xs);
    err2.push_back(e * e);
  }
  double length = 0.0, integral = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const double len = geodesic_distance(pts[j], pts[k]);
    length += len;
    integral += 0.5 * len * (err2[j] + err2[k]);
  }
  if (length < 1e-12) throw Error(ErrorCode::DegenerateFront, "wavefront polyline has zero length");
  return std::sqrt(integral);
}

double max_norm_deviation(const std::vector<Wavefront>& fronts) {
  double worst = 0.0;
  for (const Wavefront& f : fronts) {
    for (const RayState& r : f.rays) worst = std::max(worst, std::abs(r.x.norm() - 1.0));
  }
  return worst;
}

void write_wavefront_csv(std::ostream& os, const std::vector<Wavefront>& fronts) {
  const auto old_precision = os.precision(17);
  os << "t,ray_index,x,y,z,kx,ky,kz,u\n";
  for (const Wavefront& f : fronts) {
    for (std::size_t j = 0; j < f.rays.size(); ++j) {
      const RayState& r = f.rays[j];
      os << f.t << ',' << j << ',' << r.x.x() << ',' << r.x.y() << ',' << r.x.z() << ',' << r.k.x() << ','
         << r.k.y() << ',' << r.k.z() << ',' << r.u << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace sphrk

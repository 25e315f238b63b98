#include "sphrk/baselines.hpp"

#include <array>
#include <cmath>

#include "sphrk/detail/tvd_stages.hpp"

namespace sphrk {

namespace {

constexpr std::array<std::pair<BaselineId, std::string_view>, 14> kNames{{
    {BaselineId::FE, "FE"},
    {BaselineId::RK2, "RK2"},
    {BaselineId::RK3, "RK3"},
    {BaselineId::RK4, "RK4"},
    {BaselineId::TVDRK2, "TVDRK2"},
    {BaselineId::TVDRK3, "TVDRK3"},
    {BaselineId::PFE, "PFE"},
    {BaselineId::PRK2, "PRK2"},
    {BaselineId::PRK3, "PRK3"},
    {BaselineId::PRK4, "PRK4"},
    {BaselineId::PTVDRK2, "PTVDRK2"},
    {BaselineId::PTVDRK2P, "PTVDRK2'"},
    {BaselineId::PTVDRK3, "PTVDRK3"},
    {BaselineId::PTVDRK3P, "PTVDRK3'"},
}};

struct EuclideanSpace {
  const VelocityField& f;
  Vector3 euler(const Vector3& x, double t, double dt) const { return x + dt * f.extended(x, t); }
  Vector3 blend(const Vector3& a, const Vector3& b, double w) const { return (1.0 - w) * a + w * b; }
};

// Internal projection: every stage lands back on the sphere.
struct ProjectedSpace {
  const VelocityField& f;
  Vector3 euler(const Vector3& x, double t, double dt) const { return project(x + dt * f.extended(x, t)).vec(); }
  Vector3 blend(const Vector3& a, const Vector3& b, double w) const { return project((1.0 - w) * a + w * b).vec(); }
};

Vector3 rk2(const VelocityField& f, const Vector3& p, double t, double h) {
  const Vector3 s1 = f.extended(p, t);
  const Vector3 s2 = f.extended(p + h * s1, t + h);
  return p + 0.5 * h * (s1 + s2);
}

Vector3 rk3(const VelocityField& f, const Vector3& p, double t, double h) {
  const Vector3 s1 = f.extended(p, t);
  const Vector3 s2 = f.extended(p + 0.5 * h * s1, t + 0.5 * h);
  const Vector3 s3 = f.extended(p + 2.0 * h * s2 - h * s1, t + h);
  return p + (h / 6.0) * (s1 + 4.0 * s2 + s3);
}

Vector3 rk4(const VelocityField& f, const Vector3& p, double t, double h) {
  const Vector3 s1 = f.extended(p, t);
  const Vector3 s2 = f.extended(p + 0.5 * h * s1, t + 0.5 * h);
  const Vector3 s3 = f.extended(p + 0.5 * h * s2, t + 0.5 * h);
  const Vector3 s4 = f.extended(p + h * s3, t + h);
  return p + (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
}

Vector3 proj(const Vector3& v) { return project(v).vec(); }

}  // namespace

std::string_view to_string(BaselineId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "?";
}

std::optional<BaselineId> baseline_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  // ASCII spelling of the primed variants
  if (name == "PTVDRK2P") return BaselineId::PTVDRK2P;
  if (name == "PTVDRK3P") return BaselineId::PTVDRK3P;
  return std::nullopt;
}

bool is_projected(BaselineId id) { return static_cast<int>(id) >= static_cast<int>(BaselineId::PFE); }

int projection_count(BaselineId id) {
  switch (id) {
    case BaselineId::PTVDRK2P: return 3;
    case BaselineId::PTVDRK3P: return 5;
    default: return is_projected(id) ? 1 : 0;
  }
}

Vector3 baseline_step(BaselineId id, const VelocityField& f, const Vector3& x, double t, double h) {
  const EuclideanSpace flat{f};
  switch (id) {
    case BaselineId::FE: return detail::tvd1_stages(flat, x, t, h);
    case BaselineId::RK2: return rk2(f, x, t, h);
    case BaselineId::RK3: return rk3(f, x, t, h);
    case BaselineId::RK4: return rk4(f, x, t, h);
    case BaselineId::TVDRK2: return detail::tvd2_stages(flat, x, t, h);
    case BaselineId::TVDRK3: return detail::tvd3_stages(flat, x, t, h);
    case BaselineId::PFE: return proj(detail::tvd1_stages(flat, x, t, h));
    case BaselineId::PRK2: return proj(rk2(f, x, t, h));
    case BaselineId::PRK3: return proj(rk3(f, x, t, h));
    case BaselineId::PRK4: return proj(rk4(f, x, t, h));
    case BaselineId::PTVDRK2: return proj(detail::tvd2_stages(flat, x, t, h));
    case BaselineId::PTVDRK2P: return detail::tvd2_stages(ProjectedSpace{f}, x, t, h);
    case BaselineId::PTVDRK3: return proj(detail::tvd3_stages(flat, x, t, h));
    case BaselineId::PTVDRK3P: return detail::tvd3_stages(ProjectedSpace{f}, x, t, h);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown baseline scheme");
}

CartesianTrajectory integrate_baseline(BaselineId id, const VelocityField& f, const Vector3& x0, double t0,
                                       double t_final, double h) {
  return detail::drive([&](const Vector3& x, double t, double dt) { return baseline_step(id, f, x, t, dt); }, x0,
                       t0, t_final, h);
}

Vector3 integrate_baseline_endpoint(BaselineId id, const VelocityField& f, const Vector3& x0, double t0,
                                    double t_final, double h) {
  const detail::GridPlan plan = detail::plan_grid(t0, t_final, h);
  Vector3 x = x0;
  std::size_t k = 0;
  try {
    for (; k < plan.full_steps; ++k) x = baseline_step(id, f, x, t0 + static_cast<double>(k) * h, h);
    if (plan.partial > 0.0) x = baseline_step(id, f, x, t0 + static_cast<double>(k) * h, plan.partial);
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(e, k);
  }
  return x;
}

double angle_recurrence(BaselineId id, double theta, double h) {
  const double g = 1.0 + std::atan(h);
  switch (id) {
    case BaselineId::PFE: return g * theta;
    case BaselineId::PTVDRK2P: return 0.5 * (1.0 + g * g) * theta;
    case BaselineId::PTVDRK3P: {
      const double theta4 = 0.25 * (3.0 + g * g) * g;
      return (1.0 + 2.0 * theta4) / 3.0 * theta;
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "angle recurrence exists for PFE, PTVDRK2' and PTVDRK3' only");
}

}  // namespace sphrk

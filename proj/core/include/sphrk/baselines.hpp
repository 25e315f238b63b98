#pragma once

// Cartesian Runge–Kutta methods in R³ and their projected variants. The field
// is extended off the sphere by f(x, t) = f(𝒫(x), t) in every stage.

#include <optional>
#include <string_view>
#include <vector>

#include "sphrk/detail/uniform_grid.hpp"
#include "sphrk/geometry.hpp"
#include "sphrk/velocity_field.hpp"

namespace sphrk {

enum class BaselineId {
  FE,
  RK2,
  RK3,
  RK4,
  TVDRK2,
  TVDRK3,
  PFE,
  PRK2,
  PRK3,
  PRK4,
  PTVDRK2,
  PTVDRK2P,  // projection after every stage
  PTVDRK3,
  PTVDRK3P,
};

std::string_view to_string(BaselineId id);
std::optional<BaselineId> baseline_from_string(std::string_view name);

/// True for the P… variants, whose output lies on S².
bool is_projected(BaselineId id);

/// Radial projections per step.
int projection_count(BaselineId id);

/// One step of the scheme. Throws ZeroVector if a projected intermediate vanishes.
Vector3 baseline_step(BaselineId id, const VelocityField& f, const Vector3& x, double t, double h);

using CartesianTrajectory = std::vector<detail::Sample<Vector3>>;

CartesianTrajectory integrate_baseline(BaselineId id, const VelocityField& f, const Vector3& x0, double t0,
                                       double t_final, double h);

Vector3 integrate_baseline_endpoint(BaselineId id, const VelocityField& f, const Vector3& x0, double t0,
                                    double t_final, double h);

/// Great-circle model θ′ = θ: one step of PFE, PTVDRK2' or PTVDRK3' written as
/// θ ↦ R(h)θ with g(h) = 1 + arctan(h), the per-stage projected Euler factor.
/// Other ids throw InvalidArgument.
double angle_recurrence(BaselineId id, double theta, double h);

}  // namespace sphrk

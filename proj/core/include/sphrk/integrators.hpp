#pragma once

// Sphere-intrinsic explicit integrators. Forward-Euler substeps are replaced by
// the exponential map and convex combinations by SLERP, so every stage stays
// on S² without any projection.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sphrk/detail/uniform_grid.hpp"
#include "sphrk/geometry.hpp"
#include "sphrk/velocity_field.hpp"

namespace sphrk {

enum class SchemeId { SFE, STVDRK2, STVDRK3, STVDRK4, SSSPRK54, SSSPRK104 };

std::string_view to_string(SchemeId id);
std::optional<SchemeId> scheme_from_string(std::string_view name);

/// How multi-point convex combinations are realised on the sphere in the
/// fourth-order attempts. Two-point combinations are always SLERP.
enum class CombineMode {
  ProgressiveSlerp,  // left fold of pairwise SLERPs
  FrechetMean,       // converged weighted Riemannian mean
  ProjectedAverage,  // 𝒫(Σ wᵢ pᵢ), the starting guess of the Fréchet iteration
};

std::string_view to_string(CombineMode mode);

// ---------------------------------------------------------------------------
// Single steps. All throw StepTooLarge when a stage would move further than the
// SLERP-consistency bound (π for SFE, π/2 for every multi-stage scheme).

UnitVector3 sfe_step(const VelocityField& f, const UnitVector3& p, double t, double h);
UnitVector3 stvdrk2_step(const VelocityField& f, const UnitVector3& p, double t, double h);
UnitVector3 stvdrk3_step(const VelocityField& f, const UnitVector3& p, double t, double h);

UnitVector3 stvdrk4_step(const VelocityField& f, const UnitVector3& p, double t, double h,
                         CombineMode mode = CombineMode::ProgressiveSlerp);
UnitVector3 ssprk54_step(const VelocityField& f, const UnitVector3& p, double t, double h,
                         CombineMode mode = CombineMode::ProgressiveSlerp);
UnitVector3 ssprk104_step(const VelocityField& f, const UnitVector3& p, double t, double h,
                          CombineMode mode = CombineMode::ProgressiveSlerp);

UnitVector3 step(SchemeId id, const VelocityField& f, const UnitVector3& p, double t, double h,
                 CombineMode mode = CombineMode::ProgressiveSlerp);

/// Number of exponential-map and SLERP evaluations per step.
struct StepCost {
  int exp_maps = 0;
  int slerps = 0;
};
StepCost step_cost(SchemeId id);

// ---------------------------------------------------------------------------
// Convex combinations on the sphere.

/// Left fold r ← SLERP(r, pₖ, αₖ/(α₀+…+αₖ)), skipping α = 0 entries. The
/// operation is not associative: reordering the points changes the result.
UnitVector3 progressive_slerp_combine(std::span<const UnitVector3> points, std::span<const double> alphas);

struct WeightedPoint {
  double w;
  UnitVector3 p;
};

/// Non-negative weights summing to one (within 1e-12).
class WeightedPoints {
 public:
  explicit WeightedPoints(std::vector<WeightedPoint> pts);

  std::span<const WeightedPoint> items() const { return pts_; }
  std::size_t size() const { return pts_.size(); }

  /// 𝒫(Σ wᵢ pᵢ).
  UnitVector3 projected_average() const;

 private:
  std::vector<WeightedPoint> pts_;
};

struct FrechetOptions {
  double tol = 1e-13;
  int max_iter = 200;
};

/// argmin_q Σ wᵢ d(q, pᵢ)², by Riemannian gradient descent with unit step from
/// the projected weighted average. Requires the points to lie in one open
/// hemisphere (HemisphereViolation) and converges to ‖grad‖ ≤ tol or throws
/// NoConvergence.
UnitVector3 frechet_mean(const WeightedPoints& wp, FrechetOptions opts = {});

/// Σ wᵢ d(q, pᵢ)²
double frechet_objective(const WeightedPoints& wp, const UnitVector3& q);

/// Riemannian gradient norm of ½ Σ wᵢ d(q, pᵢ)² at q.
double frechet_gradient_norm(const WeightedPoints& wp, const UnitVector3& q);

// ---------------------------------------------------------------------------
// General s-stage SSP form
//   u⁽ⁱ⁾ = Σₖ αᵢₖ u⁽ᵏ⁾ + βᵢₖ h f(u⁽ᵏ⁾)
// lifted to the sphere: each nonzero term becomes exp_{q⁽ᵏ⁾}(βᵢₖ/αᵢₖ h f(q⁽ᵏ⁾)),
// and the terms are combined according to CombineMode.

class SspTableau {
 public:
  /// alpha[i][k], beta[i][k] for stages i = 1..s (row i−1 has i entries).
  /// Validates α ≥ 0, α = 0 ⇒ β = 0 and Σₖ αᵢₖ = 1.
  SspTableau(std::vector<std::vector<double>> alpha, std::vector<std::vector<double>> beta);

  std::size_t stages() const { return alpha_.size(); }
  double alpha(std::size_t i, std::size_t k) const { return alpha_[i - 1][k]; }
  double beta(std::size_t i, std::size_t k) const { return beta_[i - 1][k]; }

  static SspTableau tvdrk2();
  static SspTableau tvdrk3();
  /// Ketcheson's ten-stage fourth-order SSP method.
  static SspTableau ssprk104();

 private:
  std::vector<std::vector<double>> alpha_;
  std::vector<std::vector<double>> beta_;
};

UnitVector3 ssp_step(const SspTableau& tableau, const VelocityField& f, const UnitVector3& p, double t,
                     double h, CombineMode mode = CombineMode::ProgressiveSlerp);

// ---------------------------------------------------------------------------

using Trajectory = std::vector<detail::Sample<UnitVector3>>;

/// Uniform-grid integration from t0 to t_final. Returns every state including
/// p0; errors carry the failing step index (StepError).
Trajectory integrate(SchemeId id, const VelocityField& f, const UnitVector3& p0, double t0, double t_final,
                     double h, CombineMode mode = CombineMode::ProgressiveSlerp);

/// Endpoint only, without storing the trajectory.
UnitVector3 integrate_endpoint(SchemeId id, const VelocityField& f, const UnitVector3& p0, double t0,
                               double t_final, double h, CombineMode mode = CombineMode::ProgressiveSlerp);

}  // namespace sphrk

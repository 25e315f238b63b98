#pragma once

// Model problems: the four-vortex flow, rigid rotation and the projected
// linear field used for the step-size stability analysis.

#include <array>

#include <Eigen/Core>

#include "sphrk/geometry.hpp"
#include "sphrk/velocity_field.hpp"

namespace sphrk {

using Matrix3 = Eigen::Matrix3d;

struct VortexConfig {
  std::array<UnitVector3, 4> centers;
  UnitVector3 p0;
  double t_final = 2.0;
};

/// x₁ = (1,−1,1)/√3, x₂ = (1,−1,−1)/√3, x₃ = (−2,1,0)/√5, x₄ = (−1,−1,0)/√2,
/// p₀ = e₁, T = 2.
const VortexConfig& vortex4_config();

/// Σᵢ (xᵢ × p) / (2(1 − xᵢ·p)). Throws NearPole when 1 − xᵢ·p < 1e-12.
Vector3 vortex4_value(const UnitVector3& p);

/// Autonomous field wrapping vortex4_value.
VelocityField vortex4_field();

/// p ↦ ω × p.
VelocityField rigid_rotation_field(const Vector3& omega);

/// p₀ rotated by ‖ω‖t about ω/‖ω‖ (Rodrigues).
UnitVector3 rigid_rotation_exact(const Vector3& omega, const UnitVector3& p0, double t);

/// g(q) = (I − qqᵀ)Mq.
VelocityField projected_linear_field(const Matrix3& M);

/// Dg(q) of the unconstrained extension g(x) = Mx − (xᵀMx)x.
Matrix3 projected_linear_jacobian(const Matrix3& M, const Vector3& q);

struct StabilitySigma {
  Matrix3 table = Matrix3::Zero();  // (i, j) ↦ λⱼ − λᵢ, zero diagonal
  double sigma = 0.0;               // minimum over i ≠ j
};

/// σᵢⱼ from the diagonal of M.
StabilitySigma stability_sigma(const Matrix3& M);

/// Lower end μ* of the real stability interval [μ*, 0] of σh: −2 for orders 1
/// and 2, the real root of μ³/6 + μ²/2 + μ + 2 for order 3.
double stability_interval(int order);

}  // namespace sphrk

#pragma once

// Ray tracing for the surface eikonal equation ‖∇_S u‖ = 1/v on S². Each ray
// carries a position x, a slowness vector k = ∇u and the phase u. Positions
// are advanced by the sphere steppers, k by the matching Cartesian TVD stages.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphrk/geometry.hpp"

namespace sphrk {

/// Wave speed v(x) > 0 with its Cartesian gradient.
class VelocityModel {
 public:
  enum class Kind { Constant, ExpZ2, Y31 };

  /// v ≡ c
  static VelocityModel constant(double c = 1.0);
  /// v = exp(−z²)
  static VelocityModel exp_z2();
  /// v = 1 + Y₃¹(θ, φ), evaluated at the direction of x.
  static VelocityModel y31_harmonic();

  static std::optional<VelocityModel> from_string(std::string_view name);

  double value(const Vector3& x) const;
  Vector3 gradient(const Vector3& x) const;

  Kind kind() const { return kind_; }
  std::string_view name() const;

 private:
  VelocityModel(Kind kind, double c) : kind_(kind), c_(c) {}
  Kind kind_;
  double c_;
};

/// Y₃¹(θ, φ) = −(1/8)√(21/π) cos φ sin θ (5cos²θ − 1); θ polar, φ azimuthal.
double y31(double theta, double phi);

/// x is unit for sphere-stepped rays and free for the Cartesian variants.
struct RayState {
  Vector3 x = Vector3(1, 0, 0);
  Vector3 k = Vector3::Zero();
  double u = 0.0;
};

struct RayRhs {
  Vector3 dx;
  Vector3 dk;
  double du = 1.0;
};

/// f₁ = v²[k − (x·k)x/‖x‖], f₂ = v²(x·k)/‖x‖ [k − (x·k)x/‖x‖] − ∇v/v, u′ = 1.
RayRhs ray_rhs(const VelocityModel& model, const RayState& s);

/// H = ½{v²[‖k‖² − (k·n)²] − 1}, n = x/‖x‖.
double hamiltonian(const VelocityModel& model, const Vector3& x, const Vector3& k);

enum class PositionMode {
  Sphere,     // exp-map / SLERP stages
  Projected,  // Cartesian stages, final projection
  Cartesian,  // Cartesian stages, no projection
};

std::string_view to_string(PositionMode mode);

/// One step of order 1, 2 or 3. u advances by exactly h. Sphere mode throws
/// StepTooLarge if a stage moves further than π/2 (π for order 1).
RayState coupled_step(int order, const VelocityModel& model, const RayState& s, double h,
                      PositionMode mode = PositionMode::Sphere);

struct Wavefront {
  double t = 0.0;
  std::vector<RayState> rays;
};

/// Rays launched from xs with k = (cos αⱼ e₂ + sin αⱼ e₃)/v(xs), αⱼ = 2πj/n.
/// (e₂, e₃) is the tangent frame at xs; for xs = e₁ it is the coordinate pair.
std::vector<RayState> initial_rays(const VelocityModel& model, const UnitVector3& xs, int n_rays);

struct TraceOptions {
  int order = 3;
  double h = 0.01;
  PositionMode mode = PositionMode::Sphere;
};

/// Fronts at each requested time (ascending, ≥ 0). The last step before each
/// snapshot is shortened to land on it. Errors carry the step and ray index.
std::vector<Wavefront> trace_wavefront(const VelocityModel& model, const UnitVector3& xs, int n_rays,
                                       const TraceOptions& opts, const std::vector<double>& snapshot_times);

/// [∮_C (t − d(x, xs))² dS]^{1/2}, trapezoidal rule over the closed polyline
/// through the (projected) ray positions with geodesic segment lengths.
/// Throws DegenerateFront when the polyline length is below 1e-12.
double wavefront_E2(const Wavefront& front, const UnitVector3& xs, double t);

/// Largest |‖x‖ − 1| over the fronts.
double max_norm_deviation(const std::vector<Wavefront>& fronts);

/// CSV with header t,ray_index,x,y,z,kx,ky,kz,u.
void write_wavefront_csv(std::ostream& os, const std::vector<Wavefront>& fronts);

}  // namespace sphrk

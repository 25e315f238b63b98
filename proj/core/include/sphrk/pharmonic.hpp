#pragma once

// p-harmonic flow of a sphere-valued curve m(s), s ∈ [0, 1) periodic, with a
// flux-form p-Laplacian and per-node STVDRK time stepping.

#include <iosfwd>
#include <vector>

#include "sphrk/geometry.hpp"

namespace sphrk {

/// Samples mⱼ ≈ m(j/N), ds = 1/N, periodic.
struct DirectorCurve {
  std::vector<UnitVector3> m;

  std::size_t size() const { return m.size(); }
  double ds() const { return 1.0 / static_cast<double>(m.size()); }
};

/// D₋(w D₊m) with w_{j+½} = (‖D₊mⱼ‖² + eps²)^{(p−2)/2}. Requires N ≥ 4.
std::vector<Vector3> p_laplacian(const DirectorCurve& curve, double p, double eps_reg);

/// Largest flux weight w_{j+½} on the curve.
double max_flux_weight(const DirectorCurve& curve, double p, double eps_reg);

enum class FlowSign {
  Descent,  // (I − mmᵀ)Δ_p m = −m × (m × Δ_p m), decreases E_p
  Literal,  // m × (m × Δ_p m) taken literally, increases E_p
};

/// Tangential flow field at every node.
std::vector<Vector3> pflow_rhs(const DirectorCurve& curve, double p, double eps_reg,
                               FlowSign sign = FlowSign::Descent);

/// Discrete E_p = (1/p) Σ ‖D₊mⱼ‖^p ds.
double p_energy(const DirectorCurve& curve, double p);

/// Σⱼ d(mⱼ, mⱼ₊₁), periodic.
double total_variation(const DirectorCurve& curve);

/// d(mⱼ, mⱼ₊₁) for every j (last entry closes the loop).
std::vector<double> node_gaps(const DirectorCurve& curve);

/// Largest |‖mⱼ‖ − 1|.
double max_norm_deviation(const DirectorCurve& curve);

struct PFlowParams {
  double p = 2.0;
  double eps_reg = 1e-6;
  double dt = 0.0;  // ≤ 0 selects default_dt
  double t_final = 0.0;
};

/// 0.1·ds²/w_max of the given curve (0.1·ds² for p = 2).
double default_dt(const DirectorCurve& curve, double p, double eps_reg);

struct CurveSnapshot {
  double t = 0.0;
  DirectorCurve curve;
};

/// Evolves with STVDRK2 or STVDRK3 applied node-wise on the product of spheres.
/// Snapshot times must lie in [0, t_final] and be ascending; t_final is always
/// included as the last snapshot.
std::vector<CurveSnapshot> pflow_evolve(const DirectorCurve& curve0, const PFlowParams& params, int order,
                                        std::vector<double> snapshot_times = {},
                                        FlowSign sign = FlowSign::Descent);

/// Two projected curves x = ±1, z = ±2 sin(πy) joined into one loop: the first
/// N/2 nodes sweep y ∈ [−1, 1) on x = 1, the rest sweep back on x = −1.
DirectorCurve initial_discontinuous_curve(int n);

/// Indices j of the two seams (gaps between j and j+1).
std::pair<std::size_t, std::size_t> seam_indices(const DirectorCurve& curve);

/// CSV with header t,s,mx,my,mz.
void write_curve_csv(std::ostream& os, const std::vector<CurveSnapshot>& snaps);

}  // namespace sphrk

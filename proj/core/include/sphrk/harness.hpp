#pragma once

// Experiment drivers: convergence tables with order fits, step-size stability
// runs and the small analytic verifications.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphrk/baselines.hpp"
#include "sphrk/integrators.hpp"
#include "sphrk/problems.hpp"

namespace sphrk {

/// Either a sphere stepper (with a combine mode for the fourth-order ones) or a
/// Cartesian/projected baseline, behind one stepping interface.
struct Method {
  std::string name;
  bool sphere = true;
  SchemeId scheme = SchemeId::SFE;
  CombineMode mode = CombineMode::ProgressiveSlerp;
  BaselineId baseline = BaselineId::FE;

  /// Output stays on S² by construction.
  bool constrained() const { return sphere || is_projected(baseline); }

  Vector3 step(const VelocityField& f, const Vector3& x, double t, double h) const;
  Vector3 endpoint(const VelocityField& f, const UnitVector3& p0, double t0, double t_final, double h) const;
};

/// "STVDRK3", "PTVDRK2'" (or "PTVDRK2P"), "SSSPRK104:frechet", "STVDRK4:projected", …
std::optional<Method> method_from_string(std::string_view name);

/// Every sphere scheme (progressive SLERP) followed by every baseline.
std::vector<Method> all_methods();

/// The rows of the convergence table: TVDRK2, TVDRK3, RK3, RK4, PRK3, PRK4,
/// PTVDRK2, PTVDRK2', PTVDRK3, PTVDRK3', SFE, STVDRK2, STVDRK3.
std::vector<Method> comparison_methods();

// ---------------------------------------------------------------------------
// Order fitting

struct ErrorRow {
  double h;
  double err;
};

struct FitOptions {
  double floor = 1e-14;        // rows below are machine-precision noise
  double ceiling = 0.1;        // rows above are pre-asymptotic
  bool trim_coarse = true;     // drop inconsistent coarse rows while > 4 remain
  double trim_tolerance = 0.5;
};

/// Least-squares slope of log err against log h after filtering. Throws
/// NonPositiveError for err ≤ 0 and InvalidArgument if fewer than 3 rows remain.
double fit_order(std::vector<ErrorRow> rows, const FitOptions& opts = {});

/// Same, but returns nullopt instead of throwing when too few rows survive.
std::optional<double> try_fit_order(std::vector<ErrorRow> rows, const FitOptions& opts = {});

// ---------------------------------------------------------------------------
// Convergence

enum class ProblemId { Vortex4, Rotation };

std::optional<ProblemId> problem_from_string(std::string_view name);

struct ProblemSetup {
  VelocityField field;
  UnitVector3 p0;
  std::optional<Vector3> omega;  // set for rigid rotation, which has a closed form
};

ProblemSetup make_problem(ProblemId id);

/// Endpoint used as the exact solution: the closed form for rotation, STVDRK3
/// at h_ref = min(h)/100 otherwise. Throws ReferenceUnavailable.
UnitVector3 reference_endpoint(const ProblemSetup& problem, double t_final, double h_min);

struct ConvergenceRow {
  double h;
  double e2;
  double enorm;
};

struct ConvergenceReport {
  std::string scheme;
  bool constrained = false;
  std::vector<ConvergenceRow> rows;  // h descending
  std::optional<double> order_e2;
  std::optional<double> order_enorm;  // not fitted for constrained schemes
};

/// h = base/2^k for k = k0..k1, written "base/2^k0..k1"; also accepts a comma list.
std::vector<double> parse_h_list(std::string_view spec);

std::vector<double> default_h_list();  // 0.1·2⁻ᵏ, k = 0..5

/// Runs every (method, h) pair concurrently against one shared reference.
std::vector<ConvergenceReport> run_convergence(ProblemId problem, const std::vector<Method>& methods,
                                               const std::vector<double>& h_list, double t_final = 2.0);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports);

/// {scheme: {order_e2, order_enorm}}; unavailable fits are null.
std::string convergence_json(const std::vector<ConvergenceReport>& reports);

// ---------------------------------------------------------------------------
// Stability on g(q) = (I − qqᵀ)Mq, M = diag(1/2, −1/2, −1/2)

enum class Verdict { Converged, Diverged };

std::string_view to_string(Verdict v);

struct StabilityRun {
  std::string scheme;
  double h = 0.0;
  std::size_t n_steps = 0;
  std::vector<double> distance;  // to the nearer of ±e₁, index = step
  Verdict verdict = Verdict::Diverged;
};

Matrix3 stability_model_matrix();

/// Default start 𝒫((1,1,1)).
UnitVector3 default_stability_start();

/// Converged iff the final distance is below 1e-6, or the largest distance in
/// the last 10% of steps is under half the largest distance in steps 40%–50%.
Verdict stability_verdict(const std::vector<double>& distance);

StabilityRun run_stability(const Method& method, double h, std::size_t n_steps,
                           const UnitVector3& q0 = default_stability_start());

void write_stability_csv(std::ostream& os, const StabilityRun& run);

// ---------------------------------------------------------------------------
// Verifications

struct CheckLine {
  std::string label;
  double measured;
  double expected;
  bool pass;
  bool informational = false;  // reported, not gated
};

struct VerifyReport {
  std::string target;
  std::vector<CheckLine> checks;
  bool pass() const;
};

void print_report(std::ostream& os, const VerifyReport& report);

/// Norm of one planar TVDRK2 step from (0, −1) with tangential speeds a, b.
double tvdrk2_planar_norm(double a, double b, double h);

/// h⁴ coefficient of ‖pⁿ⁺¹‖ from the series of the planar construction,
/// −((a−b)⁴ − 16a³b)/128. The often quoted form with +16a³b has the wrong sign
/// (for a = b it would make the norm shrink, but Heun on a rotation grows it by
/// h⁴/8).
double tvdrk2_norm_h4_coefficient(double a, double b);

/// The same coefficient with +16a³b, as commonly quoted.
double tvdrk2_norm_h4_coefficient_quoted(double a, double b);

/// Extracts the h² and h⁴ coefficients of ‖pⁿ⁺¹‖ − 1 by Richardson
/// extrapolation, checks a real TVDRK2 step on a rotation field against the
/// a = b formula and the O(h⁴) norm defect for a field with variable speed.
VerifyReport verify_tvdrk2_norm(double a = 1.0, double b = 1.1);

/// Global orders of the angle recurrences and the leading PTVDRK3' error
/// coefficient against e^h.
VerifyReport verify_angle_recurrences();

/// Quaternion SLERP versus geodesic SLERP on random pairs, plus endpoint and
/// midpoint identities.
VerifyReport verify_slerp_parity(int n_pairs = 1000, std::uint64_t seed = 7);

/// Vortex convergence table: E₂ and E_norm orders against the expected values.
VerifyReport verify_vortex_orders(std::vector<ConvergenceReport>* reports_out = nullptr);

}  // namespace sphrk

#include "sphrk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sphrk/quaternion.hpp"

namespace sphrk {

// ---------------------------------------------------------------------------
// Methods

Vector3 Method::step(const VelocityField& f, const Vector3& x, double t, double h) const {
  if (sphere) return sphrk::step(scheme, f, UnitVector3::normalize(x), t, h, mode).vec();
  return baseline_step(baseline, f, x, t, h);
}

Vector3 Method::endpoint(const VelocityField& f, const UnitVector3& p0, double t0, double t_final,
                         double h) const {
  if (sphere) return integrate_endpoint(scheme, f, p0, t0, t_final, h, mode).vec();
  return integrate_baseline_endpoint(baseline, f, p0.vec(), t0, t_final, h);
}

std::optional<Method> method_from_string(std::string_view name) {
  std::string_view base = name;
  std::optional<CombineMode> mode;
  if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    const std::string_view suffix = name.substr(colon + 1);
    if (suffix == "frechet") {
      mode = CombineMode::FrechetMean;
    } else if (suffix == "projected") {
      mode = CombineMode::ProjectedAverage;
    } else if (suffix == "progressive") {
      mode = CombineMode::ProgressiveSlerp;
    } else {
      return std::nullopt;
    }
  }
  if (const auto id = scheme_from_string(base)) {
    const bool fourth = *id == SchemeId::STVDRK4 || *id == SchemeId::SSSPRK54 || *id == SchemeId::SSSPRK104;
    if (mode && !fourth) return std::nullopt;
    Method m;
    m.name = std::string(name);
    m.sphere = true;
    m.scheme = *id;
    m.mode = mode.value_or(CombineMode::ProgressiveSlerp);
    return m;
  }
  if (mode) return std::nullopt;
  if (const auto id = baseline_from_string(base)) {
    Method m;
    m.name = std::string(to_string(*id));
    m.sphere = false;
    m.baseline = *id;
    return m;
  }
  return std::nullopt;
}

std::vector<Method> all_methods() {
  std::vector<Method> out;
  for (const char* n : {"SFE", "STVDRK2", "STVDRK3", "STVDRK4", "SSSPRK54", "SSSPRK104", "FE", "RK2", "RK3", "RK4",
                        "TVDRK2", "TVDRK3", "PFE", "PRK2", "PRK3", "PRK4", "PTVDRK2", "PTVDRK2'", "PTVDRK3",
                        "PTVDRK3'"}) {
    out.push_back(*method_from_string(n));
  }
  return out;
}

std::vector<Method> comparison_methods() {
  std::vector<Method> out;
  for (const char* n : {"TVDRK2", "TVDRK3", "RK3", "RK4", "PRK3", "PRK4", "PTVDRK2", "PTVDRK2'", "PTVDRK3",
                        "PTVDRK3'", "SFE", "STVDRK2", "STVDRK3"}) {
    out.push_back(*method_from_string(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Order fitting

namespace {

double lsq_slope(const std::vector<ErrorRow>& rows, std::size_t first) {
  const double n = static_cast<double>(rows.size() - first);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < rows.size(); ++i) {
    const double x = std::log(rows[i].h), y = std::log(rows[i].err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::optional<double> try_fit_order(std::vector<ErrorRow> rows, const FitOptions& opts) {
  for (const ErrorRow& r : rows) {
    if (!(r.err > 0.0)) {
      throw Error(ErrorCode::NonPositiveError, "error " + std::to_string(r.err) + " at h = " + std::to_string(r.h));
    }
    if (!(r.h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  }
  std::erase_if(rows, [&](const ErrorRow& r) { return r.err < opts.floor || r.err > opts.ceiling; });
  std::sort(rows.begin(), rows.end(), [](const ErrorRow& a, const ErrorRow& b) { return a.h > b.h; });
  if (rows.size() < 3) return std::nullopt;
  std::size_t first = 0;
  if (opts.trim_coarse) {
    while (rows.size() - first > 4) {
      const double local = std::log(rows[first].err / rows[first + 1].err) / std::log(rows[first].h / rows[first + 1].h);
      if (std::abs(local - lsq_slope(rows, first + 1)) <= opts.trim_tolerance) break;
      ++first;
    }
  }
  return lsq_slope(rows, first);
}

double fit_order(std::vector<ErrorRow> rows, const FitOptions& opts) {
  const std::optional<double> order = try_fit_order(std::move(rows), opts);
  if (!order) throw Error(ErrorCode::InvalidArgument, "fewer than 3 rows inside the fitting window");
  return *order;
}

// ---------------------------------------------------------------------------
// Convergence

std::optional<ProblemId> problem_from_string(std::string_view name) {
  if (name == "vortex4") return ProblemId::Vortex4;
  if (name == "rotation") return ProblemId::Rotation;
  return std::nullopt;
}

ProblemSetup make_problem(ProblemId id) {
  if (id == ProblemId::Rotation) {
    const Vector3 omega(0.0, 0.0, 1.0);
    return {rigid_rotation_field(omega), UnitVector3::normalize(Vector3(1, 0, 0)), omega};
  }
  return {vortex4_field(), vortex4_config().p0, std::nullopt};
}

UnitVector3 reference_endpoint(const ProblemSetup& problem, double t_final, double h_min) {
  if (problem.omega) return rigid_rotation_exact(*problem.omega, problem.p0, t_final);
  try {
    return integrate_endpoint(SchemeId::STVDRK3, problem.field, problem.p0, 0.0, t_final, h_min / 100.0);
  } catch (const Error& e) {
    throw Error(ErrorCode::ReferenceUnavailable, "reference integration failed: " + std::string(e.what()));
  }
}

std::vector<double> parse_h_list(std::string_view spec) {
  auto number = [&](std::string_view s) {
    const std::string text(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse '" + text + "' in h list '" + std::string(spec) + "'");
    }
    return v;
  };
  auto integer = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad exponent '" + std::string(s) + "' in h list");
    }
    return v;
  };

  std::vector<double> out;
  if (const auto pow = spec.find("/2^"); pow != std::string_view::npos) {
    const double base = number(spec.substr(0, pow));
    const std::string_view range = spec.substr(pow + 3);
    const auto dots = range.find("..");
    const int k0 = integer(range.substr(0, dots));
    const int k1 = dots == std::string_view::npos ? k0 : integer(range.substr(dots + 2));
    if (k1 < k0) throw Error(ErrorCode::InvalidArgument, "empty exponent range in h list");
    for (int k = k0; k <= k1; ++k) out.push_back(std::ldexp(base, -k));
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = spec.find(',', start);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      out.push_back(number(spec.substr(start, end - start)));
      start = end + 1;
    }
  }
  for (double h : out) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step sizes must be positive");
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> default_h_list() { return parse_h_list("0.1/2^0..5"); }

std::vector<ConvergenceReport> run_convergence(ProblemId problem_id, const std::vector<Method>& methods,
                                               const std::vector<double>& h_list_in, double t_final) {
  if (h_list_in.empty()) throw Error(ErrorCode::InvalidArgument, "empty h list");
  std::vector<double> h_list = h_list_in;
  std::sort(h_list.begin(), h_list.end(), std::greater<>());
  const ProblemSetup problem = make_problem(problem_id);
  const UnitVector3 ref = reference_endpoint(problem, t_final, h_list.back());

  std::vector<ConvergenceReport> reports(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    reports[i].scheme = methods[i].name;
    reports[i].constrained = methods[i].constrained();
    reports[i].rows.resize(h_list.size());
  }

  // Independent (method, h) jobs; each writes its own slot.
  const std::size_t n_jobs = methods.size() * h_list.size();
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::optional<std::pair<std::size_t, Error>> failure;
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < n_jobs;) {
      const std::size_t i = job / h_list.size(), k = job % h_list.size();
      const double h = h_list[k];
      try {
        const Vector3 x = methods[i].endpoint(problem.field, problem.p0, 0.0, t_final, h);
        reports[i].rows[k] = {h, (x - ref.vec()).norm(), std::abs(x.norm() - 1.0)};
      } catch (const Error& e) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!failure || job < failure->first) failure.emplace(job, e);
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) {
    const std::size_t i = failure->first / h_list.size();
    throw Error(failure->second.code(), methods[i].name + ": " + failure->second.message());
  }

  for (ConvergenceReport& r : reports) {
    std::vector<ErrorRow> e2, en;
    for (const ConvergenceRow& row : r.rows) {
      e2.push_back({row.h, std::max(row.e2, std::numeric_limits<double>::min())});
      en.push_back({row.h, std::max(row.enorm, std::numeric_limits<double>::min())});
    }
    r.order_e2 = try_fit_order(e2);
    // constrained schemes only carry rounding drift in the norm
    if (!r.constrained) r.order_enorm = try_fit_order(en);
  }
  return reports;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports) {
  const auto old_precision = os.precision(17);
  os << "scheme,h,e2,enorm\n";
  for (const ConvergenceReport& r : reports) {
    for (const ConvergenceRow& row : r.rows) os << r.scheme << ',' << row.h << ',' << row.e2 << ',' << row.enorm << '\n';
  }
  os.precision(old_precision);
}

std::string convergence_json(const std::vector<ConvergenceReport>& reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const ConvergenceReport& r : reports) {
    nlohmann::ordered_json entry;
    entry["order_e2"] = r.order_e2 ? nlohmann::ordered_json(*r.order_e2) : nlohmann::ordered_json(nullptr);
    entry["order_enorm"] = r.order_enorm ? nlohmann::ordered_json(*r.order_enorm) : nlohmann::ordered_json(nullptr);
    j[r.scheme] = entry;
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Stability

std::string_view to_string(Verdict v) { return v == Verdict::Converged ? "Converged" : "Diverged"; }

Matrix3 stability_model_matrix() { return Vector3(0.5, -0.5, -0.5).asDiagonal(); }

UnitVector3 default_stability_start() { return project(Vector3(1, 1, 1)); }

Verdict stability_verdict(const std::vector<double>& d) {
  if (d.empty()) return Verdict::Diverged;
  if (d.back() < 1e-6) return Verdict::Converged;
  const std::size_t n = d.size();
  if (n < 20) return Verdict::Diverged;
  auto window_max = [&](double lo, double hi) {
    const auto a = static_cast<std::size_t>(lo * static_cast<double>(n));
    const auto b = std::max(a + 1, static_cast<std::size_t>(hi * static_cast<double>(n)));
    return *std::max_element(d.begin() + static_cast<std::ptrdiff_t>(a), d.begin() + static_cast<std::ptrdiff_t>(b));
  };
  const double mid = window_max(0.4, 0.5);
  const double tail = window_max(0.9, 1.0);
  return tail < 0.5 * mid ? Verdict::Converged : Verdict::Diverged;
}

StabilityRun run_stability(const Method& method, double h, std::size_t n_steps, const UnitVector3& q0) {
  const VelocityField g = projected_linear_field(stability_model_matrix());
  const UnitVector3 e1 = UnitVector3::normalize(Vector3(1, 0, 0));
  auto dist = [&](const Vector3& x) {
    const UnitVector3 p = project(x);
    return std::min(geodesic_distance(p, e1), geodesic_distance(p, -e1));
  };
  StabilityRun run;
  run.scheme = method.name;
  run.h = h;
  run.n_steps = n_steps;
  run.distance.reserve(n_steps + 1);
  Vector3 x = q0.vec();
  run.distance.push_back(dist(x));
  try {
    for (std::size_t k = 0; k < n_steps; ++k) {
      x = method.step(g, x, static_cast<double>(k) * h, h);
      run.distance.push_back(dist(x));
    }
    run.verdict = stability_verdict(run.distance);
  } catch (const Error&) {
    run.verdict = Verdict::Diverged;
  }
  return run;
}

void write_stability_csv(std::ostream& os, const StabilityRun& run) {
  const auto old_precision = os.precision(17);
  os << "step,t,distance\n";
  for (std::size_t k = 0; k < run.distance.size(); ++k) {
    os << k << ',' << static_cast<double>(k) * run.h << ',' << run.distance[k] << '\n';
  }
  os.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Verifications

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass || c.informational; });
}

void print_report(std::ostream& os, const VerifyReport& report) {
  const auto old_precision = os.precision(6);
  for (const CheckLine& c : report.checks) {
    os << (c.informational ? "INFO " : c.pass ? "PASS " : "FAIL ") << report.target << ": " << c.label << "  measured=" << c.measured
       << "  expected=" << c.expected << '\n';
  }
  os << (report.pass() ? "PASS " : "FAIL ") << report.target << '\n';
  os.precision(old_precision);
}

namespace {

CheckLine relative_check(std::string label, double measured, double expected, double rel_tol) {
  const bool ok = std::abs(measured - expected) <= rel_tol * std::abs(expected);
  return {std::move(label), measured, expected, ok};
}

CheckLine band_check(std::string label, double measured, double expected, double tol) {
  const bool ok = std::abs(measured - expected) <= tol;
  return {std::move(label), measured, expected, ok};
}

CheckLine bound_check(std::string label, double measured, double bound) {
  return {std::move(label), measured, bound, measured <= bound};
}

// Two Richardson passes on c(h) = c + k₁h^r + k₂h^{2r} sampled at h, h/2, h/4.
template <class Fn>
double richardson(Fn&& c, double h, int r) {
  const double f = std::ldexp(1.0, r);
  const double c0 = c(h), c1 = c(0.5 * h), c2 = c(0.25 * h);
  const double r0 = (f * c1 - c0) / (f - 1.0), r1 = (f * c2 - c1) / (f - 1.0);
  return (f * f * r1 - r0) / (f * f - 1.0);
}

}  // namespace

double tvdrk2_planar_norm(double a, double b, double h) {
  const double root = std::sqrt(1.0 + a * a * h * h);
  const double x = 0.5 * a * h + b * h / (2.0 * root);
  const double y = -1.0 + a * b * h * h / (2.0 * root);
  return std::hypot(x, y);
}

double tvdrk2_norm_h4_coefficient(double a, double b) { return -(std::pow(a - b, 4) - 16.0 * a * a * a * b) / 128.0; }

double tvdrk2_norm_h4_coefficient_quoted(double a, double b) {
  return -(std::pow(a - b, 4) + 16.0 * a * a * a * b) / 128.0;
}

VerifyReport verify_tvdrk2_norm(double a, double b) {
  VerifyReport rep{"appendix-a", {}};
  const double c2_exact = (a - b) * (a - b) / 8.0;
  const double c4_exact = tvdrk2_norm_h4_coefficient(a, b);

  const double c2 = richardson([&](double h) { return (tvdrk2_planar_norm(a, b, h) - 1.0) / (h * h); }, 0.04, 2);
  const double c4 = richardson(
      [&](double h) { return (tvdrk2_planar_norm(a, b, h) - 1.0 - c2_exact * h * h) / std::pow(h, 4); }, 0.04, 2);
  rep.checks.push_back(relative_check("h^2 coefficient (a-b)^2/8", c2, c2_exact, 0.01));
  rep.checks.push_back(relative_check("h^4 coefficient -((a-b)^4-16a^3b)/128", c4, c4_exact, 0.02));
  CheckLine quoted = relative_check("h^4 coefficient with +16a^3b (sign error)", c4,
                                     tvdrk2_norm_h4_coefficient_quoted(a, b), 0.02);
  quoted.informational = true;
  rep.checks.push_back(quoted);

  // A real TVDRK2 step on a rigid rotation in the plane z = 0 is the a = b case.
  const Vector3 p0(0.0, -1.0, 0.0);
  const VelocityField rot = rigid_rotation_field(Vector3(0.0, 0.0, a));
  double worst = 0.0;
  for (double h = 0.2; h > 1e-3; h *= 0.5) {
    const double n = baseline_step(BaselineId::TVDRK2, rot, p0, 0.0, h).norm();
    worst = std::max(worst, std::abs(n - tvdrk2_planar_norm(a, a, h)));
  }
  rep.checks.push_back(bound_check("TVDRK2 step on rotation vs planar a=b norm", worst, 1e-14));

  // Variable speed along the circle: a − b = O(h), so the norm defect is O(h⁴).
  const VelocityField varying(
      [](const UnitVector3& p, double) -> Vector3 {
        return (1.0 + 0.5 * p.x()) * Vector3(0, 0, 1).cross(p.vec());
      },
      true, "variable-rotation");
  std::vector<ErrorRow> rows;
  for (int k = 0; k < 5; ++k) {
    const double h = std::ldexp(0.1, -k);
    rows.push_back({h, std::abs(baseline_step(BaselineId::TVDRK2, varying, p0, 0.0, h).norm() - 1.0)});
  }
  rep.checks.push_back(band_check("norm defect order with Lipschitz speed", fit_order(rows, {0.0, 1.0, false}), 4.0, 0.3));
  return rep;
}

VerifyReport verify_angle_recurrences() {
  VerifyReport rep{"appendix-b", {}};
  const double e = std::exp(1.0);
  auto global_order = [&](BaselineId id) {
    std::vector<ErrorRow> rows;
    for (int n = 16; n <= 512; n *= 2) {
      const double h = 1.0 / n;
      double theta = 1.0;
      for (int k = 0; k < n; ++k) theta = angle_recurrence(id, theta, h);
      rows.push_back({h, std::abs(theta - e)});
    }
    return fit_order(rows, {0.0, 10.0, false});
  };
  rep.checks.push_back(band_check("PFE order", global_order(BaselineId::PFE), 1.0, 0.1));
  rep.checks.push_back(band_check("PTVDRK2' order", global_order(BaselineId::PTVDRK2P), 2.0, 0.1));
  rep.checks.push_back(band_check("PTVDRK3' order", global_order(BaselineId::PTVDRK3P), 2.0, 0.1));

  auto cubic = [](BaselineId id, auto&& reference) {
    return richardson([&](double h) { return (angle_recurrence(id, 1.0, h) - reference(h)) / (h * h * h); }, 0.02, 1);
  };
  const auto taylor2 = [](double h) { return 1.0 + h + 0.5 * h * h; };
  const auto exact = [](double h) { return std::exp(h); };
  rep.checks.push_back(relative_check("PTVDRK2' h^3 coefficient", cubic(BaselineId::PTVDRK2P, taylor2), -1.0 / 3.0, 0.05));
  rep.checks.push_back(relative_check("PTVDRK3' h^3 coefficient", cubic(BaselineId::PTVDRK3P, taylor2), -1.0 / 6.0, 0.05));
  rep.checks.push_back(
      relative_check("PTVDRK3' leading error coefficient vs e^h", cubic(BaselineId::PTVDRK3P, exact), -1.0 / 3.0, 0.05));
  return rep;
}

VerifyReport verify_slerp_parity(int n_pairs, std::uint64_t seed) {
  VerifyReport rep{"slerp-parity", {}};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  auto random_point = [&] { return project(Vector3(normal(rng), normal(rng), normal(rng))); };

  double parity = 0.0, scalar = 0.0, endpoints = 0.0, midpoint = 0.0;
  for (int i = 0; i < n_pairs;) {
    const UnitVector3 p = random_point(), q = random_point();
    if (geodesic_distance(p, q) > kPi - 1e-6) continue;
    ++i;
    const double t = unit(rng);
    const quat::Quaternion full = quat::quat_slerp_full(p, q, t);
    parity = std::max(parity, (full.u - slerp(p, q, t).vec()).norm());
    scalar = std::max(scalar, std::abs(full.a));
    for (auto fn : {+[](const UnitVector3& x, const UnitVector3& y, double s) { return slerp(x, y, s); },
                    +[](const UnitVector3& x, const UnitVector3& y, double s) { return quat::quat_slerp(x, y, s); }}) {
      endpoints = std::max({endpoints, (fn(p, q, 0.0).vec() - p.vec()).norm(), (fn(p, q, 1.0).vec() - q.vec()).norm()});
      const UnitVector3 m = fn(p, q, 0.5);
      midpoint = std::max({midpoint, (m.vec() - fn(q, p, 0.5).vec()).norm(),
                           std::abs(geodesic_distance(m, p) - geodesic_distance(m, q))});
    }
  }
  rep.checks.push_back(bound_check("max |quaternion - geodesic| over random pairs", parity, 1e-12));
  rep.checks.push_back(bound_check("max |scalar part| of quaternion slerp", scalar, 1e-12));
  rep.checks.push_back(bound_check("endpoint identities", endpoints, 1e-13));
  rep.checks.push_back(bound_check("midpoint symmetry and equidistance", midpoint, 1e-13));
  return rep;
}

VerifyReport verify_vortex_orders(std::vector<ConvergenceReport>* reports_out) {
  static const std::map<std::string, double> kE2 = {
      {"TVDRK2", 2}, {"TVDRK3", 3}, {"RK3", 3},      {"RK4", 4},      {"PRK3", 3},    {"PRK4", 4},   {"PTVDRK2", 2},
      {"PTVDRK2'", 2}, {"PTVDRK3", 3}, {"PTVDRK3'", 2}, {"SFE", 1}, {"STVDRK2", 2}, {"STVDRK3", 3},
  };
  static const std::map<std::string, double> kNorm = {{"TVDRK2", 3}, {"TVDRK3", 3}, {"RK3", 3}, {"RK4", 4}};

  const std::vector<ConvergenceReport> reports = run_convergence(ProblemId::Vortex4, comparison_methods(), default_h_list());
  VerifyReport rep{"table2", {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const ConvergenceReport& r : reports) {
    const double expected = kE2.at(r.scheme);
    const double got = r.order_e2.value_or(nan);
    rep.checks.push_back({r.scheme + " E2 order", got, expected, std::abs(got - expected) <= 0.25});
    if (r.constrained) {
      double worst = 0.0;
      for (const ConvergenceRow& row : r.rows) worst = std::max(worst, row.enorm);
      rep.checks.push_back(bound_check(r.scheme + " max E_norm", worst, 1e-12));
    } else if (const auto it = kNorm.find(r.scheme); it != kNorm.end()) {
      const double g = r.order_enorm.value_or(nan);
      rep.checks.push_back({r.scheme + " E_norm order", g, it->second, std::abs(g - it->second) <= 0.3});
    }
  }
  if (reports_out) *reports_out = reports;
  return rep;
}

}  // namespace sphrk

#include "sphrk/integrators.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "sphrk/detail/tvd_stages.hpp"

namespace sphrk {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::SFE: return "SFE";
    case SchemeId::STVDRK2: return "STVDRK2";
    case SchemeId::STVDRK3: return "STVDRK3";
    case SchemeId::STVDRK4: return "STVDRK4";
    case SchemeId::SSSPRK54: return "SSSPRK54";
    case SchemeId::SSSPRK104: return "SSSPRK104";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_string(std::string_view name) {
  for (SchemeId id : {SchemeId::SFE, SchemeId::STVDRK2, SchemeId::STVDRK3, SchemeId::STVDRK4,
                      SchemeId::SSSPRK54, SchemeId::SSSPRK104}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::string_view to_string(CombineMode mode) {
  switch (mode) {
    case CombineMode::ProgressiveSlerp: return "progressive";
    case CombineMode::FrechetMean: return "frechet";
    case CombineMode::ProjectedAverage: return "projected-average";
  }
  return "?";
}

namespace {

constexpr double kHalfPi = 0.5 * kPi;

void guard_step(double travel, double bound) {
  if (!(travel < bound)) {
    throw Error(ErrorCode::StepTooLarge, "stage travel h*|f| = " + std::to_string(travel) +
                                             " violates the bound " + std::to_string(bound));
  }
}

/// exp-map / SLERP space for the shared TVD stage template.
struct SphereSpace {
  const VelocityField& f;
  double bound;

  UnitVector3 euler(const UnitVector3& p, double t, double dt) const {
    const Vector3 v = f.tangent(p, t);
    guard_step(std::abs(dt) * v.norm(), bound);
    return exp_map(p, dt * v);
  }

  UnitVector3 blend(const UnitVector3& a, const UnitVector3& b, double w) const { return slerp(a, b, w); }
};

// A stage of a scheme written in "folded" form: each term moves an earlier
// stage by an exponential-map step with coefficient `ratio` (β/α), and the
// resulting points are folded left-to-right with SLERP parameters `folds`.
struct Term {
  std::size_t source;
  double ratio;
};

struct FoldedStage {
  std::vector<Term> terms;
  std::vector<double> folds;                  // terms.size() − 1 entries
  std::vector<double> frechet_weights = {};   // explicit weights, override the fold-derived ones
};

using FoldedScheme = std::vector<FoldedStage>;

/// Convex weights equivalent to a left fold with parameters `folds`.
std::vector<double> fold_weights(std::span<const double> folds) {
  std::vector<double> w(folds.size() + 1, 0.0);
  double remaining = 1.0;
  for (std::size_t i = folds.size(); i > 0; --i) {
    w[i] = remaining * folds[i - 1];
    remaining *= 1.0 - folds[i - 1];
  }
  w[0] = remaining;
  return w;
}

UnitVector3 combine(std::span<const UnitVector3> pts, const FoldedStage& stage, CombineMode mode) {
  if (pts.size() == 1) return pts[0];
  if (pts.size() == 2 || mode == CombineMode::ProgressiveSlerp) {
    UnitVector3 r = pts[0];
    for (std::size_t k = 1; k < pts.size(); ++k) r = slerp(r, pts[k], stage.folds[k - 1]);
    return r;
  }
  const std::vector<double> w = stage.frechet_weights.empty() ? fold_weights(stage.folds) : stage.frechet_weights;
  std::vector<WeightedPoint> wp;
  for (std::size_t k = 0; k < pts.size(); ++k) wp.push_back({w[k], pts[k]});
  const WeightedPoints weighted(std::move(wp));
  if (mode == CombineMode::ProjectedAverage) return weighted.projected_average();
  return frechet_mean(weighted);
}

UnitVector3 run_folded(const FoldedScheme& scheme, const VelocityField& f, const UnitVector3& p, double t,
                       double h, CombineMode mode) {
  std::vector<UnitVector3> stage_pts{p};
  std::vector<double> stage_c{0.0};
  std::map<std::size_t, Vector3> velocity;                     // f(q_k, t + c_k h)
  std::map<std::pair<std::size_t, double>, UnitVector3> moved;  // exp_{q_k}(ratio h f)

  auto velocity_at = [&](std::size_t k) -> const Vector3& {
    auto it = velocity.find(k);
    if (it == velocity.end()) it = velocity.emplace(k, f.tangent(stage_pts[k], t + stage_c[k] * h)).first;
    return it->second;
  };

  std::vector<UnitVector3> pts;
  for (const FoldedStage& stage : scheme) {
    pts.clear();
    for (const Term& term : stage.terms) {
      if (term.ratio == 0.0) {
        pts.push_back(stage_pts[term.source]);
        continue;
      }
      const auto key = std::make_pair(term.source, term.ratio);
      auto it = moved.find(key);
      if (it == moved.end()) {
        const Vector3& v = velocity_at(term.source);
        const double dt = term.ratio * h;
        guard_step(std::abs(dt) * v.norm(), kHalfPi);
        it = moved.emplace(key, exp_map(stage_pts[term.source], dt * v)).first;
      }
      pts.push_back(it->second);
    }
    const std::vector<double> w = fold_weights(stage.folds);
    double c = 0.0;
    for (std::size_t k = 0; k < stage.terms.size(); ++k) {
      c += w[k] * (stage_c[stage.terms[k].source] + stage.terms[k].ratio);
    }
    stage_pts.push_back(combine(pts, stage, mode));
    stage_c.push_back(c);
  }
  return stage_pts.back();
}

// Coefficients below are the 15-digit decimals of the sphere versions
// of the Gottlieb–Shu four-stage, Spiteri–Ruuth SSPRK(5,4) and Ketcheson
// SSPRK(10,4) methods.
const FoldedScheme& stvdrk4_scheme() {
  static const FoldedScheme s = {
      {{{0, 0.500000000000000}}, {}},
      {{{0, -1.065687335761845}, {1, 1.068486941019387}}, {0.594375000000000}},
      {{{0, -0.947054029524533}, {1, -1.065495848810696}, {2, 1.066666666666667}},
       {0.917544541224197, 0.738093750000000},
       {0.0215956, 0.24031065, 0.73809375}},
      {{{0, 0.500000000000000}, {1, 0.816060062020566}, {2, 0.0}, {3, 0.500000000000000}},
       {0.505236249690773, 0.393650000000000, 0.333333333333333}},
  };
  return s;
}

const FoldedScheme& ssprk54_scheme() {
  static const FoldedScheme s = {
      {{{0, 0.39175222700392}}, {}},
      {{{0, 0.0}, {1, 0.663050807590193}}, {0.55562950593266}},
      {{{0, 0.0}, {2, 0.663050807607172}}, {0.37989814861460}},
      {{{0, 0.0}, {3, 0.663050807601060}}, {0.82192004589227}},
      {{{0, 0.0}, {2, 0.0}, {3, 0.663050807634935}, {4, 0.648818932180072}},
       {0.986961045402787, 0.195804064212316, 0.348336757736944}},
  };
  return s;
}

const FoldedScheme& ssprk104_scheme() {
  static const FoldedScheme s = [] {
    constexpr double sixth = 1.0 / 6.0;
    FoldedScheme out;
    for (std::size_t i = 0; i < 4; ++i) out.push_back({{{i, sixth}}, {}});
    out.push_back({{{0, 0.0}, {4, sixth}}, {0.4}});
    for (std::size_t i = 5; i < 9; ++i) out.push_back({{{i, sixth}}, {}});
    out.push_back({{{0, 0.0}, {4, sixth}, {9, sixth}}, {0.9, 0.6}});
    return out;
  }();
  return s;
}

FoldedScheme fold_tableau(const SspTableau& tab) {
  FoldedScheme out;
  for (std::size_t i = 1; i <= tab.stages(); ++i) {
    FoldedStage stage;
    double acc = 0.0;
    for (std::size_t k = 0; k < i; ++k) {
      const double a = tab.alpha(i, k);
      if (a == 0.0) continue;
      stage.terms.push_back({k, tab.beta(i, k) / a});
      acc += a;
      if (stage.terms.size() > 1) stage.folds.push_back(a / acc);
    }
    out.push_back(std::move(stage));
  }
  return out;
}

}  // namespace

UnitVector3 sfe_step(const VelocityField& f, const UnitVector3& p, double t, double h) {
  return detail::tvd1_stages(SphereSpace{f, kPi}, p, t, h);
}

UnitVector3 stvdrk2_step(const VelocityField& f, const UnitVector3& p, double t, double h) {
  return detail::tvd2_stages(SphereSpace{f, kHalfPi}, p, t, h);
}

UnitVector3 stvdrk3_step(const VelocityField& f, const UnitVector3& p, double t, double h) {
  return detail::tvd3_stages(SphereSpace{f, kHalfPi}, p, t, h);
}

UnitVector3 stvdrk4_step(const VelocityField& f, const UnitVector3& p, double t, double h, CombineMode mode) {
  return run_folded(stvdrk4_scheme(), f, p, t, h, mode);
}

UnitVector3 ssprk54_step(const VelocityField& f, const UnitVector3& p, double t, double h, CombineMode mode) {
  return run_folded(ssprk54_scheme(), f, p, t, h, mode);
}

UnitVector3 ssprk104_step(const VelocityField& f, const UnitVector3& p, double t, double h, CombineMode mode) {
  return run_folded(ssprk104_scheme(), f, p, t, h, mode);
}

UnitVector3 step(SchemeId id, const VelocityField& f, const UnitVector3& p, double t, double h, CombineMode mode) {
  switch (id) {
    case SchemeId::SFE: return sfe_step(f, p, t, h);
    case SchemeId::STVDRK2: return stvdrk2_step(f, p, t, h);
    case SchemeId::STVDRK3: return stvdrk3_step(f, p, t, h);
    case SchemeId::STVDRK4: return stvdrk4_step(f, p, t, h, mode);
    case SchemeId::SSSPRK54: return ssprk54_step(f, p, t, h, mode);
    case SchemeId::SSSPRK104: return ssprk104_step(f, p, t, h, mode);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

StepCost step_cost(SchemeId id) {
  auto count = [](const FoldedScheme& s) {
    StepCost c;
    std::map<std::pair<std::size_t, double>, int> unique;
    for (const FoldedStage& st : s) {
      for (const Term& t : st.terms) {
        if (t.ratio != 0.0) unique[{t.source, t.ratio}] = 1;
      }
      c.slerps += static_cast<int>(st.folds.size());
    }
    c.exp_maps = static_cast<int>(unique.size());
    return c;
  };
  switch (id) {
    case SchemeId::SFE: return {1, 0};
    case SchemeId::STVDRK2: return {2, 1};
    case SchemeId::STVDRK3: return {3, 2};
    case SchemeId::STVDRK4: return count(stvdrk4_scheme());
    case SchemeId::SSSPRK54: return count(ssprk54_scheme());
    case SchemeId::SSSPRK104: return count(ssprk104_scheme());
  }
  return {};
}

UnitVector3 progressive_slerp_combine(std::span<const UnitVector3> points, std::span<const double> alphas) {
  if (points.empty() || points.size() != alphas.size()) {
    throw Error(ErrorCode::InvalidArgument, "progressive_slerp_combine needs one alpha per point");
  }
  double total = 0.0;
  for (double a : alphas) {
    if (a < 0.0) throw Error(ErrorCode::InvalidArgument, "negative combination weight");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "combination weights must sum to 1");
  }
  std::optional<UnitVector3> acc;
  double seen = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (alphas[k] == 0.0) continue;
    seen += alphas[k];
    acc = acc ? slerp(*acc, points[k], alphas[k] / seen) : points[k];
  }
  return *acc;
}

SspTableau::SspTableau(std::vector<std::vector<double>> alpha, std::vector<std::vector<double>> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() != beta_.size() || alpha_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "alpha and beta must have the same non-zero stage count");
  }
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i].size() != i + 1 || beta_[i].size() != i + 1) {
      throw Error(ErrorCode::InvalidArgument, "stage " + std::to_string(i + 1) + " must have " +
                                                  std::to_string(i + 1) + " coefficients");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k <= i; ++k) {
      const double a = alpha_[i][k];
      if (a < 0.0) throw Error(ErrorCode::InvalidArgument, "negative alpha");
      if (a == 0.0 && beta_[i][k] != 0.0) throw Error(ErrorCode::InvalidArgument, "alpha = 0 with beta != 0");
      sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "alpha row " + std::to_string(i + 1) + " does not sum to 1");
    }
  }
}

SspTableau SspTableau::tvdrk2() { return SspTableau({{1.0}, {0.5, 0.5}}, {{1.0}, {0.0, 0.5}}); }

SspTableau SspTableau::tvdrk3() {
  return SspTableau({{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}},
                    {{1.0}, {0.0, 0.25}, {0.0, 0.0, 2.0 / 3.0}});
}

SspTableau SspTableau::ssprk104() {
  std::vector<std::vector<double>> a(10), b(10);
  for (std::size_t i = 0; i < 10; ++i) {
    a[i].assign(i + 1, 0.0);
    b[i].assign(i + 1, 0.0);
  }
  auto chain = [&](std::size_t i) {  // u(i) = u(i−1) + h/6 f(u(i−1))
    a[i - 1][i - 1] = 1.0;
    b[i - 1][i - 1] = 1.0 / 6.0;
  };
  for (std::size_t i = 1; i <= 4; ++i) chain(i);
  a[4][0] = 3.0 / 5.0;
  a[4][4] = 2.0 / 5.0;
  b[4][4] = 1.0 / 15.0;
  for (std::size_t i = 6; i <= 9; ++i) chain(i);
  a[9][0] = 1.0 / 25.0;
  a[9][4] = 9.0 / 25.0;
  b[9][4] = 3.0 / 50.0;
  a[9][9] = 3.0 / 5.0;
  b[9][9] = 1.0 / 10.0;
  return SspTableau(std::move(a), std::move(b));
}

UnitVector3 ssp_step(const SspTableau& tableau, const VelocityField& f, const UnitVector3& p, double t, double h,
                     CombineMode mode) {
  return run_folded(fold_tableau(tableau), f, p, t, h, mode);
}

Trajectory integrate(SchemeId id, const VelocityField& f, const UnitVector3& p0, double t0, double t_final,
                     double h, CombineMode mode) {
  return detail::drive(
      [&](const UnitVector3& p, double t, double dt) { return step(id, f, p, t, dt, mode); }, p0, t0, t_final, h);
}

UnitVector3 integrate_endpoint(SchemeId id, const VelocityField& f, const UnitVector3& p0, double t0,
                               double t_final, double h, CombineMode mode) {
  const detail::GridPlan plan = detail::plan_grid(t0, t_final, h);
  UnitVector3 p = p0;
  std::size_t k = 0;
  try {
    for (; k < plan.full_steps; ++k) p = step(id, f, p, t0 + static_cast<double>(k) * h, h, mode);
    if (plan.partial > 0.0) p = step(id, f, p, t0 + static_cast<double>(k) * h, plan.partial, mode);
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(e, k);
  }
  return p;
}

}  // namespace sphrk

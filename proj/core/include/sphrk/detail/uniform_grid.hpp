#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sphrk/errors.hpp"

namespace sphrk::detail {

struct GridPlan {
  std::size_t full_steps = 0;
  double partial = 0.0;  // length of a final reduced step, 0 if none
};

/// Splits [t0, t_final] into steps of h. A span that is an integer multiple of h
/// up to rounding gets exactly that many steps; otherwise a final reduced step
/// closes the interval.
inline GridPlan plan_grid(double t0, double t_final, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  const double span = t_final - t0;
  if (span < 0.0) throw Error(ErrorCode::InvalidArgument, "t_final precedes t0");
  const double ratio = span / h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return {static_cast<std::size_t>(nearest), 0.0};
  }
  const auto n = static_cast<std::size_t>(std::floor(ratio));
  return {n, span - static_cast<double>(n) * h};
}

template <class State>
struct Sample {
  double t;
  State state;
};

/// Runs `step(state, t, h)` over the uniform grid and records every state.
/// Stepper errors are rethrown as StepError carrying the step index.
template <class State, class StepFn>
std::vector<Sample<State>> drive(StepFn&& step, const State& x0, double t0, double t_final, double h) {
  const GridPlan plan = plan_grid(t0, t_final, h);
  std::vector<Sample<State>> out;
  out.reserve(plan.full_steps + 2);
  out.push_back({t0, x0});
  State x = x0;
  std::size_t k = 0;
  try {
    for (; k < plan.full_steps; ++k) {
      const double t = t0 + static_cast<double>(k) * h;
      x = step(x, t, h);
      out.push_back({k + 1 == plan.full_steps && plan.partial == 0.0 ? t_final : t + h, x});
    }
    if (plan.partial > 0.0) {
      x = step(x, t0 + static_cast<double>(k) * h, plan.partial);
      out.push_back({t_final, x});
    }
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(e, k);
  }
  return out;
}

}  // namespace sphrk::detail

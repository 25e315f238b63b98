#pragma once

// Stage structure of the low-order TVD/SSP Runge–Kutta family, written once
// against a "space" policy. A space supplies
//
//   State euler(const State& x, double t, double dt) const;   // one Euler-type move
//   State blend(const State& a, const State& b, double w) const;  // (1−w)a ⊕ w b
//
// On the sphere euler is the exponential map and blend is SLERP; in R³ they are
// the forward-Euler update and the affine combination.

namespace sphrk::detail {

template <class Space, class State>
State tvd1_stages(const Space& space, const State& x, double t, double h) {
  return space.euler(x, t, h);
}

template <class Space, class State>
State tvd2_stages(const Space& space, const State& x, double t, double h) {
  const State q1 = space.euler(x, t, h);
  const State q2 = space.euler(q1, t + h, h);
  return space.blend(x, q2, 0.5);
}

template <class Space, class State>
State tvd3_stages(const Space& space, const State& x, double t, double h) {
  const State q1 = space.euler(x, t, h);
  const State q2 = space.euler(q1, t + h, h);
  const State q3 = space.blend(x, q2, 0.25);
  const State q4 = space.euler(q3, t + 0.5 * h, h);
  return space.blend(x, q4, 2.0 / 3.0);
}

template <class Space, class State>
State tvd_stages(int order, const Space& space, const State& x, double t, double h) {
  switch (order) {
    case 1: return tvd1_stages(space, x, t, h);
    case 2: return tvd2_stages(space, x, t, h);
    default: return tvd3_stages(space, x, t, h);
  }
}

}  // namespace sphrk::detail

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expdq/errors.hpp"
#include "expdq/semidiscrete.hpp"
#include "expdq/types.hpp"

namespace expdq {

// Five-stage fourth-order strong-stability-preserving scheme.  a* weigh
// states in each stage's convex combination, d* scale the dt*rhs term, b*
// form the final combination.
template <class Scalar = double>
struct SspRk54Tableau {
  Scalar d10 = Scalar(0.391752226571890);
  Scalar a20 = Scalar(0.444370493651235);
  Scalar a21 = Scalar(0.555629506348765);
  Scalar d21 = Scalar(0.368410593050371);
  Scalar a30 = Scalar(0.620101851488403);
  Scalar a32 = Scalar(0.379898148511597);
  Scalar d32 = Scalar(0.251891774271694);
  Scalar a40 = Scalar(0.178079954393132);
  Scalar a43 = Scalar(0.821920045606868);
  Scalar d43 = Scalar(0.544974750228521);
  Scalar b2 = Scalar(0.517231671970585);
  Scalar b3 = Scalar(0.096059710526147);
  Scalar d3 = Scalar(0.063692468666290);
  Scalar b4 = Scalar(0.386708617503269);
  Scalar d4 = Scalar(0.226007483236906);

  // effective time offset (in units of dt) at which each stage's state lives
  std::array<Scalar, 5> stage_times() const {
    const Scalar t1 = d10;
    const Scalar t2 = a21 * t1 + d21;
    const Scalar t3 = a32 * t2 + d32;
    const Scalar t4 = a43 * t3 + d43;
    return {Scalar(0), t1, t2, t3, t4};
  }
};

namespace detail {

// instability shows up as exploding magnitudes long before IEEE overflow;
// the cap turns that into a diagnosable error instead of inf-inf noise
template <class Scalar>
void guard_finite(const State<Scalar>& s, int stage, Scalar step_time) {
  const Scalar cap = Scalar(1e80);
  auto bad = [&](const MatrixX<Scalar>& m) {
    return !m.allFinite() || m.cwiseAbs().maxCoeff() > cap;
  };
  if (bad(s.u) || bad(s.v))
    throw NonFinite("stage " + std::to_string(stage) +
                        " produced a non-finite or oversized value in the step"
                        " starting at t = " +
                        std::to_string(static_cast<double>(step_time)),
                    stage, static_cast<double>(step_time));
}

}  // namespace detail

// One step from state.t to state.t + dt.  rhs_eval(state) -> (du, dv);
// boundary_closer(state, t) -> state with faces rewritten for time t.  The
// input must arrive with its boundary closed at state.t; the output leaves
// closed at state.t + dt.  freeze_stage_times pins every stage closure to the
// step's start time (comparison switch; interior stage times are unaffected).
template <class Scalar, class Rhs, class Closer>
State<Scalar> step(State<Scalar> state, Scalar dt, Rhs&& rhs_eval,
                   Closer&& boundary_closer, bool freeze_stage_times = false) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  const SspRk54Tableau<Scalar> tb;
  const auto tau = tb.stage_times();
  const Scalar t0 = state.t;
  auto close_time = [&](int k) { return freeze_stage_times ? t0 : t0 + tau[k] * dt; };

  const State<Scalar>& s0 = state;
  const auto k0 = rhs_eval(s0);

  State<Scalar> s1;
  s1.u = s0.u + tb.d10 * dt * k0.first;
  s1.v = s0.v + tb.d10 * dt * k0.second;
  s1.t = t0 + tau[1] * dt;
  detail::guard_finite(s1, 1, t0);
  s1 = boundary_closer(std::move(s1), close_time(1));
  const auto k1 = rhs_eval(s1);

  State<Scalar> s2;
  s2.u = tb.a20 * s0.u + tb.a21 * s1.u + tb.d21 * dt * k1.first;
  s2.v = tb.a20 * s0.v + tb.a21 * s1.v + tb.d21 * dt * k1.second;
  s2.t = t0 + tau[2] * dt;
  detail::guard_finite(s2, 2, t0);
  s2 = boundary_closer(std::move(s2), close_time(2));
  const auto k2 = rhs_eval(s2);

  State<Scalar> s3;
  s3.u = tb.a30 * s0.u + tb.a32 * s2.u + tb.d32 * dt * k2.first;
  s3.v = tb.a30 * s0.v + tb.a32 * s2.v + tb.d32 * dt * k2.second;
  s3.t = t0 + tau[3] * dt;
  detail::guard_finite(s3, 3, t0);
  s3 = boundary_closer(std::move(s3), close_time(3));
  const auto k3 = rhs_eval(s3);

  State<Scalar> s4;
  s4.u = tb.a40 * s0.u + tb.a43 * s3.u + tb.d43 * dt * k3.first;
  s4.v = tb.a40 * s0.v + tb.a43 * s3.v + tb.d43 * dt * k3.second;
  s4.t = t0 + tau[4] * dt;
  detail::guard_finite(s4, 4, t0);
  s4 = boundary_closer(std::move(s4), close_time(4));
  const auto k4 = rhs_eval(s4);

  State<Scalar> out;
  out.u = tb.b2 * s2.u + tb.b3 * s3.u + tb.d3 * dt * k3.first +
          tb.b4 * s4.u + tb.d4 * dt * k4.first;
  out.v = tb.b2 * s2.v + tb.b3 * s3.v + tb.d3 * dt * k3.second +
          tb.b4 * s4.v + tb.d4 * dt * k4.second;
  out.t = t0 + dt;
  detail::guard_finite(out, 5, t0);
  // the faces are algebraic: the stage combination leaves them at a blended
  // time, so the finished state is re-closed at its own time
  return boundary_closer(std::move(out), out.t);
}

// Growth factor of one step on du/dt = lambda*u, z = dt*lambda.  The scheme
// is linear in the state, so this is exact, not a linearization.
inline std::complex<double> amplification(std::complex<double> z) {
  const SspRk54Tableau<double> tb;
  using C = std::complex<double>;
  const C u0 = 1.0;
  const C u1 = u0 + tb.d10 * z * u0;
  const C u2 = tb.a20 * u0 + tb.a21 * u1 + tb.d21 * z * u1;
  const C u3 = tb.a30 * u0 + tb.a32 * u2 + tb.d32 * z * u2;
  const C u4 = tb.a40 * u0 + tb.a43 * u3 + tb.d43 * z * u3;
  return tb.b2 * u2 + tb.b3 * u3 + tb.d3 * z * u3 + tb.b4 * u4 + tb.d4 * z * u4;
}

template <class Scalar>
struct IntegrateOptions {
  std::vector<Scalar> observe_times;
  bool freeze_stage_times = false;
  CornerOrder corner_order = CornerOrder::YWins;
};

// Drive the semidiscrete system from t = 0 to t_final.  Times are computed
// as step_index * dt, never accumulated.  The observer sees a const state
// with closed boundary at each requested time (which must be step-aligned).
template <class Scalar, class Observer>
State<Scalar> integrate(const TelegraphSpec<Scalar>& spec,
                        const Grid<Scalar>& grid, const WeightSet<Scalar>& wx,
                        const WeightSet<Scalar>& wy, Scalar dt, Scalar t_final,
                        Observer&& observer,
                        const IntegrateOptions<Scalar>& opts = {}) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (t_final < 0) throw std::invalid_argument("t_final must be nonnegative");
  const Scalar align_tol = Scalar(1e-12) * t_final;
  auto to_step = [&](Scalar tau, const char* what) {
    const long k = std::lround(static_cast<double>(tau / dt));
    if (std::abs(tau - Scalar(k) * dt) > align_tol)
      throw std::invalid_argument(std::string(what) +
                                  " is not a multiple of dt");
    return k;
  };
  const long n_steps = to_step(t_final, "t_final");
  std::vector<long> observe;
  for (Scalar tau : opts.observe_times) {
    if (tau < 0 || tau > t_final + align_tol)
      throw std::invalid_argument("observe time outside [0, t_final]");
    observe.push_back(to_step(tau, "observe time"));
  }
  std::sort(observe.begin(), observe.end());
  observe.erase(std::unique(observe.begin(), observe.end()), observe.end());

  make_closure(spec, wx, wy);  // fail fast on an unusable configuration

  auto closer = [&](State<Scalar> s, Scalar t) {
    return close_boundary(std::move(s), spec, grid, wx, wy, t,
                          opts.corner_order);
  };
  auto rhs_eval = [&](const State<Scalar>& s) {
    return rhs(s, spec, grid, wx, wy);
  };

  State<Scalar> st = closer(init_state(spec, grid), Scalar(0));
  std::size_t next_obs = 0;
  if (next_obs < observe.size() && observe[next_obs] == 0) {
    observer(static_cast<const State<Scalar>&>(st));
    ++next_obs;
  }
  for (long k = 0; k < n_steps; ++k) {
    st.t = Scalar(k) * dt;
    st = step(std::move(st), dt, rhs_eval, closer, opts.freeze_stage_times);
    st.t = Scalar(k + 1) * dt;
    if (next_obs < observe.size() && observe[next_obs] == k + 1) {
      observer(static_cast<const State<Scalar>&>(st));
      ++next_obs;
    }
  }
  return st;
}

}  // namespace expdq

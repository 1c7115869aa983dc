#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "expdq/integrator.hpp"
#include "expdq/problem.hpp"
#include "expdq/weights.hpp"

using expdq::amplification;
using expdq::integrate;
using expdq::IntegrateOptions;
using expdq::MatrixX;
using expdq::SspRk54Tableau;
using expdq::State;
using expdq::VectorX;

namespace {

struct Setup {
  expdq::TelegraphSpec<double> sp;
  expdq::Grid<double> grid;
  expdq::WeightSet<double> wx;
  expdq::WeightSet<double> wy;
};

Setup make_setup(int id, int n, double p = 1.0) {
  Setup s;
  s.sp = expdq::builtin(id);
  s.grid = expdq::make_grid(n, n);
  s.wx = expdq::make_weights<double>(s.grid.x, p);
  s.wy = expdq::make_weights<double>(s.grid.y, p);
  return s;
}

State<double> scalar_state(double u0) {
  State<double> s;
  s.u = MatrixX<double>::Constant(1, 1, u0);
  s.v = MatrixX<double>::Zero(1, 1);
  s.t = 0.0;
  return s;
}

auto decay_rhs = [](const State<double>& s) {
  return std::pair{MatrixX<double>(-s.u), MatrixX<double>(0.0 * s.v)};
};
auto no_close = [](State<double> s, double) { return s; };

double scalar_decay_error(double dt, int steps) {
  State<double> s = scalar_state(1.0);
  for (int k = 0; k < steps; ++k)
    s = expdq::step(s, dt, decay_rhs, no_close);
  return std::abs(s.u(0, 0) - std::exp(-dt * steps));
}

double linf_vs_exact(const State<double>& s, const Setup& su) {
  double worst = 0.0;
  for (int i = 0; i < su.grid.nx; ++i)
    for (int j = 0; j < su.grid.ny; ++j)
      worst = std::max(worst, std::abs(s.u(i, j) -
                                       su.sp.exact(su.grid.x(i), su.grid.y(j), s.t)));
  return worst;
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("tableau constants form convex combinations") {
  SspRk54Tableau<double> tb;
  CHECK(std::abs(tb.a20 + tb.a21 - 1.0) <= 1e-12);
  CHECK(std::abs(tb.a30 + tb.a32 - 1.0) <= 1e-12);
  CHECK(std::abs(tb.a40 + tb.a43 - 1.0) <= 1e-12);
  CHECK(std::abs(tb.b2 + tb.b3 + tb.b4 - 1.0) <= 1e-12);
  for (double c : {tb.d10, tb.a20, tb.a21, tb.d21, tb.a30, tb.a32, tb.d32,
                   tb.a40, tb.a43, tb.d43, tb.b2, tb.b3, tb.d3, tb.b4, tb.d4})
    CHECK(c >= 0.0);

  const auto tau = tb.stage_times();
  CHECK(tau[0] == 0.0);
  CHECK(std::abs(tau[1] - 0.391752226571890) <= 1e-15);
  CHECK(std::abs(tau[2] - 0.586079689311540) <= 1e-15);
  CHECK(std::abs(tau[3] - 0.474542363121400) <= 1e-15);
  CHECK(std::abs(tau[4] - 0.935010630967653) <= 1e-15);
}

TEST_CASE("zero rhs leaves the state fixed and advances time") {
  State<double> s;
  s.u = MatrixX<double>::Random(3, 4);
  s.v = MatrixX<double>::Random(3, 4);
  s.t = 0.25;
  auto zero_rhs = [](const State<double>& st) {
    return std::pair{MatrixX<double>(0.0 * st.u), MatrixX<double>(0.0 * st.v)};
  };
  const State<double> out = expdq::step(s, 0.125, zero_rhs, no_close);
  CHECK(out.t == doctest::Approx(0.375).epsilon(1e-15));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(out.u(i, j) - s.u(i, j)) <= 1e-14 * std::abs(s.u(i, j)));
      CHECK(std::abs(out.v(i, j) - s.v(i, j)) <= 1e-14 * std::abs(s.v(i, j)));
    }
  CHECK_THROWS_AS(expdq::step(s, 0.0, zero_rhs, no_close), std::invalid_argument);
  CHECK_THROWS_AS(expdq::step(s, -0.1, zero_rhs, no_close), std::invalid_argument);
}

TEST_CASE("scalar decay converges at fourth order") {
  const double e1 = scalar_decay_error(0.1, 10);
  const double e2 = scalar_decay_error(0.05, 20);
  CHECK(e1 >= 1.4e-7);
  CHECK(e1 <= 1.6e-7);
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
  const double order = std::log2(ratio);
  CHECK(order >= 3.8);
  CHECK(order <= 4.2);
}

TEST_CASE("growth factor matches the linear-problem expansion") {
  CHECK(std::abs(amplification({0.0, 0.0}) - 1.0) <= 5e-15);

  const double drift = std::abs(amplification({-0.1, 0.0}) - std::exp(-0.1));
  CHECK(drift >= 3.6e-8);
  CHECK(drift <= 3.8e-8);

  const double damped = std::abs(amplification({-1.0, 0.0}));
  CHECK(damped >= 0.3704);
  CHECK(damped <= 0.3706);
  CHECK(damped < 1.0);
}

TEST_CASE("one step reproduces the growth polynomial on a random matrix") {
  SspRk54Tableau<double> tb;
  // replay the stage recursion on polynomial coefficients in z
  auto shift = [](std::vector<double> p) {
    p.insert(p.begin(), 0.0);
    return p;
  };
  auto axpy = [](double a, const std::vector<double>& x, std::vector<double> y) {
    if (y.size() < x.size()) y.resize(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
    return y;
  };
  const std::vector<double> p0 = {1.0};
  const auto p1 = axpy(tb.d10, shift(p0), p0);
  const auto p2 = axpy(tb.d21, shift(p1), axpy(tb.a20, p0, axpy(tb.a21, p1, {})));
  const auto p3 = axpy(tb.d32, shift(p2), axpy(tb.a30, p0, axpy(tb.a32, p2, {})));
  const auto p4 = axpy(tb.d43, shift(p3), axpy(tb.a40, p0, axpy(tb.a43, p3, {})));
  auto r = axpy(tb.b2, p2, axpy(tb.b3, p3, axpy(tb.d3, shift(p3), {})));
  r = axpy(tb.b4, p4, axpy(tb.d4, shift(p4), r));

  REQUIRE(r.size() == 6);
  CHECK(std::abs(r[0] - 1.0) <= 2e-15);
  CHECK(std::abs(r[1] - 1.0) <= 2e-15);
  CHECK(std::abs(r[2] - 0.5) <= 2e-15);
  CHECK(std::abs(r[3] - 1.0 / 6.0) <= 2e-15);
  CHECK(std::abs(r[4] - 1.0 / 24.0) <= 1e-15);
  CHECK(std::abs(r[5] - 1.0 / 120.0) > 1e-3);  // order four, not five

  std::complex<double> horner = 0.0;
  for (int k = 5; k >= 0; --k) horner = horner * std::complex<double>(-0.1) + r[k];
  CHECK(std::abs(horner - amplification({-0.1, 0.0})) <= 5e-16);

  std::srand(77);
  const MatrixX<double> A = MatrixX<double>::Random(4, 4);
  const MatrixX<double> u0 = MatrixX<double>::Random(4, 1);
  const double dt = 0.01;
  auto lin_rhs = [&](const State<double>& st) {
    return std::pair{MatrixX<double>(A * st.u), MatrixX<double>(0.0 * st.v)};
  };
  State<double> s;
  s.u = u0;
  s.v = MatrixX<double>::Zero(4, 1);
  s.t = 0.0;
  const State<double> out = expdq::step(s, dt, lin_rhs, no_close);

  MatrixX<double> expect = MatrixX<double>::Zero(4, 1);
  MatrixX<double> power = MatrixX<double>::Identity(4, 4);
  for (int k = 0; k <= 5; ++k) {
    expect += r[k] * power * u0;
    power = (dt * A * power).eval();
  }
  CHECK((out.u - expect).cwiseAbs().maxCoeff() <= 1e-12 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("integrate with t_final zero returns the closed initial state") {
  const Setup su = make_setup(1, 11);
  int calls = 0;
  IntegrateOptions<double> opts;
  opts.observe_times = {0.0};
  const State<double> out = integrate(
      su.sp, su.grid, su.wx, su.wy, 0.01, 0.0,
      [&](const State<double>& s) {
        ++calls;
        CHECK(s.t == 0.0);
      },
      opts);
  CHECK(calls == 1);
  CHECK(out.t == 0.0);
  // faces at t = 0 agree with the initial displacement
  for (int j = 0; j < su.grid.ny; ++j)
    CHECK(out.u(0, j) == doctest::Approx(su.sp.phi(0.0, su.grid.y(j))).epsilon(1e-13));
}

TEST_CASE("observer fires exactly at the requested step-aligned times") {
  const Setup su = make_setup(1, 11);
  std::vector<double> seen;
  IntegrateOptions<double> opts;
  opts.observe_times = {0.05, 0.0, 0.03, 0.01, 0.03};  // unsorted, duplicate
  integrate(
      su.sp, su.grid, su.wx, su.wy, 0.01, 0.05,
      [&](const State<double>& s) { seen.push_back(s.t); }, opts);
  REQUIRE(seen.size() == 4);
  const double expect[] = {0.0, 0.01, 0.03, 0.05};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(seen[i] - expect[i]) <= 1e-15);
}

TEST_CASE("misaligned times are rejected up front") {
  const Setup su = make_setup(1, 11);
  auto ignore = [](const State<double>&) {};
  IntegrateOptions<double> opts;
  opts.observe_times = {0.015};
  CHECK_THROWS_AS(
      integrate(su.sp, su.grid, su.wx, su.wy, 0.01, 0.05, ignore, opts),
      std::invalid_argument);
  opts.observe_times = {0.2};
  CHECK_THROWS_AS(
      integrate(su.sp, su.grid, su.wx, su.wy, 0.01, 0.05, ignore, opts),
      std::invalid_argument);
  opts.observe_times.clear();
  CHECK_THROWS_AS(integrate(su.sp, su.grid, su.wx, su.wy, 0.03, 0.1, ignore, opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(su.sp, su.grid, su.wx, su.wy, -0.01, 0.1, ignore, opts),
                  std::invalid_argument);
}

TEST_CASE("coarse-grid benchmark error at t = 1") {
  const Setup su = make_setup(1, 11);
  const State<double> out =
      integrate(su.sp, su.grid, su.wx, su.wy, 0.01, 1.0,
                [](const State<double>&) {}, IntegrateOptions<double>{});
  const double linf = linf_vs_exact(out, su);
  CHECK(linf >= 1.05e-4);
  CHECK(linf <= 1.15e-4);
}

TEST_CASE("freezing stage closure times degrades accuracy") {
  const Setup su = make_setup(1, 11);
  IntegrateOptions<double> frozen;
  frozen.freeze_stage_times = true;
  const State<double> a =
      integrate(su.sp, su.grid, su.wx, su.wy, 0.01, 1.0,
                [](const State<double>&) {}, IntegrateOptions<double>{});
  const State<double> b = integrate(su.sp, su.grid, su.wx, su.wy, 0.01, 1.0,
                                    [](const State<double>&) {}, frozen);
  const double ea = linf_vs_exact(a, su);
  const double eb = linf_vs_exact(b, su);
  CHECK(eb > 5.0 * ea);
}

TEST_CASE("a grossly unstable step size fails fast with a time stamp") {
  const Setup su = make_setup(1, 21, 1.0);
  bool threw = false;
  try {
    integrate(su.sp, su.grid, su.wx, su.wy, 10.0, 100.0,
              [](const State<double>&) {}, IntegrateOptions<double>{});
  } catch (const expdq::NonFinite& e) {
    threw = true;
    CHECK(e.time >= 0.0);
    CHECK(e.time < 100.0);
    CHECK(e.stage >= 1);
    CHECK(e.stage <= 5);
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
  CHECK(threw);
}

}

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "expdq/errors.hpp"
#include "expdq/integrator.hpp"
#include "expdq/problem.hpp"
#include "expdq/semidiscrete.hpp"
#include "expdq/types.hpp"
#include "expdq/weights.hpp"

namespace expdq {

// The l2 sum runs over all grid nodes; Hx applies the single spacing factor
// (square-grid convention), HxHy the area weight.
enum class L2Weight { Hx, HxHy };

template <class Scalar>
struct ErrorReport {
  Scalar t = 0;
  Scalar l2 = 0;
  Scalar linf = 0;
  Scalar rel = 0;       // ratio of discrete 2-norms, error over reference
  Scalar rel_max = 0;   // ratio of maxima, kept alongside the 2-norm form
  Scalar wall_seconds = 0;  // filled by callers that time a run
};

template <class Scalar>
ErrorReport<Scalar> error_norms(const State<Scalar>& state,
                                const TelegraphSpec<Scalar>& spec,
                                const Grid<Scalar>& grid,
                                L2Weight weight = L2Weight::Hx) {
  if (!spec.exact) throw NoExactSolution("problem has no reference solution");
  if (state.u.rows() != grid.nx || state.u.cols() != grid.ny)
    throw IndexOutOfRange("state shape does not match the grid");
  Scalar sum_err2 = 0, sum_ref2 = 0, linf = 0, max_ref = 0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      const Scalar ref = spec.exact(grid.x(i), grid.y(j), state.t);
      const Scalar err = std::abs(state.u(i, j) - ref);
      linf = std::max(linf, err);
      max_ref = std::max(max_ref, std::abs(ref));
      sum_err2 += err * err;
      sum_ref2 += ref * ref;
    }
  auto ratio = [](Scalar num, Scalar den) {
    if (den > 0) return num / den;
    return num == Scalar(0) ? Scalar(0)
                            : std::numeric_limits<Scalar>::infinity();
  };
  ErrorReport<Scalar> rep;
  rep.t = state.t;
  rep.linf = linf;
  rep.l2 = std::sqrt((weight == L2Weight::Hx ? grid.hx : grid.hx * grid.hy) *
                     sum_err2);
  rep.rel = ratio(std::sqrt(sum_err2), std::sqrt(sum_ref2));
  rep.rel_max = ratio(linf, max_ref);
  return rep;
}

template <class Scalar>
struct ConvergenceRow {
  Scalar h = 0;
  Scalar l2 = 0;
  Scalar linf = 0;
  Scalar order = 0;      // log(err ratio) / log(h ratio) vs the previous row
  bool has_order = false;
  bool decreased = true;  // false flags a non-monotone step in linf
};

// Run the same problem on each square grid and tabulate the errors at
// t_final.  Grids are node counts per side, typically halving h.
template <class Scalar>
std::vector<ConvergenceRow<Scalar>> convergence_study(
    const TelegraphSpec<Scalar>& spec, const std::vector<int>& grids,
    Scalar dt, Scalar p, Scalar t_final, L2Weight weight = L2Weight::Hx) {
  if (grids.size() < 2)
    throw std::invalid_argument("a convergence study needs at least two grids");
  std::vector<ConvergenceRow<Scalar>> rows;
  rows.reserve(grids.size());
  for (int n : grids) {
    const Grid<Scalar> grid = make_grid<Scalar>(n, n);
    const WeightSet<Scalar> wx = make_weights<Scalar>(grid.x, p);
    const WeightSet<Scalar> wy = make_weights<Scalar>(grid.y, p);
    const State<Scalar> end =
        integrate(spec, grid, wx, wy, dt, t_final,
                  [](const State<Scalar>&) {}, IntegrateOptions<Scalar>{});
    const ErrorReport<Scalar> rep = error_norms(end, spec, grid, weight);
    ConvergenceRow<Scalar> row;
    row.h = grid.hx;
    row.l2 = rep.l2;
    row.linf = rep.linf;
    if (!rows.empty()) {
      const ConvergenceRow<Scalar>& prev = rows.back();
      row.decreased = rep.linf <= prev.linf;
      if (prev.h != row.h && rep.linf > 0 && prev.linf > 0) {
        row.order = std::log(prev.linf / rep.linf) / std::log(prev.h / row.h);
        row.has_order = true;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace expdq

#pragma once

#include <cmath>
#include <utility>

#include "expdq/errors.hpp"
#include "expdq/spline.hpp"
#include "expdq/tridiagonal.hpp"
#include "expdq/types.hpp"

namespace expdq {

// Per-direction quadrature weights: row i of order1/order2 differentiates
// nodal samples along that grid line at node i.
template <class Scalar>
struct WeightSet {
  int n = 0;
  MatrixX<Scalar> order1;
  MatrixX<Scalar> order2;
  SplineShape<Scalar> shape;
};

// Collocation system for the first-order weights.  Row p of the tridiagonal
// holds the modified basis member p at nodes p-1, p, p+1; rhs column i holds
// the members' slopes at node i.
template <class Scalar>
std::pair<Tridiagonal<Scalar>, MatrixX<Scalar>> assemble_first_order_system(
    int n, const SplineShape<Scalar>& shape) {
  if (n < 5) throw TooFewNodes("weight assembly needs at least 5 nodes");
  Tridiagonal<Scalar> t;
  t.sub.resize(n - 1);
  t.diag.resize(n);
  t.sup.resize(n - 1);
  for (int p = 1; p <= n; ++p) {
    t.diag(p - 1) = modified_nodal_value(shape, p, p, n, 0);
    if (p > 1) t.sub(p - 2) = modified_nodal_value(shape, p, p - 1, n, 0);
    if (p < n) t.sup(p - 1) = modified_nodal_value(shape, p, p + 1, n, 0);
  }
  MatrixX<Scalar> rhs = MatrixX<Scalar>::Zero(n, n);
  for (int p = 1; p <= n; ++p)
    for (int j = std::max(1, p - 2); j <= std::min(n, p + 2); ++j)
      rhs(p - 1, j - 1) = modified_nodal_value(shape, p, j, n, 1);
  return {std::move(t), std::move(rhs)};
}

template <class Scalar>
MatrixX<Scalar> first_order_weights(int n, const SplineShape<Scalar>& shape) {
  auto [t, rhs] = assemble_first_order_system(n, shape);
  return thomas_solve(t, rhs).transpose();
}

// Order-2 weights from the order-1 set by the product recursion; the diagonal
// is the negated off-diagonal row sum, so row sums vanish identically.
template <class Scalar>
MatrixX<Scalar> second_order_weights(const MatrixX<Scalar>& order1,
                                     const VectorX<Scalar>& grid_coords) {
  const Eigen::Index n = order1.rows();
  if (order1.cols() != n) throw IndexOutOfRange("order-1 weights must be square");
  if (grid_coords.size() != n)
    throw IndexOutOfRange("coordinate count must match the weight matrix");
  MatrixX<Scalar> a2 = MatrixX<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar rowsum = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const Scalar dx = grid_coords(i) - grid_coords(j);
      if (std::abs(dx) < Scalar(1e-14))
        throw CoincidentNodes("grid coordinates closer than 1e-14");
      a2(i, j) = 2 * (order1(i, j) * order1(i, i) - order1(i, j) / dx);
      rowsum += a2(i, j);
    }
    a2(i, i) = -rowsum;
  }
  return a2;
}

template <class Scalar>
WeightSet<Scalar> make_weights(const VectorX<Scalar>& grid_coords, Scalar p) {
  const Eigen::Index n = grid_coords.size();
  if (n < 5) throw TooFewNodes("weight assembly needs at least 5 nodes");
  WeightSet<Scalar> w;
  w.n = static_cast<int>(n);
  w.shape = make_shape(p, (grid_coords(n - 1) - grid_coords(0)) / Scalar(n - 1));
  w.order1 = first_order_weights(w.n, w.shape);
  w.order2 = second_order_weights(w.order1, grid_coords);
  return w;
}

}  // namespace expdq

#pragma once

#include <cmath>
#include <string>

#include "expdq/errors.hpp"
#include "expdq/types.hpp"

namespace expdq {

template <class Scalar>
struct Tridiagonal {
  VectorX<Scalar> sub;   // length n-1
  VectorX<Scalar> diag;  // length n
  VectorX<Scalar> sup;   // length n-1
};

// Thomas elimination, multiple right-hand sides, O(n * cols).
// Pivots are monitored against the largest diagonal entry; the collocation
// matrices fed through here are strictly diagonally dominant.
template <class Scalar>
MatrixX<Scalar> thomas_solve(const Tridiagonal<Scalar>& t,
                             const MatrixX<Scalar>& rhs) {
  const Eigen::Index n = t.diag.size();
  if (t.sub.size() != n - 1 || t.sup.size() != n - 1)
    throw IndexOutOfRange("tridiagonal band lengths must be n-1");
  if (rhs.rows() != n)
    throw IndexOutOfRange("right-hand side rows must match the diagonal");
  const Scalar pivot_floor = Scalar(1e-12) * t.diag.cwiseAbs().maxCoeff();
  VectorX<Scalar> w = t.diag;
  MatrixX<Scalar> x = rhs;
  if (std::abs(w(0)) < pivot_floor) throw NotDominant("pivot collapsed at row 0");
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar f = t.sub(i - 1) / w(i - 1);
    w(i) -= f * t.sup(i - 1);
    x.row(i) -= f * x.row(i - 1);
    if (std::abs(w(i)) < pivot_floor)
      throw NotDominant("pivot collapsed at row " + std::to_string(i));
  }
  x.row(n - 1) /= w(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i)
    x.row(i) = (x.row(i) - t.sup(i) * x.row(i + 1)) / w(i);
  return x;
}

}  // namespace expdq

#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "expdq/errors.hpp"
#include "expdq/problem.hpp"
#include "expdq/types.hpp"
#include "expdq/weights.hpp"

namespace expdq {

// u and v = du/dt on the full node grid; rows index x, columns index y.
template <class Scalar>
struct State {
  MatrixX<Scalar> u;
  MatrixX<Scalar> v;
  Scalar t{0};
};

// Which closure pass runs last and therefore owns the four corner nodes.
enum class CornerOrder { YWins, XWins };

template <class Scalar>
State<Scalar> init_state(const TelegraphSpec<Scalar>& spec,
                         const Grid<Scalar>& grid) {
  State<Scalar> st;
  st.u.resize(grid.nx, grid.ny);
  st.v.resize(grid.nx, grid.ny);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      st.u(i, j) = spec.phi(grid.x(i), grid.y(j));
      st.v(i, j) = spec.psi(grid.x(i), grid.y(j));
    }
  }
  st.t = 0;
  return st;
}

namespace detail {

// Solve pivot of one axis' face closure: the 2x2 determinant when both faces
// carry derivative data, the lone diagonal entry when only one does, 1 when
// the axis is all-Dirichlet.  Throws when the solve would be meaningless.
template <class Scalar>
Scalar axis_pivot(FaceKind lo, FaceKind hi, const MatrixX<Scalar>& a1,
                  const char* axis) {
  const Eigen::Index n = a1.rows();
  const Scalar a11 = a1(0, 0), a1N = a1(0, n - 1);
  const Scalar aN1 = a1(n - 1, 0), aNN = a1(n - 1, n - 1);
  const Scalar scale = a1.cwiseAbs().maxCoeff();
  if (lo == FaceKind::Neumann && hi == FaceKind::Neumann) {
    const Scalar det = a11 * aNN - aN1 * a1N;
    if (std::abs(det) <= Scalar(1e-10) * scale * scale)
      throw SingularClosure(std::string(axis) +
                            " two-sided derivative closure is singular");
    return det;
  }
  if (lo == FaceKind::Neumann) {
    if (std::abs(a11) <= Scalar(1e-10) * scale)
      throw SingularClosure(std::string(axis) + " low-face closure pivot is zero");
    return a11;
  }
  if (hi == FaceKind::Neumann) {
    if (std::abs(aNN) <= Scalar(1e-10) * scale)
      throw SingularClosure(std::string(axis) + " high-face closure pivot is zero");
    return aNN;
  }
  return Scalar(1);
}

// Close the two x faces (rows 0 and nx-1) of m.  lo/hi sample the face data
// at the closure time; the running coordinate is y.
template <class Scalar, class Lo, class Hi>
void close_x_faces(MatrixX<Scalar>& m, FaceKind klo, FaceKind khi, Lo&& lo,
                   Hi&& hi, const MatrixX<Scalar>& a1,
                   const VectorX<Scalar>& y) {
  using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  const Eigen::Index nx = m.rows(), ny = m.cols();
  RowVec dlo(ny), dhi(ny);
  for (Eigen::Index j = 0; j < ny; ++j) {
    dlo(j) = lo(y(j));
    dhi(j) = hi(y(j));
  }
  if (klo == FaceKind::Dirichlet && khi == FaceKind::Dirichlet) {
    m.row(0) = dlo;
    m.row(nx - 1) = dhi;
    return;
  }
  const Scalar pivot = axis_pivot(klo, khi, a1, "x axis");
  const Scalar a11 = a1(0, 0), a1N = a1(0, nx - 1);
  const Scalar aN1 = a1(nx - 1, 0), aNN = a1(nx - 1, nx - 1);
  const auto inner = m.block(1, 0, nx - 2, ny);
  if (klo == FaceKind::Neumann && khi == FaceKind::Neumann) {
    const RowVec s_lo = dlo - a1.row(0).segment(1, nx - 2) * inner;
    const RowVec s_hi = dhi - a1.row(nx - 1).segment(1, nx - 2) * inner;
    m.row(0) = (s_lo * aNN - s_hi * a1N) / pivot;
    m.row(nx - 1) = (s_hi * a11 - s_lo * aN1) / pivot;
  } else if (klo == FaceKind::Neumann) {
    m.row(nx - 1) = dhi;
    const RowVec s_lo = dlo - a1.row(0).segment(1, nx - 2) * inner;
    m.row(0) = (s_lo - a1N * m.row(nx - 1)) / pivot;
  } else {
    m.row(0) = dlo;
    const RowVec s_hi = dhi - a1.row(nx - 1).segment(1, nx - 2) * inner;
    m.row(nx - 1) = (s_hi - aN1 * m.row(0)) / pivot;
  }
}

// y-face analogue: columns 0 and ny-1, running coordinate x.
template <class Scalar, class Lo, class Hi>
void close_y_faces(MatrixX<Scalar>& m, FaceKind klo, FaceKind khi, Lo&& lo,
                   Hi&& hi, const MatrixX<Scalar>& b1,
                   const VectorX<Scalar>& x) {
  const Eigen::Index nx = m.rows(), ny = m.cols();
  VectorX<Scalar> dlo(nx), dhi(nx);
  for (Eigen::Index i = 0; i < nx; ++i) {
    dlo(i) = lo(x(i));
    dhi(i) = hi(x(i));
  }
  if (klo == FaceKind::Dirichlet && khi == FaceKind::Dirichlet) {
    m.col(0) = dlo;
    m.col(ny - 1) = dhi;
    return;
  }
  const Scalar pivot = axis_pivot(klo, khi, b1, "y axis");
  const Scalar b11 = b1(0, 0), b1N = b1(0, ny - 1);
  const Scalar bN1 = b1(ny - 1, 0), bNN = b1(ny - 1, ny - 1);
  const auto inner = m.block(0, 1, nx, ny - 2);
  if (klo == FaceKind::Neumann && khi == FaceKind::Neumann) {
    const VectorX<Scalar> s_lo =
        dlo - inner * b1.row(0).segment(1, ny - 2).transpose();
    const VectorX<Scalar> s_hi =
        dhi - inner * b1.row(ny - 1).segment(1, ny - 2).transpose();
    m.col(0) = (s_lo * bNN - s_hi * b1N) / pivot;
    m.col(ny - 1) = (s_hi * b11 - s_lo * bN1) / pivot;
  } else if (klo == FaceKind::Neumann) {
    m.col(ny - 1) = dhi;
    const VectorX<Scalar> s_lo =
        dlo - inner * b1.row(0).segment(1, ny - 2).transpose();
    m.col(0) = (s_lo - b1N * m.col(ny - 1)) / pivot;
  } else {
    m.col(0) = dlo;
    const VectorX<Scalar> s_hi =
        dhi - inner * b1.row(ny - 1).segment(1, ny - 2).transpose();
    m.col(ny - 1) = (s_hi - bN1 * m.col(0)) / pivot;
  }
}

}  // namespace detail

// Cached per-axis closure pivots and resolved face kinds; construction fails
// on an unusable weight configuration.
template <class Scalar>
struct BoundaryClosure {
  Scalar det_x{1};
  Scalar det_y{1};
  FaceKind x_min, x_max, y_min, y_max;
};

template <class Scalar>
BoundaryClosure<Scalar> make_closure(const TelegraphSpec<Scalar>& spec,
                                     const WeightSet<Scalar>& wx,
                                     const WeightSet<Scalar>& wy) {
  BoundaryClosure<Scalar> c{Scalar(1), Scalar(1), spec.x_min.kind,
                            spec.x_max.kind, spec.y_min.kind, spec.y_max.kind};
  c.det_x = detail::axis_pivot(spec.x_min.kind, spec.x_max.kind, wx.order1,
                               "x axis");
  c.det_y = detail::axis_pivot(spec.y_min.kind, spec.y_max.kind, wy.order1,
                               "y axis");
  return c;
}

// Overwrite the face entries of u and v from the boundary conditions at time
// t.  Dirichlet faces take the data directly; derivative faces solve the
// coupled pair of collocation equations using current interior values.  v
// uses the same closure driven by the data's time derivative (central
// difference, step 1e-6).  Interior entries and state.t are untouched.
template <class Scalar>
State<Scalar> close_boundary(State<Scalar> state,
                             const TelegraphSpec<Scalar>& spec,
                             const Grid<Scalar>& grid,
                             const WeightSet<Scalar>& wx,
                             const WeightSet<Scalar>& wy, Scalar t,
                             CornerOrder order = CornerOrder::YWins) {
  const Scalar dp = Scalar(1e-6);
  auto val = [t](const FaceCondition<Scalar>& f) {
    return [&f, t](Scalar s) { return f.data(s, t); };
  };
  auto rate = [t, dp](const FaceCondition<Scalar>& f) {
    return [&f, t, dp](Scalar s) {
      return (f.data(s, t + dp) - f.data(s, t - dp)) / (2 * dp);
    };
  };
  auto pass_x = [&](MatrixX<Scalar>& m, auto mk) {
    detail::close_x_faces(m, spec.x_min.kind, spec.x_max.kind, mk(spec.x_min),
                          mk(spec.x_max), wx.order1, grid.y);
  };
  auto pass_y = [&](MatrixX<Scalar>& m, auto mk) {
    detail::close_y_faces(m, spec.y_min.kind, spec.y_max.kind, mk(spec.y_min),
                          mk(spec.y_max), wy.order1, grid.x);
  };
  if (order == CornerOrder::YWins) {
    pass_x(state.u, val);
    pass_y(state.u, val);
    pass_x(state.v, rate);
    pass_y(state.v, rate);
  } else {
    pass_y(state.u, val);
    pass_x(state.u, val);
    pass_y(state.v, rate);
    pass_x(state.v, rate);
  }
  return state;
}

// Interior time derivative of the coupled system; boundary rows stay zero
// because the faces are algebraic, not evolved.
template <class Scalar>
std::pair<MatrixX<Scalar>, MatrixX<Scalar>> rhs(const State<Scalar>& state,
                                                const TelegraphSpec<Scalar>& spec,
                                                const Grid<Scalar>& grid,
                                                const WeightSet<Scalar>& wx,
                                                const WeightSet<Scalar>& wy) {
  const Eigen::Index nx = grid.nx, ny = grid.ny;
  MatrixX<Scalar> du = MatrixX<Scalar>::Zero(nx, ny);
  MatrixX<Scalar> dv = MatrixX<Scalar>::Zero(nx, ny);
  du.block(1, 1, nx - 2, ny - 2) = state.v.block(1, 1, nx - 2, ny - 2);
  const MatrixX<Scalar> lap =
      wx.order2 * state.u + state.u * wy.order2.transpose();
  MatrixX<Scalar> f(nx - 2, ny - 2);
  for (Eigen::Index i = 1; i < nx - 1; ++i)
    for (Eigen::Index j = 1; j < ny - 1; ++j)
      f(i - 1, j - 1) = spec.forcing(grid.x(i), grid.y(j), state.t);
  dv.block(1, 1, nx - 2, ny - 2) =
      lap.block(1, 1, nx - 2, ny - 2) -
      2 * spec.alpha * state.v.block(1, 1, nx - 2, ny - 2) -
      spec.beta * spec.beta * state.u.block(1, 1, nx - 2, ny - 2) + f;
  return {std::move(du), std::move(dv)};
}

}  // namespace expdq

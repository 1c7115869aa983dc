#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "expdq/errors.hpp"

namespace expdq {

namespace detail {

// sinh(y) - y without cancellation near zero.
template <class Scalar>
Scalar sinh_m(Scalar y) {
  if (std::abs(y) < Scalar(0.35)) {
    const Scalar y2 = y * y;
    return y * y2 *
           (Scalar(1) / 6 +
            y2 * (Scalar(1) / 120 +
                  y2 * (Scalar(1) / 5040 +
                        y2 * (Scalar(1) / 362880 + y2 / Scalar(39916800)))));
  }
  return std::sinh(y) - y;
}

// cosh(y) - 1 without cancellation near zero.
template <class Scalar>
Scalar cosh_m(Scalar y) {
  if (std::abs(y) < Scalar(0.35)) {
    const Scalar y2 = y * y;
    return y2 * (Scalar(1) / 2 +
                 y2 * (Scalar(1) / 24 +
                       y2 * (Scalar(1) / 720 +
                             y2 * (Scalar(1) / 40320 + y2 / Scalar(3628800)))));
  }
  return std::cosh(y) - 1;
}

}  // namespace detail

// Uniform-grid exponential cubic B-spline with tension p and step h.
// Every derived constant shares the denominator K = p*h*cosh(p*h) - sinh(p*h).
template <class Scalar>
struct SplineShape {
  Scalar p = 0, h = 0;
  Scalar c = 0, s = 0;  // cosh(p*h), sinh(p*h)
  Scalar a1 = 0, b1 = 0, b2 = 0, c1 = 0, d1 = 0;  // piece coefficients
  Scalar theta = 0;        // basis value at the two neighbouring nodes
  Scalar omega_prime = 0;  // p(1-c)/K; slope at the right neighbour is half this
  Scalar d2_center = 0, d2_neighbor = 0;
  Scalar K = 0;            // computed cancellation-free, K ~ (p*h)^3/3 near zero
  Scalar A = 0, B = 0;     // c1 + d1 = -s/K and c1 - d1 = (2c+1)/(2K)
};

template <class Scalar>
SplineShape<Scalar> make_shape(Scalar p, Scalar h) {
  if (!(p > 0) || !(h > 0))
    throw DegenerateShape("tension and grid step must be positive");
  SplineShape<Scalar> sh;
  sh.p = p;
  sh.h = h;
  const Scalar q = p * h;
  sh.c = std::cosh(q);
  sh.s = std::sinh(q);
  const Scalar K = q * detail::cosh_m(q) - detail::sinh_m(q);  // q*cosh(q) - sinh(q)
  if (K == 0)
    throw DegenerateShape("basis denominator underflowed to zero");
  sh.K = K;
  sh.A = -sh.s / K;
  sh.B = (2 * sh.c + 1) / (2 * K);
  sh.a1 = 1 + sh.s / K;  // equals p*h*cosh(p*h)/K
  sh.b1 = -p * (2 * sh.c + 1) / (2 * K);
  sh.b2 = p / (2 * K);
  sh.c1 = (sh.A + sh.B) / 2;
  sh.d1 = (sh.A - sh.B) / 2;
  if (q < Scalar(1e-3)) {
    // series in q = p*h; the closed forms are 0/0 in the tensionless limit
    const Scalar q2 = q * q;
    sh.theta = Scalar(0.25) +
               q2 * (Scalar(-1) / 80 +
                     q2 * (Scalar(11) / 16800 - q2 * Scalar(67) / 2016000));
    sh.omega_prime =
        (Scalar(-1.5) + q2 * (Scalar(1) / 40 +
                              q2 * (Scalar(-11) / 8400 +
                                    q2 * Scalar(67) / 1008000))) /
        h;
    sh.d2_center = (Scalar(-3) + q2 * (Scalar(-1) / 5 +
                                       q2 * (Scalar(1) / 175 -
                                             q2 * Scalar(2) / 7875))) /
                   (h * h);
  } else {
    // the closed forms divide by K; guard against a meaningless quotient
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    if (std::abs(K) < Scalar(1000) * eps * std::max(Scalar(1), q * sh.c))
      throw DegenerateShape("basis denominator vanished");
    sh.theta = detail::sinh_m(q) / (2 * K);
    sh.omega_prime = -p * detail::cosh_m(q) / K;
    sh.d2_center = -p * p * sh.s / K;
  }
  sh.d2_neighbor = -sh.d2_center / 2;
  return sh;
}

// Basis function centred at node i, nodes at x_i = (i-1)*h.  Zero outside
// [x_{i-2}, x_{i+2}].  Points within 1e-12*h of a node snap to the nodal
// stencil so collocation matrices are reproduced exactly.
template <class Scalar>
Scalar eval_spline(const SplineShape<Scalar>& sh, int i, Scalar x, int order) {
  if (order < 0 || order > 2) throw IndexOutOfRange("derivative order must be 0, 1 or 2");
  const Scalar h = sh.h, p = sh.p;
  const Scalar t = x - Scalar(i - 1) * h;
  const Scalar m = std::round(t / h);
  if (std::abs(t - m * h) < Scalar(1e-12) * h) {
    if (std::abs(m) > 2) return Scalar(0);
    const int off = static_cast<int>(m);
    if (order == 0)
      return off == 0 ? Scalar(1) : (std::abs(off) == 1 ? sh.theta : Scalar(0));
    if (order == 1)
      return off == 1 ? sh.omega_prime / 2
                      : (off == -1 ? -sh.omega_prime / 2 : Scalar(0));
    return off == 0 ? sh.d2_center
                    : (std::abs(off) == 1 ? sh.d2_neighbor : Scalar(0));
  }
  if (std::abs(t) >= 2 * h) return Scalar(0);
  if (t >= h || t <= -h) {
    // outer pieces, measured from the nearer support edge
    const Scalar w = t >= h ? 2 * h - t : t + 2 * h;
    if (order == 0) return detail::sinh_m(p * w) / (2 * sh.K);
    if (order == 1) {
      const Scalar slope = p * detail::cosh_m(p * w) / (2 * sh.K);
      return t >= h ? -slope : slope;
    }
    return p * p * std::sinh(p * w) / (2 * sh.K);
  }
  // middle pieces, measured from the centre; even in xi except odd order 1
  const Scalar xi = std::abs(t);
  if (order == 0)
    return 1 + sh.A * detail::cosh_m(p * xi) + sh.B * detail::sinh_m(p * xi);
  if (order == 1) {
    const Scalar slope =
        p * (sh.A * std::sinh(p * xi) + sh.B * detail::cosh_m(p * xi));
    return t >= 0 ? slope : -slope;
  }
  return p * p * (sh.A * std::cosh(p * xi) + sh.B * std::sinh(p * xi));
}

namespace detail {

// Nodal stencil of the unmodified basis centred at node c, sampled at node j.
template <class Scalar>
Scalar basis_node(const SplineShape<Scalar>& sh, int c, int j, int order) {
  const int off = j - c;
  if (off < -1 || off > 1) return Scalar(0);
  if (order == 0) return off == 0 ? Scalar(1) : sh.theta;
  return off == 0 ? Scalar(0)
                  : (off == 1 ? sh.omega_prime / 2 : -sh.omega_prime / 2);
}

}  // namespace detail

// Boundary-modified basis evaluated at grid nodes.  The end members fold the
// ghost-node splines back in (psi_1 = z_1 + 2 z_0, psi_2 = z_2 - z_0 and the
// mirrored pair), which pins s''  = 0 at both end nodes for the whole span.
template <class Scalar>
Scalar modified_nodal_value(const SplineShape<Scalar>& sh, int p_index, int j,
                            int n, int order) {
  if (n < 5) throw TooFewNodes("modified basis needs at least 5 nodes");
  if (p_index < 1 || p_index > n || j < 1 || j > n)
    throw IndexOutOfRange("node index outside 1..n");
  if (order != 0 && order != 1)
    throw IndexOutOfRange("nodal tables cover orders 0 and 1");
  using detail::basis_node;
  if (p_index == 1)
    return basis_node(sh, 1, j, order) + 2 * basis_node(sh, 0, j, order);
  if (p_index == 2)
    return basis_node(sh, 2, j, order) - basis_node(sh, 0, j, order);
  if (p_index == n - 1)
    return basis_node(sh, n - 1, j, order) - basis_node(sh, n + 1, j, order);
  if (p_index == n)
    return basis_node(sh, n, j, order) + 2 * basis_node(sh, n + 1, j, order);
  return basis_node(sh, p_index, j, order);
}

}  // namespace expdq

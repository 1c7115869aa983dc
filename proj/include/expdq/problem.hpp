#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "expdq/errors.hpp"
#include "expdq/types.hpp"

namespace expdq {

enum class FaceKind { Dirichlet, Neumann };

// data(s, t): s is the running coordinate along the face.  Neumann data is
// the derivative of u in the face's fixed coordinate (not the outward
// normal), which is what the boundary closure consumes on both ends.
template <class Scalar>
struct FaceCondition {
  FaceKind kind = FaceKind::Dirichlet;
  std::function<Scalar(Scalar, Scalar)> data;
};

template <class Scalar>
struct TelegraphSpec {
  Scalar alpha{1};
  Scalar beta{1};
  std::function<Scalar(Scalar, Scalar, Scalar)> forcing;  // (x, y, t)
  std::function<Scalar(Scalar, Scalar)> phi;              // u at t = 0
  std::function<Scalar(Scalar, Scalar)> psi;              // u_t at t = 0
  FaceCondition<Scalar> x_min, x_max, y_min, y_max;
  std::function<Scalar(Scalar, Scalar, Scalar)> exact;    // null when unknown
};

template <class Scalar>
struct Grid {
  int nx{0}, ny{0};
  Scalar hx{0}, hy{0};
  VectorX<Scalar> x, y;
};

template <class Scalar = double>
Grid<Scalar> make_grid(int nx, int ny) {
  if (nx < 5 || ny < 5)
    throw TooFewNodes("grid needs at least 5 nodes per direction");
  Grid<Scalar> g;
  g.nx = nx;
  g.ny = ny;
  g.hx = Scalar(1) / Scalar(nx - 1);
  g.hy = Scalar(1) / Scalar(ny - 1);
  g.x = VectorX<Scalar>::LinSpaced(nx, Scalar(0), Scalar(1));
  g.y = VectorX<Scalar>::LinSpaced(ny, Scalar(0), Scalar(1));
  return g;
}

// Six bundled problems on [0,1]^2, each with a closed-form solution.  The
// forcing carries alpha and beta dependence so damping and dispersion can be
// varied without touching the solution.
template <class Scalar = double>
TelegraphSpec<Scalar> builtin(int id, Scalar alpha, Scalar beta) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  TelegraphSpec<Scalar> sp;
  sp.alpha = alpha;
  sp.beta = beta;
  const Scalar a = alpha, b = beta;
  switch (id) {
    case 1: {  // u = cos t sin x sin y, all faces Dirichlet
      sp.exact = [](Scalar x, Scalar y, Scalar t) {
        return cos(t) * sin(x) * sin(y);
      };
      sp.forcing = [a, b](Scalar x, Scalar y, Scalar t) {
        return ((1 + b * b) * cos(t) - 2 * a * sin(t)) * sin(x) * sin(y);
      };
      sp.phi = [](Scalar x, Scalar y) { return sin(x) * sin(y); };
      sp.psi = [](Scalar, Scalar) { return Scalar(0); };
      sp.x_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.x_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return cos(t) * sin(Scalar(1)) * sin(s);
                  }};
      sp.y_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.y_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return cos(t) * sin(s) * sin(Scalar(1));
                  }};
      return sp;
    }
    case 2: {  // u = exp(-t) sinh x sinh y, Neumann on both y faces
      sp.exact = [](Scalar x, Scalar y, Scalar t) {
        return exp(-t) * sinh(x) * sinh(y);
      };
      sp.forcing = [a, b](Scalar x, Scalar y, Scalar t) {
        return (b * b - 2 * a - 1) * exp(-t) * sinh(x) * sinh(y);
      };
      sp.phi = [](Scalar x, Scalar y) { return sinh(x) * sinh(y); };
      sp.psi = [](Scalar x, Scalar y) { return -sinh(x) * sinh(y); };
      sp.x_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.x_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return exp(-t) * sinh(Scalar(1)) * sinh(s);
                  }};
      sp.y_min = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return exp(-t) * sinh(s);
                  }};
      sp.y_max = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return exp(-t) * sinh(s) * cosh(Scalar(1));
                  }};
      return sp;
    }
    case 3: {  // u = cos t sinh x sinh y, Neumann at y = 1
      sp.exact = [](Scalar x, Scalar y, Scalar t) {
        return cos(t) * sinh(x) * sinh(y);
      };
      sp.forcing = [a, b](Scalar x, Scalar y, Scalar t) {
        return ((b * b - 3) * cos(t) - 2 * a * sin(t)) * sinh(x) * sinh(y);
      };
      sp.phi = [](Scalar x, Scalar y) { return sinh(x) * sinh(y); };
      sp.psi = [](Scalar, Scalar) { return Scalar(0); };
      sp.x_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.x_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return cos(t) * sinh(Scalar(1)) * sinh(s);
                  }};
      sp.y_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.y_max = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return cos(t) * sinh(s) * cosh(Scalar(1));
                  }};
      return sp;
    }
    case 4: {  // u = exp(x + y - t), Neumann at y = 0
      sp.exact = [](Scalar x, Scalar y, Scalar t) { return exp(x + y - t); };
      sp.forcing = [a, b](Scalar x, Scalar y, Scalar t) {
        return (b * b - 2 * a - 1) * exp(x + y - t);
      };
      sp.phi = [](Scalar x, Scalar y) { return exp(x + y); };
      sp.psi = [](Scalar x, Scalar y) { return -exp(x + y); };
      sp.x_min = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return exp(s - t);
                  }};
      sp.x_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return exp(1 + s - t);
                  }};
      sp.y_min = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return exp(s - t);
                  }};
      sp.y_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return exp(s + 1 - t);
                  }};
      return sp;
    }
    case 5: {  // u = exp(-t) sin(pi x) sin(pi y), Neumann at x = 0 and y = 1
      sp.exact = [kPi](Scalar x, Scalar y, Scalar t) {
        return exp(-t) * sin(kPi * x) * sin(kPi * y);
      };
      sp.forcing = [a, b, kPi](Scalar x, Scalar y, Scalar t) {
        return (1 - 2 * a + b * b + 2 * kPi * kPi) * exp(-t) * sin(kPi * x) *
               sin(kPi * y);
      };
      sp.phi = [kPi](Scalar x, Scalar y) { return sin(kPi * x) * sin(kPi * y); };
      sp.psi = [kPi](Scalar x, Scalar y) { return -sin(kPi * x) * sin(kPi * y); };
      sp.x_min = {FaceKind::Neumann, [kPi](Scalar s, Scalar t) {
                    return kPi * exp(-t) * sin(kPi * s);
                  }};
      sp.x_max = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.y_min = {FaceKind::Dirichlet, [](Scalar, Scalar) { return Scalar(0); }};
      sp.y_max = {FaceKind::Neumann, [kPi](Scalar s, Scalar t) {
                    return -kPi * exp(-t) * sin(kPi * s);
                  }};
      return sp;
    }
    case 6: {  // u = log(1 + x + y + t), Neumann at x = 1 and y = 0
      sp.exact = [](Scalar x, Scalar y, Scalar t) { return log(1 + x + y + t); };
      sp.forcing = [a, b](Scalar x, Scalar y, Scalar t) {
        const Scalar s = 1 + x + y + t;
        return 1 / (s * s) + 2 * a / s + b * b * log(s);
      };
      sp.phi = [](Scalar x, Scalar y) { return log(1 + x + y); };
      sp.psi = [](Scalar x, Scalar y) { return 1 / (1 + x + y); };
      sp.x_min = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return log(1 + s + t);
                  }};
      sp.x_max = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return 1 / (2 + s + t);
                  }};
      sp.y_min = {FaceKind::Neumann, [](Scalar s, Scalar t) {
                    return 1 / (1 + s + t);
                  }};
      sp.y_max = {FaceKind::Dirichlet, [](Scalar s, Scalar t) {
                    return log(2 + s + t);
                  }};
      return sp;
    }
    default:
      throw UnknownProblem("builtin problem id must be 1..6, got " +
                           std::to_string(id));
  }
}

template <class Scalar = double>
TelegraphSpec<Scalar> builtin(int id) {
  const bool damped = (id == 2 || id == 3);
  return builtin<Scalar>(id, damped ? Scalar(10) : Scalar(1),
                         damped ? Scalar(5) : Scalar(1));
}

namespace detail {

template <class Scalar>
std::string point_str(Scalar a, Scalar b) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ")";
  return os.str();
}

}  // namespace detail

// Admissibility diagnostics; an empty list means the spec is usable on the
// grid.  Checks are sampled, not proved: nodes of the grid, a few times.
template <class Scalar>
std::vector<std::string> validate(const TelegraphSpec<Scalar>& spec,
                                  const Grid<Scalar>& grid) {
  std::vector<std::string> out;
  if (!(spec.alpha > 0)) out.push_back("alpha must be positive");
  if (spec.beta < 0) out.push_back("beta must be nonnegative");

  const Scalar times[] = {Scalar(0), Scalar(0.5), Scalar(1)};
  bool phi_ok = true, psi_ok = true, forcing_ok = true;
  for (int i = 0; i < grid.nx && (phi_ok || psi_ok || forcing_ok); ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const Scalar x = grid.x(i), y = grid.y(j);
      if (phi_ok && !std::isfinite(spec.phi(x, y))) {
        out.push_back("phi is not finite at " + detail::point_str(x, y));
        phi_ok = false;
      }
      if (psi_ok && !std::isfinite(spec.psi(x, y))) {
        out.push_back("psi is not finite at " + detail::point_str(x, y));
        psi_ok = false;
      }
      if (forcing_ok) {
        for (Scalar t : times) {
          if (!std::isfinite(spec.forcing(x, y, t))) {
            out.push_back("forcing is not finite at " + detail::point_str(x, y) +
                          ", t = " + std::to_string(static_cast<double>(t)));
            forcing_ok = false;
            break;
          }
        }
      }
    }
  }

  struct FaceView {
    const char* name;
    const FaceCondition<Scalar>* face;
    bool along_y;   // running coordinate is y
    Scalar fixed;   // value of the fixed coordinate
  };
  const FaceView faces[] = {
      {"x_min", &spec.x_min, true, Scalar(0)},
      {"x_max", &spec.x_max, true, Scalar(1)},
      {"y_min", &spec.y_min, false, Scalar(0)},
      {"y_max", &spec.y_max, false, Scalar(1)},
  };

  for (const FaceView& fv : faces) {
    const VectorX<Scalar>& coord = fv.along_y ? grid.y : grid.x;
    bool finite_ok = true;
    Scalar max_dev = 0;
    for (Eigen::Index k = 0; k < coord.size(); ++k) {
      const Scalar s = coord(k);
      for (Scalar t : times) {
        const Scalar val = fv.face->data(s, t);
        if (!std::isfinite(val) && finite_ok) {
          out.push_back(std::string(fv.name) + " face data is not finite at " +
                        detail::point_str(s, t));
          finite_ok = false;
        }
      }
      if (fv.face->kind == FaceKind::Dirichlet) {
        const Scalar on_face = fv.along_y ? spec.phi(fv.fixed, s)
                                          : spec.phi(s, fv.fixed);
        const Scalar dev = std::abs(fv.face->data(s, Scalar(0)) - on_face);
        if (std::isfinite(dev)) max_dev = std::max(max_dev, dev);
      }
    }
    if (fv.face->kind == FaceKind::Dirichlet && max_dev > Scalar(1e-10)) {
      std::ostringstream os;
      os << fv.name << " Dirichlet data disagrees with phi at t = 0 (max |diff| = "
         << static_cast<double>(max_dev) << ")";
      out.push_back(os.str());
    }
  }

  // corners shared by two Dirichlet faces must carry one value
  struct Corner {
    const FaceView* xf;
    const FaceView* yf;
    Scalar cx, cy;
  };
  const Corner corners[] = {
      {&faces[0], &faces[2], Scalar(0), Scalar(0)},
      {&faces[0], &faces[3], Scalar(0), Scalar(1)},
      {&faces[1], &faces[2], Scalar(1), Scalar(0)},
      {&faces[1], &faces[3], Scalar(1), Scalar(1)},
  };
  for (const Corner& c : corners) {
    if (c.xf->face->kind != FaceKind::Dirichlet ||
        c.yf->face->kind != FaceKind::Dirichlet)
      continue;
    Scalar max_dev = 0;
    for (Scalar t : times) {
      const Scalar dev = std::abs(c.xf->face->data(c.cy, t) -
                                  c.yf->face->data(c.cx, t));
      if (std::isfinite(dev)) max_dev = std::max(max_dev, dev);
    }
    if (max_dev > Scalar(1e-10)) {
      std::ostringstream os;
      os << "corner " << detail::point_str(c.cx, c.cy)
         << " Dirichlet data disagrees between " << c.xf->name << " and "
         << c.yf->name << " (max |diff| = " << static_cast<double>(max_dev)
         << ")";
      out.push_back(os.str());
    }
  }
  return out;
}

}  // namespace expdq

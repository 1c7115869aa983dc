// Prints a quadrature weight matrix as CSV at full double precision, for
// auditing against an independent implementation.
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "expdq/problem.hpp"
#include "expdq/weights.hpp"

int main(int argc, char** argv) {
  if (argc < 3 || argc > 4) {
    std::fprintf(stderr, "usage: %s <nodes> <p> [order]\n  order: 1 or 2 (default 1)\n",
                 argv[0]);
    return 2;
  }
  const int n = std::atoi(argv[1]);
  const double p = std::atof(argv[2]);
  const int order = argc == 4 ? std::atoi(argv[3]) : 1;
  if (order != 1 && order != 2) {
    std::fprintf(stderr, "order must be 1 or 2\n");
    return 2;
  }
  try {
    const auto grid = expdq::make_grid<double>(n, n);
    const auto w = expdq::make_weights<double>(grid.x, p);
    const auto& m = order == 1 ? w.order1 : w.order2;
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j)
        std::printf("%.17g%s", m(i, j), j + 1 < m.cols() ? "," : "");
      std::printf("\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

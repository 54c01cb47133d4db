// Test-only reference computations, kept independent of the library's
// transform and counting code paths.
#pragma once

#include <complex>
#include <vector>

#include "upslab/grid.hpp"
#include "upslab/signal.hpp"

namespace oracles {

// Textbook evaluation of F(m) = n^(-d) sum_x exp(-2 pi i x.m / n) f(x),
// written against the definition with std::polar.
inline upslab::Complex forward_coefficient(const upslab::GridParams& g,
                                           const Eigen::VectorXcd& values, std::int64_t m) {
  const double pi = 3.141592653589793238462643383279502884;
  upslab::Complex acc{0.0, 0.0};
  for (std::int64_t x = 0; x < g.total; ++x) {
    const auto dot = static_cast<double>(upslab::dot_mod(g, x, m));
    acc += std::polar(1.0, -2.0 * pi * dot / static_cast<double>(g.n)) * values[x];
  }
  return acc / static_cast<double>(g.total);
}

inline Eigen::VectorXcd forward_all(const upslab::GridParams& g, const Eigen::VectorXcd& values) {
  Eigen::VectorXcd out(g.total);
  for (std::int64_t m = 0; m < g.total; ++m) out[m] = forward_coefficient(g, values, m);
  return out;
}

// Literal quadruple count over U^4, the definition with four nested loops.
inline std::int64_t quadruple_count(const upslab::GridParams& g,
                                    const std::vector<std::int64_t>& pts) {
  std::int64_t count = 0;
  for (std::int64_t x : pts)
    for (std::int64_t y : pts) {
      const std::int64_t s = upslab::add_points(g, x, y);
      for (std::int64_t xp : pts)
        for (std::int64_t yp : pts)
          if (upslab::add_points(g, xp, yp) == s) ++count;
    }
  return count;
}

}  // namespace oracles

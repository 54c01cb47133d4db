#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "upslab/grid.hpp"

namespace upslab {

using Complex = std::complex<double>;

enum class Domain { Space, Frequency };

/// Dense complex-valued function on the grid, in flat (row-major) order.
struct Signal {
  GridParams grid;
  Domain domain = Domain::Space;
  Eigen::VectorXcd values;
};

/// Validated constructor: length must match the grid and entries be finite.
inline Signal make_signal(const GridParams& grid, Domain domain, Eigen::VectorXcd values) {
  if (values.size() != grid.total)
    throw std::invalid_argument("signal length does not match grid size");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw std::invalid_argument("signal contains a non-finite value");
  }
  return Signal{grid, domain, std::move(values)};
}

inline Signal zero_signal(const GridParams& grid, Domain domain) {
  return Signal{grid, domain, Eigen::VectorXcd::Zero(grid.total)};
}

inline Signal delta_signal(const GridParams& grid, std::int64_t at = 0) {
  Signal s = zero_signal(grid, Domain::Space);
  s.values[at] = 1.0;
  return s;
}

/// l^p counting norm over the grid; p = inf gives the max modulus.
inline double pnorm(const Eigen::VectorXcd& v, double p) {
  if (p < 1.0) throw std::invalid_argument("pnorm requires p >= 1");
  if (std::isinf(p)) return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace upslab

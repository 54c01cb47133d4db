#include "upslab/transform.hpp"

#include <cmath>
#include <vector>

#include "upslab/fft.hpp"

namespace upslab {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<Complex> character_table(const GridParams& g) {
  std::vector<Complex> table(static_cast<std::size_t>(g.n));
  for (std::int64_t t = 0; t < g.n; ++t) {
    const double angle = kTwoPi * static_cast<double>(t) / static_cast<double>(g.n);
    table[static_cast<std::size_t>(t)] = Complex{std::cos(angle), std::sin(angle)};
  }
  return table;
}

// Direct evaluation of y[m] = sum_x chi(sign * x.m) f(x). Coordinates are
// tabulated once so the inner loop is integer dot products plus one lookup.
Eigen::VectorXcd naive_transform(const GridParams& g, const Eigen::VectorXcd& in, int sign) {
  const auto table = character_table(g);
  const auto total = static_cast<std::size_t>(g.total);
  std::vector<std::int64_t> coords(total * static_cast<std::size_t>(g.d));
  for (std::int64_t i = 0; i < g.total; ++i) {
    std::int64_t rest = i;
    for (int a = g.d - 1; a >= 0; --a) {
      coords[static_cast<std::size_t>(i) * g.d + a] = rest % g.n;
      rest /= g.n;
    }
  }
  Eigen::VectorXcd out(g.total);
  for (std::int64_t m = 0; m < g.total; ++m) {
    const std::int64_t* cm = &coords[static_cast<std::size_t>(m) * g.d];
    Complex acc{0.0, 0.0};
    for (std::int64_t x = 0; x < g.total; ++x) {
      const std::int64_t* cx = &coords[static_cast<std::size_t>(x) * g.d];
      std::int64_t dot = 0;
      for (int a = 0; a < g.d; ++a) dot += cx[a] * cm[a];
      dot %= g.n;
      if (sign < 0 && dot != 0) dot = g.n - dot;
      acc += table[static_cast<std::size_t>(dot)] * in[x];
    }
    out[m] = acc;
  }
  return out;
}

Eigen::VectorXcd fast_transform(const GridParams& g, const Eigen::VectorXcd& in, int sign) {
  Eigen::VectorXcd out = in;
  detail::fft_axes(out.data(), g.n, g.d, sign);
  return out;
}

Eigen::VectorXcd run_transform(const GridParams& g, const Eigen::VectorXcd& in, int sign,
                               TransformPath path) {
  const bool fast = path == TransformPath::Fast ||
                    (path == TransformPath::Auto && g.total > kFastPathThreshold);
  return fast ? fast_transform(g, in, sign) : naive_transform(g, in, sign);
}

}  // namespace

Complex character(const GridParams& grid, std::int64_t t) {
  std::int64_t r = t % grid.n;
  if (r < 0) r += grid.n;
  const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(grid.n);
  return Complex{std::cos(angle), std::sin(angle)};
}

Signal dft_forward(const Signal& f, TransformPath path) {
  if (f.domain != Domain::Space)
    throw std::invalid_argument("dft_forward expects a space-domain signal");
  Eigen::VectorXcd out = run_transform(f.grid, f.values, -1, path);
  out *= 1.0 / static_cast<double>(f.grid.total);
  return Signal{f.grid, Domain::Frequency, std::move(out)};
}

Signal dft_inverse(const Signal& F, TransformPath path) {
  if (F.domain != Domain::Frequency)
    throw std::invalid_argument("dft_inverse expects a frequency-domain signal");
  return Signal{F.grid, Domain::Space, run_transform(F.grid, F.values, +1, path)};
}

double plancherel_gap(const Signal& f, TransformPath path) {
  if (f.domain != Domain::Space)
    throw std::invalid_argument("plancherel_gap expects a space-domain signal");
  const Signal F = dft_forward(f, path);
  const double space_energy = f.values.squaredNorm();
  const double freq_energy = static_cast<double>(f.grid.total) * F.values.squaredNorm();
  return std::abs(space_energy - freq_energy) / std::max(space_energy, 1e-300);
}

Signal band_limit(const Signal& f, const IndexSet& missing) {
  if (f.domain != Domain::Space)
    throw std::invalid_argument("band_limit expects a space-domain signal");
  if (missing.grid != f.grid) throw std::invalid_argument("band_limit: set lives on another grid");
  Signal F = dft_forward(f);
  for (std::int64_t m : missing.indices) F.values[m] = Complex{0.0, 0.0};
  return dft_inverse(F);
}

IndexSet support(const Signal& f, double tau_rel) {
  const double peak = f.values.size() ? f.values.cwiseAbs().maxCoeff() : 0.0;
  const double threshold = std::max(tau_rel * peak, 1e-12);
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < f.grid.total; ++i) {
    if (std::abs(f.values[i]) > threshold) idx.push_back(i);
  }
  return IndexSet{f.grid, std::move(idx)};
}

}  // namespace upslab

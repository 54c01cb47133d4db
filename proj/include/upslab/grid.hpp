#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "upslab/errors.hpp"

namespace upslab {

/// Default cap on dense storage (number of grid points).
inline constexpr std::int64_t kDefaultGridCap = std::int64_t{1} << 20;

/// Grid cap, overridable through the UPSLAB_GRID_CAP environment variable.
inline std::int64_t grid_cap() {
  if (const char* env = std::getenv("UPSLAB_GRID_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
  }
  return kDefaultGridCap;
}

/// The group of d-tuples of integers mod n under componentwise addition.
struct GridParams {
  std::int64_t n = 0;      ///< modulus, >= 2
  int d = 0;               ///< dimension, >= 1
  std::int64_t total = 0;  ///< n^d

  friend bool operator==(const GridParams&, const GridParams&) = default;
};

/// Validated constructor for GridParams. Throws CapExceededError when n^d
/// exceeds the dense-storage cap and std::invalid_argument on bad (n, d).
inline GridParams make_grid(std::int64_t n, int d, std::int64_t cap = grid_cap()) {
  if (n < 2) throw std::invalid_argument("grid modulus must be >= 2");
  if (d < 1) throw std::invalid_argument("grid dimension must be >= 1");
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > cap / n) {
      throw CapExceededError("grid size " + std::to_string(n) + "^" + std::to_string(d) +
                             " exceeds cap " + std::to_string(cap));
    }
    total *= n;
  }
  return GridParams{n, d, total};
}

/// A point of the grid as a coordinate tuple, each entry in [0, n).
using Point = std::vector<std::int64_t>;

/// Row-major flat index, coordinate 0 most significant.
inline std::int64_t encode_point(const GridParams& g, const Point& coords) {
  if (static_cast<int>(coords.size()) != g.d)
    throw std::invalid_argument("point dimension does not match grid");
  std::int64_t flat = 0;
  for (int i = 0; i < g.d; ++i) {
    std::int64_t c = coords[i] % g.n;
    if (c < 0) c += g.n;
    flat = flat * g.n + c;
  }
  return flat;
}

inline Point decode_point(const GridParams& g, std::int64_t flat) {
  if (flat < 0 || flat >= g.total) throw std::invalid_argument("flat index out of range");
  Point coords(static_cast<std::size_t>(g.d));
  for (int i = g.d - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = flat % g.n;
    flat /= g.n;
  }
  return coords;
}

/// Componentwise sum mod n in flat-index form.
inline std::int64_t add_points(const GridParams& g, std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  std::int64_t scale = 1;
  for (int i = 0; i < g.d; ++i) {
    const std::int64_t ca = (a / scale) % g.n;
    const std::int64_t cb = (b / scale) % g.n;
    out += ((ca + cb) % g.n) * scale;
    scale *= g.n;
  }
  return out;
}

/// Componentwise difference mod n in flat-index form.
inline std::int64_t sub_points(const GridParams& g, std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  std::int64_t scale = 1;
  for (int i = 0; i < g.d; ++i) {
    const std::int64_t ca = (a / scale) % g.n;
    const std::int64_t cb = (b / scale) % g.n;
    out += (((ca - cb) % g.n + g.n) % g.n) * scale;
    scale *= g.n;
  }
  return out;
}

/// Dot product of two grid points mod n, in flat-index form.
inline std::int64_t dot_mod(const GridParams& g, std::int64_t a, std::int64_t b) {
  std::int64_t acc = 0;
  std::int64_t ra = a, rb = b;
  for (int i = 0; i < g.d; ++i) {
    acc += (ra % g.n) * (rb % g.n) % g.n;
    ra /= g.n;
    rb /= g.n;
  }
  return acc % g.n;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace upslab

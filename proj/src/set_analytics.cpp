#include "upslab/set_analytics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "upslab/rng.hpp"
#include "upslab/transform.hpp"

namespace upslab {
namespace {

Signal indicator(const IndexSet& s) {
  Signal f = zero_signal(s.grid, Domain::Space);
  for (std::int64_t i : s.indices) f.values[i] = 1.0;
  return f;
}

// Energy of a subset given as flat indices, via sum-multiset counts:
// energy = sum_s r(s)^2 where r(s) = #{(x, y) : x + y = s}. Touched cells
// are tracked so the scratch array can be reset in O(|U|^2).
std::int64_t energy_by_pair_sums(const GridParams& g, const std::vector<std::int64_t>& pts,
                                 std::vector<std::int32_t>& scratch,
                                 std::vector<std::int64_t>& touched) {
  touched.clear();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const std::int64_t s = add_points(g, pts[i], pts[j]);
      if (scratch[static_cast<std::size_t>(s)]++ == 0) touched.push_back(s);
    }
  }
  std::int64_t energy = 0;
  for (std::int64_t s : touched) {
    const std::int64_t r = scratch[static_cast<std::size_t>(s)];
    energy += r * r;
    scratch[static_cast<std::size_t>(s)] = 0;
  }
  return energy;
}

}  // namespace

double phi(const IndexSet& a) {
  if (a.empty()) throw std::invalid_argument("phi of the empty set is undefined");
  if (a.grid.total < 2) throw std::invalid_argument("phi needs a nonzero frequency");
  const Signal spectrum = dft_forward(indicator(a));
  double peak = 0.0;
  for (std::int64_t m = 1; m < a.grid.total; ++m)
    peak = std::max(peak, std::abs(spectrum.values[m]));
  return peak;
}

double salem_level(const IndexSet& s) {
  return phi(s) * static_cast<double>(s.grid.total) / std::sqrt(static_cast<double>(s.size()));
}

std::int64_t additive_energy(const IndexSet& u, std::int64_t cap) {
  if (u.size() > cap)
    throw BudgetExceededError("additive_energy: |U| = " + std::to_string(u.size()) +
                              " exceeds cap " + std::to_string(cap));
  const auto bits = to_bitmap(u);
  std::int64_t count = 0;
  for (std::int64_t x : u.indices) {
    for (std::int64_t y : u.indices) {
      const std::int64_t s = add_points(u.grid, x, y);
      for (std::int64_t xp : u.indices) {
        const std::int64_t yp = sub_points(u.grid, s, xp);
        count += bits[static_cast<std::size_t>(yp)];
      }
    }
  }
  return count;
}

std::int64_t energy_via_fourier(const IndexSet& u) {
  if (u.empty()) throw std::invalid_argument("energy of the empty set is undefined");
  const Signal spectrum = dft_forward(indicator(u));
  double moment = 0.0;
  for (std::int64_t z = 0; z < u.grid.total; ++z) {
    const double a2 = std::norm(spectrum.values[z]);
    moment += a2 * a2;
  }
  const double total = static_cast<double>(u.grid.total);
  const double value = total * total * total * moment;
  const double rounded = std::round(value);
  if (std::abs(value - rounded) >= 1e-6)
    throw InternalCheckError("energy_via_fourier: fourth moment " + std::to_string(value) +
                             " is not within 1e-6 of an integer");
  return static_cast<std::int64_t>(rounded);
}

LambdaEnergy lambda_energy(const IndexSet& s, int subset_cap) {
  if (s.empty()) throw std::invalid_argument("lambda_energy of the empty set is undefined");
  const auto k = static_cast<std::size_t>(s.size());
  if (s.size() > subset_cap) {
    const double level = salem_level(s);
    return LambdaEnergy{std::min(static_cast<double>(s.size()), level * level), false};
  }
  std::vector<std::int32_t> scratch(static_cast<std::size_t>(s.grid.total), 0);
  std::vector<std::int64_t> touched;
  std::vector<std::int64_t> pts;
  pts.reserve(k);
  double worst = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    pts.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::uint64_t{1} << i)) pts.push_back(s.indices[i]);
    const auto energy = energy_by_pair_sums(s.grid, pts, scratch, touched);
    const double ratio = static_cast<double>(energy) /
                         (static_cast<double>(pts.size()) * static_cast<double>(pts.size()));
    worst = std::max(worst, ratio);
  }
  return LambdaEnergy{worst, true};
}

SetProfile profile(const IndexSet& s, int subset_cap) {
  if (s.empty()) throw std::invalid_argument("profile of the empty set is undefined");
  SetProfile p;
  p.size = s.size();
  p.dens = static_cast<double>(p.size) / static_cast<double>(s.grid.total);
  p.phi = phi(s);
  p.lambda_salem = p.phi * static_cast<double>(s.grid.total) / std::sqrt(static_cast<double>(p.size));
  p.lambda_size = static_cast<double>(p.size) /
                  std::pow(static_cast<double>(s.grid.n), static_cast<double>(s.grid.d) / 2.0);
  p.energy = energy_via_fourier(s);
  const LambdaEnergy le = lambda_energy(s, subset_cap);
  p.lambda_energy = le.value;
  p.lambda_energy_exact = le.exact;
  p.lambda_energy_upper = std::min(static_cast<double>(p.size), p.lambda_salem * p.lambda_salem);
  return p;
}

IndexSet random_set(const GridParams& grid, std::int64_t size, std::uint64_t seed) {
  if (size < 1 || size > grid.total)
    throw std::invalid_argument("random_set size must lie in [1, n^d]");
  Rng rng(seed);
  std::vector<std::int64_t> pool(static_cast<std::size_t>(grid.total));
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  for (std::int64_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(grid.total - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(size));
  return make_index_set(grid, std::move(pool));
}

IndexSet subgroup_span(const GridParams& grid, const std::vector<Point>& generators) {
  if (!is_prime(grid.n))
    throw std::invalid_argument("subgroup_span requires a prime modulus");
  std::vector<char> in_span(static_cast<std::size_t>(grid.total), 0);
  in_span[0] = 1;
  std::vector<std::int64_t> span{0};
  for (const Point& gen : generators) {
    const std::int64_t gflat = encode_point(grid, gen);
    std::vector<std::int64_t> extended = span;
    for (std::int64_t base : span) {
      std::int64_t cur = base;
      for (std::int64_t t = 1; t < grid.n; ++t) {
        cur = add_points(grid, cur, gflat);
        if (!in_span[static_cast<std::size_t>(cur)]) {
          in_span[static_cast<std::size_t>(cur)] = 1;
          extended.push_back(cur);
        }
      }
    }
    span = std::move(extended);
  }
  return make_index_set(grid, std::move(span));
}

bool is_subgroup(const IndexSet& e) {
  if (e.empty()) return false;
  const auto bits = to_bitmap(e);
  for (std::int64_t a : e.indices)
    for (std::int64_t b : e.indices)
      if (!bits[static_cast<std::size_t>(add_points(e.grid, a, b))]) return false;
  return true;
}

IndexSet annihilator(const IndexSet& e) {
  if (!is_subgroup(e)) throw std::invalid_argument("annihilator requires a subgroup");
  std::vector<std::int64_t> out;
  for (std::int64_t m = 0; m < e.grid.total; ++m) {
    bool kills_all = true;
    for (std::int64_t x : e.indices) {
      if (dot_mod(e.grid, x, m) != 0) {
        kills_all = false;
        break;
      }
    }
    if (kills_all) out.push_back(m);
  }
  return IndexSet{e.grid, std::move(out)};
}

}  // namespace upslab

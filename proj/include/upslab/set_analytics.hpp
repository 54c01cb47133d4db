#pragma once

#include <cstdint>
#include <vector>

#include "upslab/index_set.hpp"
#include "upslab/signal.hpp"

namespace upslab {

/// Structure constants of a set, all derived from the indicator function.
struct SetProfile {
  std::int64_t size = 0;
  double dens = 0.0;            ///< size / n^d
  double phi = 0.0;             ///< peak nonzero Fourier coefficient
  double lambda_salem = 0.0;    ///< minimal Salem level, phi * n^d / sqrt(size)
  double lambda_size = 0.0;     ///< size / n^(d/2)
  std::int64_t energy = 0;      ///< additive energy (quadruple count)
  double lambda_energy = 0.0;   ///< worst energy(U)/|U|^2 over subsets, or a surrogate
  bool lambda_energy_exact = false;
  double lambda_energy_upper = 0.0;  ///< min(size, lambda_salem^2)
};

/// Peak modulus of the indicator's spectrum over nonzero frequencies.
double phi(const IndexSet& a);

/// Minimal level at which the set is Salem: phi * n^d / sqrt(size).
double salem_level(const IndexSet& s);

/// Number of quadruples (x, y, x', y') in U^4 with x + y = x' + y'
/// componentwise mod n. Counted by fixing x, y, x' and membership-testing
/// y' = x + y - x'. Throws BudgetExceededError when |U| exceeds the cap.
std::int64_t additive_energy(const IndexSet& u, std::int64_t cap = 4096);

/// The same count through the Fourier side: round(n^(3d) * sum |Uhat|^4).
/// Throws InternalCheckError if the rounding residue exceeds 1e-6.
std::int64_t energy_via_fourier(const IndexSet& u);

struct LambdaEnergy {
  double value = 0.0;
  bool exact = false;
};

/// Worst-case energy(U)/|U|^2 over nonempty subsets U of s, exact by
/// enumeration when |s| <= subset_cap; otherwise the surrogate
/// min(|s|, salem_level^2) with exact = false.
LambdaEnergy lambda_energy(const IndexSet& s, int subset_cap = 20);

SetProfile profile(const IndexSet& s, int subset_cap = 20);

/// Uniform sample of `size` distinct points, deterministic in the seed
/// (partial Fisher-Yates).
IndexSet random_set(const GridParams& grid, std::int64_t size, std::uint64_t seed);

/// Linear span of the generators over Z_n; requires n prime.
IndexSet subgroup_span(const GridParams& grid, const std::vector<Point>& generators);

/// True when the set is nonempty and closed under componentwise addition.
bool is_subgroup(const IndexSet& e);

/// Dual subgroup { m : x.m = 0 mod n for all x in e }. Requires a subgroup.
IndexSet annihilator(const IndexSet& e);

}  // namespace upslab

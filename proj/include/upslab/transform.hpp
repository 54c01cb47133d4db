#pragma once

#include "upslab/index_set.hpp"
#include "upslab/signal.hpp"

namespace upslab {

/// Dense totals up to this size use the quadratic-time oracle; larger grids
/// take the per-axis fast path. Both paths are exposed for cross-checking.
inline constexpr std::int64_t kFastPathThreshold = 4096;

enum class TransformPath { Auto, Naive, Fast };

/// chi(t) = exp(2*pi*i*t / n), t reduced mod n.
Complex character(const GridParams& grid, std::int64_t t);

/// Forward transform: F(m) = n^(-d) * sum_x chi(-x.m) f(x). Input must be
/// space-tagged; output is frequency-tagged.
Signal dft_forward(const Signal& f, TransformPath path = TransformPath::Auto);

/// Inversion: f(x) = sum_m chi(x.m) F(m). Input must be frequency-tagged.
Signal dft_inverse(const Signal& F, TransformPath path = TransformPath::Auto);

/// Relative defect of sum_x |f|^2 = n^d * sum_m |fhat|^2.
double plancherel_gap(const Signal& f, TransformPath path = TransformPath::Auto);

/// Sharp frequency cut-off: zeroes the spectrum on the missing set S and
/// inverts. Space-tagged in, space-tagged out.
Signal band_limit(const Signal& f, const IndexSet& missing);

/// Numerical support: indices with |f| above tau_rel times the peak modulus
/// (absolute floor 1e-12). The zero signal has empty support.
IndexSet support(const Signal& f, double tau_rel = 1e-9);

}  // namespace upslab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upslab/set_analytics.hpp"
#include "upslab/transform.hpp"

namespace upslab {

enum class UpKind { Classical, Restriction, Salem, Interpolated };

/// One evaluated uncertainty-principle inequality, lhs >= rhs.
struct UpAudit {
  UpKind kind = UpKind::Classical;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool tight = false;  ///< |lhs - rhs| <= 1e-9 * max(lhs, rhs)
  // Echoed inputs.
  std::int64_t support_size = 0;   ///< |E|
  std::int64_t spectrum_size = 0;  ///< |Sigma|
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> constant;  ///< C_{p,q} or the Salem level
  bool constant_exact = true;      ///< false when a lambda_energy surrogate fed the constant
};

struct UpAuditOptions {
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> constant;  ///< externally supplied C_{p,q}
  int subset_cap = 20;
};

enum class ConditionId { DS21, COR41, DRA43i, DRA43ii, SALEM45 };

std::string condition_name(ConditionId id);

/// A sufficient-condition check for recovery; satisfied iff lhs < threshold
/// strictly.
struct ConditionVerdict {
  ConditionId id = ConditionId::DS21;
  double lhs = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
  bool a_posteriori = false;  ///< |E| came from a recovered support, not a hypothesis
};

struct ConditionExtras {
  std::optional<double> p;
  std::optional<double> cpq;
  std::optional<double> lambda_salem;
  std::optional<double> dens;
};

/// One restriction-estimate instance, lhs <= rhs.
struct RestrictionCheck {
  double p = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool applicable = true;  ///< false when the branch's hypothesis fails (dens = 1)
  std::optional<double> constant;
  bool constant_exact = true;
};

/// Normalized l^q average of the spectrum over S:
/// ((1/|S|) sum_{m in S} |F(m)|^q)^(1/q); q = inf gives the max over S.
double restriction_lhs(const Signal& freq, const IndexSet& s, double q);

/// Largest observed ratio lhs / (n^(-d) * ||f||_p) over a fixed test family:
/// every delta, the extension sum_{m in S} chi(x.m), `trials` random Gaussian
/// signals and `trials` random-set indicators. A lower estimate of the best
/// constant C_{p,q}; deterministic in the seed, non-decreasing in trials.
double empirical_restriction_constant(const IndexSet& s, double p, double q, int trials,
                                      std::uint64_t seed);

/// The (4/3, 2) restriction constant lambda_size^(-1/2) * lambda_energy^(1/4).
double l43_constant(const SetProfile& prof);

/// Restriction constant for (p, 2), 1 <= p <= 2, from the Salem level:
/// lambda^(1/2 - 1/p') * |S|^(-1/4 - 1/(2p')) * n^(d/p').
double salem_interpolated_constant(double lambda_salem, std::int64_t set_size,
                                   const GridParams& grid, double p);

/// Checks the (4/3, 2) estimate for this f and S; the constant comes from the
/// set's profile (exact lambda_energy when |S| <= subset_cap).
RestrictionCheck check_l43_restriction(const Signal& f, const IndexSet& s, int subset_cap = 20);

/// Checks the Salem-driven estimate at exponent p in [1, 2]: the l^1 bound at
/// p = 1 (density-corrected), plain Plancherel at p = 2, the interpolated
/// constant in between. Not applicable when dens(S) = 1 and p < 2.
RestrictionCheck check_salem_restriction(const Signal& f, const IndexSet& s, double p);

/// Evaluates the chosen uncertainty principle on supp(f) and supp(fhat).
UpAudit up_audit(const Signal& f, UpKind kind, const UpAuditOptions& options = {});

/// Evaluates a recovery sufficient condition with |E| = t, |S| = s.
ConditionVerdict recovery_condition(ConditionId id, std::int64_t t, std::int64_t s,
                                    const GridParams& grid, const ConditionExtras& extras = {});

}  // namespace upslab

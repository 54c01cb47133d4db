#include "upslab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "upslab/rng.hpp"

namespace upslab {
namespace {

constexpr double kHoldSlack = 1e-12;

bool leq_with_slack(double lhs, double rhs) { return lhs <= rhs * (1.0 + kHoldSlack) + 1e-300; }

double conjugate_exponent(double p) {
  // 1/p + 1/p' = 1; p = 1 maps to infinity.
  if (p <= 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

Signal set_indicator(const IndexSet& s) {
  Signal f = zero_signal(s.grid, Domain::Space);
  for (std::int64_t i : s.indices) f.values[i] = 1.0;
  return f;
}

}  // namespace

std::string condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::DS21: return "DS-2.1";
    case ConditionId::COR41: return "COR-4.1";
    case ConditionId::DRA43i: return "DRA-4.3i";
    case ConditionId::DRA43ii: return "DRA-4.3ii";
    case ConditionId::SALEM45: return "SALEM-4.5";
  }
  return "?";
}

double restriction_lhs(const Signal& freq, const IndexSet& s, double q) {
  if (freq.domain != Domain::Frequency)
    throw std::invalid_argument("restriction_lhs expects a frequency-domain signal");
  if (s.empty()) throw std::invalid_argument("restriction_lhs needs a nonempty set");
  if (s.grid != freq.grid) throw std::invalid_argument("restriction_lhs: grid mismatch");
  if (q < 1.0) throw std::invalid_argument("restriction_lhs requires q >= 1");
  if (std::isinf(q)) {
    double peak = 0.0;
    for (std::int64_t m : s.indices) peak = std::max(peak, std::abs(freq.values[m]));
    return peak;
  }
  double acc = 0.0;
  for (std::int64_t m : s.indices) acc += std::pow(std::abs(freq.values[m]), q);
  return std::pow(acc / static_cast<double>(s.size()), 1.0 / q);
}

double empirical_restriction_constant(const IndexSet& s, double p, double q, int trials,
                                      std::uint64_t seed) {
  if (p < 1.0 || q < p) throw std::invalid_argument("need 1 <= p <= q");
  if (s.empty()) throw std::invalid_argument("empirical constant needs a nonempty set");
  const GridParams& g = s.grid;
  const double scale = 1.0 / static_cast<double>(g.total);

  double best = 0.0;
  const auto consider = [&](const Signal& f) {
    const double denom = scale * pnorm(f.values, p);
    if (denom <= 0.0) return;
    best = std::max(best, restriction_lhs(dft_forward(f), s, q) / denom);
  };

  for (std::int64_t x = 0; x < g.total; ++x) consider(delta_signal(g, x));

  // Extension of the set: g(x) = sum_{m in S} chi(x.m).
  Signal ext_spectrum = zero_signal(g, Domain::Frequency);
  for (std::int64_t m : s.indices) ext_spectrum.values[m] = 1.0;
  consider(dft_inverse(ext_spectrum));

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, 1, static_cast<std::uint64_t>(trial)));
    Signal f = zero_signal(g, Domain::Space);
    for (std::int64_t x = 0; x < g.total; ++x)
      f.values[x] = Complex{rng.gaussian(), rng.gaussian()};
    consider(f);
  }
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t sub = derive_seed(seed, 2, static_cast<std::uint64_t>(trial));
    Rng rng(sub);
    const auto size = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g.total))) + 1;
    consider(set_indicator(random_set(g, size, derive_seed(sub, 3))));
  }
  return best;
}

double l43_constant(const SetProfile& prof) {
  return std::pow(prof.lambda_size, -0.5) * std::pow(prof.lambda_energy, 0.25);
}

double salem_interpolated_constant(double lambda_salem, std::int64_t set_size,
                                   const GridParams& grid, double p) {
  if (p < 1.0 || p > 2.0) throw std::invalid_argument("interpolated constant needs p in [1, 2]");
  const double ipc = 1.0 / conjugate_exponent(p);  // 1/p', zero at p = 1
  const double size = static_cast<double>(set_size);
  const double total = static_cast<double>(grid.total);
  return std::pow(lambda_salem, 0.5 - ipc) * std::pow(size, -0.25 - 0.5 * ipc) *
         std::pow(total, ipc);
}

RestrictionCheck check_l43_restriction(const Signal& f, const IndexSet& s, int subset_cap) {
  const SetProfile prof = profile(s, subset_cap);
  RestrictionCheck out;
  out.p = 4.0 / 3.0;
  out.constant = l43_constant(prof);
  out.constant_exact = prof.lambda_energy_exact;
  out.lhs = restriction_lhs(dft_forward(f), s, 2.0);
  out.rhs = *out.constant / static_cast<double>(f.grid.total) * pnorm(f.values, 4.0 / 3.0);
  out.holds = leq_with_slack(out.lhs, out.rhs);
  return out;
}

RestrictionCheck check_salem_restriction(const Signal& f, const IndexSet& s, double p) {
  if (p < 1.0 || p > 2.0) throw std::invalid_argument("check_salem_restriction needs p in [1, 2]");
  if (s.empty()) throw std::invalid_argument("check_salem_restriction needs a nonempty set");
  const GridParams& g = f.grid;
  const double total = static_cast<double>(g.total);
  const double size = static_cast<double>(s.size());
  const double dens = size / total;

  RestrictionCheck out;
  out.p = p;
  out.lhs = restriction_lhs(dft_forward(f), s, 2.0);
  if (p == 2.0) {
    // Plain Plancherel, no Salem input.
    out.rhs = std::pow(size, -0.5) * std::pow(total, -0.5) * pnorm(f.values, 2.0);
    out.holds = leq_with_slack(out.lhs, out.rhs);
    return out;
  }
  if (dens >= 1.0) {
    out.applicable = false;
    out.holds = true;  // vacuous: the branch's hypothesis fails
    return out;
  }
  const double level = salem_level(s);
  out.constant = level;
  if (p == 1.0) {
    out.rhs = (1.0 / total) * std::pow(size, -0.25) * std::sqrt(level) * pnorm(f.values, 1.0) /
              std::sqrt(1.0 - dens);
  } else {
    out.rhs = salem_interpolated_constant(level, s.size(), g, p) / total * pnorm(f.values, p);
  }
  out.holds = leq_with_slack(out.lhs, out.rhs);
  return out;
}

UpAudit up_audit(const Signal& f, UpKind kind, const UpAuditOptions& options) {
  if (f.domain != Domain::Space) throw std::invalid_argument("up_audit expects a space signal");
  if (f.values.isZero(0.0)) throw std::invalid_argument("up_audit is undefined for the zero signal");

  const IndexSet e = support(f);
  const Signal fhat = dft_forward(f);
  const IndexSet sigma = support(fhat);
  const double total = static_cast<double>(f.grid.total);
  const double es = static_cast<double>(e.size());
  const double ss = static_cast<double>(sigma.size());

  UpAudit audit;
  audit.kind = kind;
  audit.support_size = e.size();
  audit.spectrum_size = sigma.size();

  switch (kind) {
    case UpKind::Classical: {
      audit.lhs = es * ss;
      audit.rhs = total;
      break;
    }
    case UpKind::Restriction: {
      const double p = options.p.value_or(4.0 / 3.0);
      const double q = options.q.value_or(2.0);
      audit.p = p;
      audit.q = q;
      if (options.constant) {
        audit.constant = *options.constant;
      } else if (p == 4.0 / 3.0 && q == 2.0) {
        const SetProfile prof = profile(sigma, options.subset_cap);
        audit.constant = l43_constant(prof);
        audit.constant_exact = prof.lambda_energy_exact;
      } else {
        throw std::invalid_argument("restriction audit needs a C_{p,q} for these exponents");
      }
      audit.lhs = std::pow(es, 1.0 / p) * ss;
      audit.rhs = total / *audit.constant;
      break;
    }
    case UpKind::Salem: {
      const double dens = ss / total;
      audit.lhs = es * std::pow(ss, 0.75);
      if (dens >= 1.0) {
        audit.rhs = 0.0;
      } else {
        const double level = salem_level(sigma);
        audit.constant = level;
        audit.rhs = total * std::sqrt((1.0 - dens) / level);
      }
      break;
    }
    case UpKind::Interpolated: {
      const double p = options.p.value_or(1.5);
      audit.p = p;
      audit.q = 2.0;
      audit.lhs = std::pow(es, 1.0 / p) * ss;
      if (ss >= total) {
        // Full spectrum: the Salem level is 0 and the estimate is vacuous.
        audit.rhs = 0.0;
      } else {
        const double level = salem_level(sigma);
        audit.constant = salem_interpolated_constant(level, sigma.size(), f.grid, p);
        audit.rhs = total / *audit.constant;
      }
      break;
    }
  }
  audit.holds = audit.lhs >= audit.rhs * (1.0 - kHoldSlack) - 1e-300;
  audit.tight = std::abs(audit.lhs - audit.rhs) <= 1e-9 * std::max(std::abs(audit.lhs), std::abs(audit.rhs));
  return audit;
}

ConditionVerdict recovery_condition(ConditionId id, std::int64_t t, std::int64_t s,
                                    const GridParams& grid, const ConditionExtras& extras) {
  const double total = static_cast<double>(grid.total);
  const double td = static_cast<double>(t);
  const double sd = static_cast<double>(s);
  ConditionVerdict v;
  v.id = id;
  switch (id) {
    case ConditionId::DS21:
      v.lhs = td * sd;
      v.threshold = total / 2.0;
      break;
    case ConditionId::COR41: {
      if (!extras.p || !extras.cpq) throw std::invalid_argument("COR-4.1 needs p and C_{p,q}");
      v.lhs = std::pow(td, 1.0 / *extras.p) * sd;
      v.threshold = total / (std::pow(2.0, 1.0 / *extras.p) * *extras.cpq);
      break;
    }
    case ConditionId::DRA43i:
      v.lhs = td * sd;
      v.threshold = total / 4.0;
      break;
    case ConditionId::DRA43ii: {
      if (!extras.p || !extras.cpq) throw std::invalid_argument("DRA-4.3ii needs p and C_{p,q}");
      v.lhs = std::pow(td, 1.0 / *extras.p) * sd;
      v.threshold = total / (2.0 * *extras.cpq);
      break;
    }
    case ConditionId::SALEM45: {
      if (!extras.lambda_salem || !extras.dens)
        throw std::invalid_argument("SALEM-4.5 needs lambda_salem and dens");
      v.lhs = td * std::pow(sd, 0.75);
      const double one_minus = 1.0 - *extras.dens;
      v.threshold = one_minus <= 0.0
                        ? 0.0
                        : 0.5 * total * std::sqrt(one_minus / *extras.lambda_salem);
      break;
    }
  }
  v.satisfied = v.lhs < v.threshold;
  return v;
}

}  // namespace upslab

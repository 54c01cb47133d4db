#include "upslab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upslab {
namespace {

// Cumulative number of supports of size <= k, clamped at limit + 1.
std::int64_t support_count_clamped(std::int64_t n, std::int64_t k, std::int64_t limit) {
  std::int64_t sum = 0;
  double binom = 1.0;  // C(n, 0)
  for (std::int64_t i = 0; i <= k; ++i) {
    if (binom > static_cast<double>(limit) || sum > limit) return limit + 1;
    sum += static_cast<std::int64_t>(binom);
    binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return std::min(sum, limit + 1);
}

std::int64_t binom_clamped(std::int64_t n, std::int64_t k, std::int64_t limit) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  double binom = 1.0;
  for (std::int64_t i = 0; i < k; ++i) {
    binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (binom > static_cast<double>(limit)) return limit + 1;
  }
  return static_cast<std::int64_t>(std::llround(binom));
}

bool next_combination(std::vector<std::int64_t>& comb, std::int64_t n) {
  const auto k = static_cast<std::int64_t>(comb.size());
  std::int64_t i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (std::int64_t j = i + 1; j < k; ++j)
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

// Character matrix [chi(-x.m)] with rows over `rows` (frequencies) and
// columns over `cols` (grid points).
Eigen::MatrixXcd character_matrix(const GridParams& g, const std::vector<std::int64_t>& rows,
                                  const std::vector<std::int64_t>& cols) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          character(g, -dot_mod(g, cols[j], rows[i]));
    }
  }
  return a;
}

std::vector<ConditionVerdict> posterior_conditions(const GridParams& grid, std::int64_t e_size,
                                                   const IndexSet& missing,
                                                   const DraOptions& options) {
  std::vector<ConditionVerdict> out;
  ConditionVerdict dra_i = recovery_condition(ConditionId::DRA43i, e_size, missing.size(), grid);
  dra_i.a_posteriori = true;
  out.push_back(dra_i);
  if (options.cpq) {
    ConditionExtras extras;
    extras.p = options.p.value_or(4.0 / 3.0);
    extras.cpq = options.cpq;
    ConditionVerdict dra_ii =
        recovery_condition(ConditionId::DRA43ii, e_size, missing.size(), grid, extras);
    dra_ii.a_posteriori = true;
    out.push_back(dra_ii);
  }
  if (options.evaluate_salem && !missing.empty()) {
    ConditionExtras extras;
    extras.lambda_salem = salem_level(missing);
    extras.dens = static_cast<double>(missing.size()) / static_cast<double>(grid.total);
    ConditionVerdict salem =
        recovery_condition(ConditionId::SALEM45, e_size, missing.size(), grid, extras);
    salem.a_posteriori = true;
    out.push_back(salem);
  }
  return out;
}

bool any_satisfied(const std::vector<ConditionVerdict>& conditions) {
  return std::any_of(conditions.begin(), conditions.end(),
                     [](const ConditionVerdict& v) { return v.satisfied; });
}

}  // namespace

MaskedSpectrum make_masked_spectrum(const GridParams& grid, IndexSet missing,
                                    Eigen::VectorXcd observed) {
  if (missing.grid != grid) throw std::invalid_argument("masked spectrum: set grid mismatch");
  if (observed.size() != grid.total)
    throw std::invalid_argument("masked spectrum: value length mismatch");
  for (Eigen::Index i = 0; i < observed.size(); ++i) {
    if (!std::isfinite(observed[i].real()) || !std::isfinite(observed[i].imag()))
      throw std::invalid_argument("masked spectrum contains a non-finite value");
  }
  for (std::int64_t m : missing.indices) observed[m] = Complex{0.0, 0.0};
  return MaskedSpectrum{grid, std::move(missing), std::move(observed)};
}

MaskedSpectrum mask_spectrum(const Signal& freq, const IndexSet& s) {
  if (freq.domain != Domain::Frequency)
    throw std::invalid_argument("mask_spectrum expects a frequency-domain signal");
  return make_masked_spectrum(freq.grid, s, freq.values);
}

Signal dra_round(const Signal& r) {
  if (r.domain != Domain::Space) throw std::invalid_argument("dra_round expects a space signal");
  Signal g = zero_signal(r.grid, Domain::Space);
  for (std::int64_t x = 0; x < r.grid.total; ++x)
    g.values[x] = std::abs(r.values[x]) >= 0.5 ? 1.0 : 0.0;
  return g;
}

RecoveryReport dra_recover(const MaskedSpectrum& m, const DraOptions& options) {
  const Signal band{m.grid, Domain::Frequency, m.observed};
  const Signal r = dft_inverse(band, options.path);
  RecoveryReport report;
  report.method = RecoveryMethod::Dra;
  report.recovered = dra_round(r);

  std::int64_t e_size = 0;
  double margin = 0.0;
  for (std::int64_t x = 0; x < m.grid.total; ++x) {
    if (report.recovered.values[x].real() != 0.0) ++e_size;
    margin = std::max(margin, std::abs(r.values[x] - report.recovered.values[x]));
  }
  report.rounding_margin = margin;
  report.error_bound = std::sqrt(static_cast<double>(m.missing.size()) * static_cast<double>(e_size) /
                                 static_cast<double>(m.grid.total));
  report.conditions = posterior_conditions(m.grid, e_size, m.missing, options);
  report.guaranteed = report.error_bound < 0.5 && any_satisfied(report.conditions);
  return report;
}

Signal alphabet_round(const Signal& r, const std::vector<double>& alphabet) {
  if (r.domain != Domain::Space)
    throw std::invalid_argument("alphabet_round expects a space signal");
  if (alphabet.empty()) throw std::invalid_argument("alphabet must be nonempty");
  if (!std::is_sorted(alphabet.begin(), alphabet.end()) ||
      std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end())
    throw std::invalid_argument("alphabet must be strictly increasing");

  Signal out = zero_signal(r.grid, Domain::Space);
  for (std::int64_t x = 0; x < r.grid.total; ++x) {
    if (std::abs(r.values[x].imag()) > 1e-6)
      throw std::invalid_argument("alphabet_round: imaginary part exceeds 1e-6");
    const double re = r.values[x].real();
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), re);
    double chosen;
    if (it == alphabet.begin()) {
      chosen = *it;
    } else if (it == alphabet.end()) {
      chosen = alphabet.back();
    } else {
      const double hi = *it;
      const double lo = *(it - 1);
      // Ties go to the smaller value.
      chosen = (re - lo) <= (hi - re) ? lo : hi;
    }
    out.values[x] = chosen;
  }
  return out;
}

RecoveryReport alphabet_recover(const MaskedSpectrum& m, const std::vector<double>& alphabet,
                                const DraOptions& options) {
  const Signal band{m.grid, Domain::Frequency, m.observed};
  const Signal r = dft_inverse(band, options.path);
  RecoveryReport report;
  report.method = RecoveryMethod::Alphabet;
  report.recovered = alphabet_round(r, alphabet);

  double margin = 0.0;
  std::int64_t e_size = 0;
  for (std::int64_t x = 0; x < m.grid.total; ++x) {
    margin = std::max(margin, std::abs(r.values[x] - report.recovered.values[x]));
    if (report.recovered.values[x].real() != 0.0) ++e_size;
  }
  report.rounding_margin = margin;
  // Plancherel gives |II(x)| <= sqrt(|S|) * n^(-d/2) * ||f||_2; the recovered
  // signal's norm stands in for the unknown ||f||_2.
  report.error_bound = std::sqrt(static_cast<double>(m.missing.size()) /
                                 static_cast<double>(m.grid.total)) *
                       report.recovered.values.norm();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < alphabet.size(); ++i)
    min_gap = std::min(min_gap, alphabet[i] - alphabet[i - 1]);
  report.conditions = posterior_conditions(m.grid, e_size, m.missing, options);
  report.guaranteed = report.error_bound < 0.5 * min_gap && any_satisfied(report.conditions);
  return report;
}

bool uniqueness_certificate(const GridParams& grid, std::int64_t t, const IndexSet& s,
                            double tol) {
  if (s.grid != grid) throw std::invalid_argument("uniqueness_certificate: grid mismatch");
  if (t < 0) throw std::invalid_argument("sparsity must be nonnegative");
  if (2 * t > grid.total)
    throw std::invalid_argument("uniqueness_certificate requires 2t <= n^d");
  if (t == 0) return true;
  constexpr std::int64_t kBudget = 1'000'000;
  if (binom_clamped(grid.total, 2 * t, kBudget) > kBudget)
    throw BudgetExceededError("uniqueness_certificate: C(n^d, 2t) exceeds 1e6");

  const IndexSet observed = complement(s);
  const std::int64_t width = 2 * t;
  if (observed.size() < width) return false;  // more columns than rows

  // Full column rank for every support of size exactly 2t implies it for all
  // smaller supports, so only the maximal size is scanned.
  std::vector<std::int64_t> comb(static_cast<std::size_t>(width));
  for (std::int64_t i = 0; i < width; ++i) comb[static_cast<std::size_t>(i)] = i;
  do {
    const Eigen::MatrixXcd a = character_matrix(grid, observed.indices, comb);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    qr.setThreshold(tol * std::sqrt(static_cast<double>(width)));
    if (qr.rank() < width) return false;
  } while (next_combination(comb, grid.total));
  return true;
}

RecoveryReport enumeration_recover(const MaskedSpectrum& m, std::int64_t t,
                                   double residual_tol) {
  if (t < 0) throw std::invalid_argument("sparsity must be nonnegative");
  const std::int64_t t_eff = std::min(t, m.grid.total);
  constexpr std::int64_t kBudget = 1'000'000;
  if (support_count_clamped(m.grid.total, t_eff, kBudget) > kBudget)
    throw BudgetExceededError("enumeration_recover: support enumeration exceeds 1e6");

  const IndexSet observed_set = complement(m.missing);
  Eigen::VectorXcd b(observed_set.size());
  for (std::int64_t i = 0; i < observed_set.size(); ++i)
    b[i] = m.observed[observed_set.indices[static_cast<std::size_t>(i)]];
  const double b_norm = b.norm();
  const double scale = 1.0 / static_cast<double>(m.grid.total);

  // Relative residual; falls back to the absolute residual for zero data.
  const auto rel_residual = [&](double abs_residual) {
    return b_norm > 0.0 ? abs_residual / b_norm : abs_residual;
  };

  struct Fit {
    std::vector<std::int64_t> support;
    Eigen::VectorXcd coeffs;
    double residual;
  };
  std::optional<Fit> first;
  bool ambiguous = false;

  for (std::int64_t k = 0; k <= t_eff && !first; ++k) {
    if (k == 0) {
      if (rel_residual(b_norm) <= residual_tol) first = Fit{{}, Eigen::VectorXcd(0), rel_residual(b_norm)};
      continue;
    }
    std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    do {
      Eigen::MatrixXcd a = character_matrix(m.grid, observed_set.indices, comb) * scale;
      const Eigen::VectorXcd h = a.colPivHouseholderQr().solve(b);
      const double res = rel_residual((a * h - b).norm());
      if (res <= residual_tol) {
        if (!first) {
          first = Fit{comb, h, res};
        } else {
          // Second fit at the minimal size: ambiguous unless it reproduces
          // the same signal.
          Eigen::VectorXcd dense_first = Eigen::VectorXcd::Zero(m.grid.total);
          for (std::size_t i = 0; i < first->support.size(); ++i)
            dense_first[first->support[i]] = first->coeffs[static_cast<Eigen::Index>(i)];
          Eigen::VectorXcd dense_other = Eigen::VectorXcd::Zero(m.grid.total);
          for (std::size_t i = 0; i < comb.size(); ++i)
            dense_other[comb[i]] = h[static_cast<Eigen::Index>(i)];
          if ((dense_first - dense_other).cwiseAbs().maxCoeff() > 1e-6) ambiguous = true;
        }
      }
    } while (next_combination(comb, m.grid.total));
  }

  if (!first) throw std::runtime_error("enumeration_recover: no support fits the observed data");

  RecoveryReport report;
  report.method = RecoveryMethod::Enumeration;
  report.recovered = zero_signal(m.grid, Domain::Space);
  for (std::size_t i = 0; i < first->support.size(); ++i)
    report.recovered.values[first->support[i]] = first->coeffs[static_cast<Eigen::Index>(i)];
  report.residual = first->residual;
  report.ambiguous = ambiguous;
  report.conditions.push_back(recovery_condition(ConditionId::DS21, t, m.missing.size(), m.grid));
  report.guaranteed = report.conditions.front().satisfied && !ambiguous;
  return report;
}

}  // namespace upslab

#pragma once

#include <optional>
#include <vector>

#include "upslab/bounds.hpp"

namespace upslab {

/// Partial Fourier data: everything off the missing set is known exactly;
/// entries at missing indices are stored as zero and carry no information.
struct MaskedSpectrum {
  GridParams grid;
  IndexSet missing;
  Eigen::VectorXcd observed;
};

/// Validated constructor; zeroes the entries on the missing set.
MaskedSpectrum make_masked_spectrum(const GridParams& grid, IndexSet missing,
                                    Eigen::VectorXcd observed);

/// Masks a full spectrum: keeps F off S, drops the values on S.
MaskedSpectrum mask_spectrum(const Signal& freq, const IndexSet& s);

enum class RecoveryMethod { Dra, Alphabet, Enumeration };

struct RecoveryReport {
  Signal recovered;
  RecoveryMethod method = RecoveryMethod::Dra;
  double error_bound = 0.0;  ///< a priori bound on the missing-frequency term
  std::vector<ConditionVerdict> conditions;
  bool guaranteed = false;
  double residual = 0.0;   ///< relative fit residual (enumeration only)
  bool ambiguous = false;  ///< a second same-size support also fit (enumeration only)
  double rounding_margin = 0.0;  ///< max_x |r(x) - recovered(x)| (rounding methods)
};

/// Threshold rounding of Definition-style direct recovery: 1 where the
/// complex modulus is >= 0.5, else 0. The boundary rounds up.
Signal dra_round(const Signal& r);

struct DraOptions {
  std::optional<double> p;    ///< exponent for the DRA-4.3ii condition
  std::optional<double> cpq;  ///< restriction constant for DRA-4.3ii
  bool evaluate_salem = true;
  TransformPath path = TransformPath::Auto;
};

/// Inverts the observed band, rounds, and evaluates the sufficient
/// conditions with |E| taken from the recovered support (a posteriori).
RecoveryReport dra_recover(const MaskedSpectrum& m, const DraOptions& options = {});

/// Maps each value to the nearest alphabet entry by real part (ties to the
/// smaller value). Imaginary parts must be below 1e-6 in modulus.
Signal alphabet_round(const Signal& r, const std::vector<double>& alphabet);

/// Band-limited inversion followed by alphabet rounding; guaranteed when the
/// a priori error bound clears half the minimal alphabet gap and a sufficient
/// condition holds.
RecoveryReport alphabet_recover(const MaskedSpectrum& m, const std::vector<double>& alphabet,
                                const DraOptions& options = {});

/// True iff every signal with at most t nonzero entries is determined by its
/// spectrum off S: all character submatrices with 2t columns (rows indexed by
/// the observed frequencies) have full column rank. A column counts as
/// dependent when its pivoted-elimination residual is <= tol * sqrt(2t)
/// times the largest column norm.
bool uniqueness_certificate(const GridParams& grid, std::int64_t t, const IndexSet& s,
                            double tol = 1e-8);

/// Exhaustive l^0 oracle: scans supports by increasing size (then
/// lexicographically), least-squares fits the observed frequencies, and
/// returns the first support whose relative residual clears residual_tol.
/// Flags ambiguity when a second same-size support also fits with a
/// different signal. Throws BudgetExceededError past ~1e6 candidate
/// supports and std::runtime_error when nothing fits.
RecoveryReport enumeration_recover(const MaskedSpectrum& m, std::int64_t t,
                                   double residual_tol = 1e-8);

}  // namespace upslab

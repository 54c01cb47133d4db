#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace upslab::detail {

/// Unnormalized 1-D transform of arbitrary length, in place:
///   y[k] = sum_j x[j] * exp(sign * 2*pi*i * j*k / n)
/// Mixed-radix Cooley-Tukey over the prime factorization; prime lengths
/// above a small threshold go through Bluestein's chirp-z algorithm.
void fft_1d(std::vector<std::complex<double>>& data, int sign);

/// Applies fft_1d along every axis of a row-major n^d array (coordinate 0
/// most significant). No normalization.
void fft_axes(std::complex<double>* data, std::int64_t n, int d, int sign);

}  // namespace upslab::detail

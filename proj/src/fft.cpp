#include "upslab/fft.hpp"

#include <bit>
#include <cmath>
#include <cstddef>

namespace upslab::detail {
namespace {

using Cx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Largest prime length handled by the direct O(p^2) butterfly before
// switching to Bluestein.
constexpr std::int64_t kMaxDirectPrime = 61;

Cx root_of_unity(std::int64_t num, std::int64_t den, int sign) {
  const double angle = sign * kTwoPi * static_cast<double>(num) / static_cast<double>(den);
  return Cx{std::cos(angle), std::sin(angle)};
}

std::int64_t smallest_factor(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

void fft_pow2(Cx* a, std::size_t n, int sign) {
  // Iterative radix-2, bit-reversal permutation first.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const Cx wl = root_of_unity(1, static_cast<std::int64_t>(len), sign);
    for (std::size_t i = 0; i < n; i += len) {
      Cx w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Cx u = a[i + k];
        const Cx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_direct(Cx* x, std::int64_t n, int sign) {
  std::vector<Cx> out(static_cast<std::size_t>(n));
  std::vector<Cx> table(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) table[static_cast<std::size_t>(k)] = root_of_unity(k, n, sign);
  for (std::int64_t k = 0; k < n; ++k) {
    Cx acc{0.0, 0.0};
    for (std::int64_t j = 0; j < n; ++j) acc += x[j] * table[static_cast<std::size_t>(j * k % n)];
    out[static_cast<std::size_t>(k)] = acc;
  }
  std::copy(out.begin(), out.end(), x);
}

// Chirp-z: jk = (j^2 + k^2 - (k-j)^2) / 2 turns the DFT into a linear
// convolution, evaluated circularly at a power-of-two size M >= 2n-1.
// Quadratic phases are reduced mod 2n before calling sin/cos.
void fft_bluestein(Cx* x, std::int64_t n, int sign) {
  std::size_t m = std::bit_ceil(static_cast<std::size_t>(2 * n - 1));
  std::vector<Cx> chirp(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j)
    chirp[static_cast<std::size_t>(j)] = root_of_unity(j * j % (2 * n), 2 * n, sign);

  std::vector<Cx> a(m, Cx{0.0, 0.0});
  std::vector<Cx> b(m, Cx{0.0, 0.0});
  for (std::int64_t j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = x[j] * chirp[static_cast<std::size_t>(j)];
  b[0] = std::conj(chirp[0]);
  for (std::int64_t j = 1; j < n; ++j) {
    const Cx c = std::conj(chirp[static_cast<std::size_t>(j)]);
    b[static_cast<std::size_t>(j)] = c;
    b[m - static_cast<std::size_t>(j)] = c;
  }

  fft_pow2(a.data(), m, -1);
  fft_pow2(b.data(), m, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a.data(), m, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::int64_t k = 0; k < n; ++k)
    x[k] = a[static_cast<std::size_t>(k)] * inv_m * chirp[static_cast<std::size_t>(k)];
}

void fft_rec(Cx* x, std::int64_t n, int sign, Cx* scratch) {
  if (n == 1) return;
  const std::int64_t p = smallest_factor(n);
  if (p == n) {
    if (n <= kMaxDirectPrime) {
      dft_direct(x, n, sign);
    } else {
      fft_bluestein(x, n, sign);
    }
    return;
  }
  const std::int64_t m = n / p;
  // Decimation in time: sub-sequence j holds x[j], x[j+p], ...
  for (std::int64_t j = 0; j < p; ++j)
    for (std::int64_t t = 0; t < m; ++t) scratch[j * m + t] = x[t * p + j];
  for (std::int64_t j = 0; j < p; ++j) fft_rec(scratch + j * m, m, sign, x + j * m);

  std::vector<Cx> tw(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) tw[static_cast<std::size_t>(k)] = root_of_unity(k, n, sign);
  for (std::int64_t k = 0; k < m; ++k) {
    for (std::int64_t r = 0; r < p; ++r) {
      const std::int64_t out = k + r * m;
      Cx acc{0.0, 0.0};
      for (std::int64_t j = 0; j < p; ++j)
        acc += tw[static_cast<std::size_t>(j * out % n)] * scratch[j * m + k];
      x[out] = acc;
    }
  }
}

}  // namespace

void fft_1d(std::vector<Cx>& data, int sign) {
  const auto n = static_cast<std::int64_t>(data.size());
  if (n <= 1) return;
  if ((n & (n - 1)) == 0) {
    fft_pow2(data.data(), static_cast<std::size_t>(n), sign);
    return;
  }
  std::vector<Cx> scratch(data.size());
  fft_rec(data.data(), n, sign, scratch.data());
}

void fft_axes(Cx* data, std::int64_t n, int d, int sign) {
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  std::vector<Cx> line(static_cast<std::size_t>(n));
  // Axis a has stride n^(d-1-a); lines are gathered, transformed, scattered.
  std::int64_t stride = total / n;
  for (int axis = 0; axis < d; ++axis) {
    const std::int64_t block = stride * n;  // span of one line's index range
    for (std::int64_t base = 0; base < total; base += block) {
      for (std::int64_t off = 0; off < stride; ++off) {
        for (std::int64_t j = 0; j < n; ++j) line[static_cast<std::size_t>(j)] = data[base + off + j * stride];
        fft_1d(line, sign);
        for (std::int64_t j = 0; j < n; ++j) data[base + off + j * stride] = line[static_cast<std::size_t>(j)];
      }
    }
    stride /= n;
  }
}

}  // namespace upslab::detail

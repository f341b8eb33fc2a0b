#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace summa::detail {

// In-place iterative radix-2 transform. sign = -1 is the forward transform
// X_m = sum_j x_j e^{-2 pi i m j / N}; sign = +1 is the unnormalized inverse.
inline void fft(std::span<std::complex<double>> data, int sign) {
  const std::size_t n = data.size();
  if (n < 2) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  std::vector<std::complex<double>> roots(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    roots[i] = {std::cos(angle), std::sin(angle)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const auto w = roots[k * stride];
        const auto u = data[start + k];
        const auto v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

/// cos(2 pi j / N) and sin(2 pi j / N) for j = 0..N-1.
struct TrigTable {
  explicit TrigTable(std::size_t n) : cos(n), sin(n) {
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      cos[j] = std::cos(angle);
      sin[j] = std::sin(angle);
    }
  }
  std::vector<double> cos;
  std::vector<double> sin;
};

inline bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

}  // namespace summa::detail

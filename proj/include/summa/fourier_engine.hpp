#pragma once

// Discrete Fourier coefficients, partial sums S_k f, Lebesgue constants and
// the Jackson ratio. Best approximation lives in minimax.hpp.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "summa/detail/fft.hpp"
#include "summa/error.hpp"
#include "summa/periodic_function.hpp"

namespace summa {

/// a[0]/2 + Σ_{m=1}^{degree} (a[m] cos mx + b[m] sin mx). b[0] is unused and kept at 0.
struct TrigPolynomial {
  std::vector<double> a{0.0};
  std::vector<double> b{0.0};

  int degree() const { return static_cast<int>(a.size()) - 1; }

  double operator()(double x) const {
    double sum = a[0] / 2.0;
    for (std::size_t m = 1; m < a.size(); ++m) {
      sum += a[m] * std::cos(static_cast<double>(m) * x) + b[m] * std::sin(static_cast<double>(m) * x);
    }
    return sum;
  }

  /// Values at the nodes of `grid` (one inverse FFT).
  std::vector<double> sample(const Grid& grid) const {
    const std::size_t n = grid.size();
    if (static_cast<std::size_t>(degree()) >= n) throw InputError("trig polynomial degree exceeds grid size");
    std::vector<std::complex<double>> spec(n);
    spec[0] = a[0] / 2.0;
    for (std::size_t m = 1; m < a.size(); ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      spec[m] = sign * std::complex<double>(a[m], -b[m]);
    }
    detail::fft(spec, +1);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = spec[j].real();
    return out;
  }

  GridFunction on(const Grid& grid, std::string label = "trig_poly") const {
    return {grid, sample(grid), std::move(label)};
  }
};

/// Discrete Fourier coefficients a_0..a_K, b_1..b_K (b[0] = 0) of sampled data.
struct FourierCoefficients {
  int degree_cap = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::size_t source_grid_size = 0;

  TrigPolynomial truncated(int k) const {
    if (k < 0 || k > degree_cap) throw InputError("truncation degree outside [0, degree_cap]");
    TrigPolynomial t;
    t.a.assign(a.begin(), a.begin() + k + 1);
    t.b.assign(b.begin(), b.begin() + k + 1);
    return t;
  }
};

/// Trapezoidal-rule coefficients via one forward FFT; exact for trig polynomials
/// of degree < N/2.
inline FourierCoefficients fourier_coefficients(const GridFunction& g, int degree_cap) {
  const std::size_t n = g.size();
  if (degree_cap < 0 || static_cast<std::size_t>(degree_cap) >= n / 2) {
    throw InputError("degree cap " + std::to_string(degree_cap) + " must be < grid size / 2 = " +
                     std::to_string(n / 2));
  }
  std::vector<std::complex<double>> data(g.values.begin(), g.values.end());
  detail::fft(data, -1);

  FourierCoefficients c;
  c.degree_cap = degree_cap;
  c.source_grid_size = n;
  c.a.resize(static_cast<std::size_t>(degree_cap) + 1);
  c.b.resize(static_cast<std::size_t>(degree_cap) + 1);
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t m = 0; m <= static_cast<std::size_t>(degree_cap); ++m) {
    // e^{-i m x_j} = (-1)^m e^{-2πi m j / N}
    const std::complex<double> z = (m % 2 == 0 ? 1.0 : -1.0) * data[m];
    c.a[m] = scale * z.real();
    c.b[m] = m == 0 ? 0.0 : -scale * z.imag();
  }
  return c;
}

/// Steps through S_0 f, S_1 f, ... on a grid, adding one harmonic per step.
class PartialSumSweep {
 public:
  PartialSumSweep(const FourierCoefficients& c, const Grid& grid)
      : coeffs_(&c), table_(grid.size()), values_(grid.size(), c.a.at(0) / 2.0) {}

  int degree() const { return k_; }
  std::span<const double> values() const { return values_; }

  void advance() {
    if (k_ >= coeffs_->degree_cap) throw InputError("partial sum index exceeds degree cap");
    ++k_;
    const std::size_t n = values_.size();
    const auto m = static_cast<std::size_t>(k_);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double am = sign * coeffs_->a[m];
    const double bm = sign * coeffs_->b[m];
    std::size_t idx = 0;
    const std::size_t stride = m % n;
    for (std::size_t j = 0; j < n; ++j) {
      values_[j] += am * table_.cos[idx] + bm * table_.sin[idx];
      idx += stride;
      if (idx >= n) idx -= n;
    }
  }

 private:
  const FourierCoefficients* coeffs_;
  detail::TrigTable table_;
  std::vector<double> values_;
  int k_ = 0;
};

/// S_k f on `grid`, with the convention S_0 f = a_0/2.
inline GridFunction partial_sum(const FourierCoefficients& c, int k, const Grid& grid) {
  if (k < 0 || k > c.degree_cap) {
    throw InputError("partial sum index " + std::to_string(k) + " exceeds degree cap " +
                     std::to_string(c.degree_cap));
  }
  return c.truncated(k).on(grid, "S_" + std::to_string(k));
}

namespace detail {

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace detail

/// Dirichlet kernel D_n(t) = sin((n+½)t) / (2 sin(t/2)).
inline double dirichlet_kernel(int n, double t) {
  const double s = std::sin(t / 2.0);
  if (std::abs(s) < 1e-300) return n + 0.5;
  return std::sin((n + 0.5) * t) / (2.0 * s);
}

/// L_n = (1/π) ∫_{-π}^{π} |D_n(t)| dt, the sup-norm operator norm of S_n.
inline double lebesgue_constant(int n) {
  if (n < 0) throw InputError("lebesgue_constant: n must be >= 0");
  if (n == 0) return 1.0;
  static const auto rule = detail::gauss_legendre(20);
  // |D_n| is smooth between consecutive zeros 2jπ/(2n+1) of sin((n+½)t).
  double total = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double lo = 2.0 * j * std::numbers::pi / (2.0 * n + 1.0);
    const double hi = j == n ? std::numbers::pi : 2.0 * (j + 1) * std::numbers::pi / (2.0 * n + 1.0);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double piece = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      piece += rule.weights[i] * std::abs(dirichlet_kernel(n, mid + half * rule.nodes[i]));
    }
    total += half * piece;
  }
  return 2.0 * total / std::numbers::pi;
}

}  // namespace summa

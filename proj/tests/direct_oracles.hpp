#pragma once

// Slow reference computations that share no code with the library paths:
// plain trapezoid sums with std::cos/std::sin, explicit double loops.

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle_direct {

struct Coefficients {
  std::vector<double> a;
  std::vector<double> b;
};

inline double node(std::size_t j, std::size_t n) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

inline Coefficients dft(const std::vector<double>& v, int cap) {
  const std::size_t n = v.size();
  Coefficients c{std::vector<double>(cap + 1, 0.0), std::vector<double>(cap + 1, 0.0)};
  for (int m = 0; m <= cap; ++m) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = node(j, n);
      sa += v[j] * std::cos(m * x);
      sb += v[j] * std::sin(m * x);
    }
    c.a[m] = 2.0 * sa / n;
    c.b[m] = m == 0 ? 0.0 : 2.0 * sb / n;
  }
  return c;
}

inline std::vector<double> partial_sum(const Coefficients& c, int k, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = node(j, n);
    double s = c.a[0] / 2.0;
    for (int m = 1; m <= k; ++m) s += c.a[m] * std::cos(m * x) + c.b[m] * std::sin(m * x);
    out[j] = s;
  }
  return out;
}

/// sup_j Σ_k row[k] g(|S_k f(x_j) − f(x_j)|), recomputing every S_k from scratch.
template <class G>
double weighted_mean_sup(const std::vector<double>& f, const std::vector<double>& row, G g) {
  const int cap = static_cast<int>(row.size()) - 1;
  const auto c = dft(f, cap);
  std::vector<double> acc(f.size(), 0.0);
  for (int k = 0; k <= cap; ++k) {
    if (row[k] == 0.0) continue;
    const auto s = partial_sum(c, k, f.size());
    for (std::size_t j = 0; j < f.size(); ++j) acc[j] += row[k] * g(std::abs(s[j] - f[j]));
  }
  double best = 0.0;
  for (double x : acc) best = std::max(best, std::abs(x));
  return best;
}

/// max over shifts 1..s and nodes j of |f(x_{j+shift}) − f(x_j)|, periodic.
inline double modulus(const std::vector<double>& f, std::size_t max_shift) {
  double best = 0.0;
  const std::size_t n = f.size();
  for (std::size_t s = 1; s <= max_shift; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      best = std::max(best, std::abs(f[(j + s) % n] - f[j]));
      best = std::max(best, std::abs(f[(j + n - s) % n] - f[j]));
    }
  }
  return best;
}

}  // namespace oracle_direct

#pragma once

// 2π-periodic continuous functions sampled on a uniform grid over [-π, π),
// the grid sup norm, the grid modulus of continuity, and the test-function
// catalog.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "summa/detail/fft.hpp"
#include "summa/detail/text.hpp"
#include "summa/error.hpp"

namespace summa {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Equispaced nodes x_j = -π + 2πj/size, j = 0..size-1.
class Grid {
 public:
  explicit Grid(std::size_t size = kDefaultGridSize) : size_(size) {
    if (size < 16 || !detail::is_power_of_two(size)) {
      throw InputError("grid size must be a power of two >= 16, got " + std::to_string(size));
    }
  }

  std::size_t size() const { return size_; }
  double step() const { return 2.0 * std::numbers::pi / static_cast<double>(size_); }
  double node(std::size_t j) const { return -std::numbers::pi + step() * static_cast<double>(j); }

  /// Largest harmonic representable without aliasing.
  std::size_t max_degree() const { return size_ / 2 - 1; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t size_;
};

struct GridFunction {
  GridFunction(Grid g, std::vector<double> v, std::string l = {})
      : grid(g), values(std::move(v)), label(std::move(l)) {
    if (values.size() != grid.size()) {
      throw InputError("grid function has " + std::to_string(values.size()) + " values for grid size " +
                       std::to_string(grid.size()));
    }
    for (double x : values) {
      if (!std::isfinite(x)) throw InputError("grid function values must be finite");
    }
  }

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }

  Grid grid;
  std::vector<double> values;
  std::string label;
};

inline GridFunction operator-(const GridFunction& lhs, const GridFunction& rhs) {
  if (!(lhs.grid == rhs.grid)) throw InputError("grid mismatch in difference");
  std::vector<double> out(lhs.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = lhs[j] - rhs[j];
  return {lhs.grid, std::move(out), lhs.label + "-" + rhs.label};
}

inline GridFunction operator*(double scale, const GridFunction& g) {
  std::vector<double> out(g.values);
  for (double& x : out) x *= scale;
  return {g.grid, std::move(out), g.label};
}

enum class FunctionKind { constant, cosine, sine, triangle, poly_trig, weierstrass, lipschitz, smooth_bump };

/// A catalog entry in text form "kind:key=val,...".
///
/// poly_trig takes `coeffs=c0;c1;d1;c2;d2;...` meaning
/// c0 + Σ_m (c_m cos mx + d_m sin mx).
struct FunctionSpec {
  FunctionKind kind = FunctionKind::constant;
  std::map<std::string, double> params;
  std::vector<double> coeffs;

  double param(const std::string& key) const { return params.at(key); }

  static FunctionSpec parse(std::string_view text);
  std::string to_string() const;

  /// Degree of the function when it is a trigonometric polynomial.
  std::optional<int> trig_degree() const;
};

namespace detail {

struct KindInfo {
  FunctionKind kind;
  std::string_view name;
  std::map<std::string, double> defaults;
};

inline const std::vector<KindInfo>& function_kinds() {
  static const std::vector<KindInfo> kinds = {
      {FunctionKind::constant, "const", {{"v", 1.0}}},
      {FunctionKind::cosine, "cos", {{"m", 1.0}}},
      {FunctionKind::sine, "sin", {{"m", 1.0}}},
      {FunctionKind::triangle, "triangle", {}},
      {FunctionKind::poly_trig, "poly_trig", {}},
      {FunctionKind::weierstrass, "weierstrass", {{"a", 0.5}, {"b", 3.0}, {"terms", 30.0}}},
      {FunctionKind::lipschitz, "lip", {{"alpha", 1.0}}},
      {FunctionKind::smooth_bump, "smooth_bump", {{"width", 1.0}}},
  };
  return kinds;
}

inline const KindInfo& kind_info(FunctionKind kind) {
  for (const auto& info : function_kinds()) {
    if (info.kind == kind) return info;
  }
  throw InputError("unknown function kind");
}

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

inline void validate(const FunctionSpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case FunctionKind::constant:
    case FunctionKind::triangle:
      break;
    case FunctionKind::cosine:
      if (!is_integer(p.at("m")) || p.at("m") < 0) throw InputError("cos: m must be an integer >= 0");
      break;
    case FunctionKind::sine:
      if (!is_integer(p.at("m")) || p.at("m") < 1) throw InputError("sin: m must be an integer >= 1");
      break;
    case FunctionKind::poly_trig:
      if (spec.coeffs.empty()) throw InputError("poly_trig: coeffs must not be empty");
      break;
    case FunctionKind::weierstrass: {
      const double a = p.at("a");
      const double b = p.at("b");
      const double terms = p.at("terms");
      if (!(a > 0.0 && a < 1.0)) throw InputError("weierstrass: a must lie in (0, 1)");
      if (!is_integer(b) || b < 3 || static_cast<std::int64_t>(b) % 2 == 0) {
        throw InputError("weierstrass: b must be an odd integer >= 3");
      }
      if (!is_integer(terms) || terms < 1 || terms > 64) throw InputError("weierstrass: terms must be in [1, 64]");
      break;
    }
    case FunctionKind::lipschitz: {
      const double alpha = p.at("alpha");
      if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("lip: alpha must lie in (0, 1]");
      break;
    }
    case FunctionKind::smooth_bump: {
      const double w = p.at("width");
      if (!(w > 0.0 && w <= std::numbers::pi)) throw InputError("smooth_bump: width must lie in (0, pi]");
      break;
    }
  }
  for (double x : spec.coeffs) {
    if (!std::isfinite(x)) throw InputError("poly_trig: coefficients must be finite");
  }
}

}  // namespace detail

inline FunctionSpec FunctionSpec::parse(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const std::string_view name = detail::trim(text.substr(0, colon));
  FunctionSpec spec;
  const detail::KindInfo* info = nullptr;
  for (const auto& k : detail::function_kinds()) {
    if (k.name == name) info = &k;
  }
  if (info == nullptr) throw InputError("unknown function kind '" + std::string(name) + "'");
  spec.kind = info->kind;
  spec.params = info->defaults;

  if (colon != std::string_view::npos) {
    for (const auto& item : detail::split(text.substr(colon + 1), ",")) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("expected key=value in function spec, got '" + item + "'");
      const std::string key{detail::trim(std::string_view(item).substr(0, eq))};
      const std::string_view value = detail::trim(std::string_view(item).substr(eq + 1));
      if (spec.kind == FunctionKind::poly_trig && key == "coeffs") {
        for (const auto& c : detail::split(value, "; ")) {
          if (!c.empty()) spec.coeffs.push_back(detail::parse_double(c));
        }
        continue;
      }
      if (!spec.params.contains(key)) {
        throw InputError("unknown parameter '" + key + "' for function kind '" + std::string(name) + "'");
      }
      spec.params[key] = detail::parse_double(value);
    }
  }
  detail::validate(spec);
  return spec;
}

inline std::string FunctionSpec::to_string() const {
  std::string out{detail::kind_info(kind).name};
  std::vector<std::string> items;
  for (const auto& [key, value] : params) items.push_back(key + "=" + detail::format_double(value));
  if (kind == FunctionKind::poly_trig) {
    std::string list;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) list += ";";
      list += detail::format_double(coeffs[i]);
    }
    items.push_back("coeffs=" + list);
  }
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : ":") + items[i];
  return out;
}

inline std::optional<int> FunctionSpec::trig_degree() const {
  switch (kind) {
    case FunctionKind::constant:
      return 0;
    case FunctionKind::cosine:
    case FunctionKind::sine:
      return static_cast<int>(param("m"));
    case FunctionKind::poly_trig:
      return static_cast<int>(coeffs.size() / 2);
    default:
      return std::nullopt;
  }
}

namespace detail {

// cos(m x_j) for integer m, exact up to table rounding: m x_j = -mπ + 2π m j / N.
inline double cos_harmonic(const TrigTable& t, std::uint64_t m, std::size_t j) {
  const std::size_t n = t.cos.size();
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const std::size_t idx = static_cast<std::size_t>(((m % n) * j) % n);
  return sign * t.cos[idx];
}

inline double sin_harmonic(const TrigTable& t, std::uint64_t m, std::size_t j) {
  const std::size_t n = t.sin.size();
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const std::size_t idx = static_cast<std::size_t>(((m % n) * j) % n);
  return sign * t.sin[idx];
}

}  // namespace detail

/// Samples the catalog function at the grid nodes.
inline GridFunction make_function(const FunctionSpec& spec, const Grid& grid) {
  detail::validate(spec);
  const std::size_t n = grid.size();
  const detail::TrigTable table(n);
  std::vector<double> v(n, 0.0);

  switch (spec.kind) {
    case FunctionKind::constant:
      std::fill(v.begin(), v.end(), spec.param("v"));
      break;
    case FunctionKind::cosine: {
      const auto m = static_cast<std::uint64_t>(spec.param("m"));
      for (std::size_t j = 0; j < n; ++j) v[j] = detail::cos_harmonic(table, m, j);
      break;
    }
    case FunctionKind::sine: {
      const auto m = static_cast<std::uint64_t>(spec.param("m"));
      for (std::size_t j = 0; j < n; ++j) v[j] = detail::sin_harmonic(table, m, j);
      break;
    }
    case FunctionKind::triangle:
      for (std::size_t j = 0; j < n; ++j) v[j] = std::abs(grid.node(j));
      break;
    case FunctionKind::poly_trig: {
      const auto& c = spec.coeffs;
      for (std::size_t j = 0; j < n; ++j) {
        double sum = c[0];
        for (std::size_t i = 1; i < c.size(); ++i) {
          const std::uint64_t m = (i + 1) / 2;
          sum += c[i] * (i % 2 == 1 ? detail::cos_harmonic(table, m, j) : detail::sin_harmonic(table, m, j));
        }
        v[j] = sum;
      }
      break;
    }
    case FunctionKind::weierstrass: {
      const double a = spec.param("a");
      const auto b = static_cast<std::uint64_t>(spec.param("b"));
      const auto terms = static_cast<int>(spec.param("terms"));
      // b^k is tracked modulo N (the only thing the nodes see) and is always odd.
      std::uint64_t freq = 1;
      double weight = 1.0;
      for (int k = 0; k < terms; ++k) {
        for (std::size_t j = 0; j < n; ++j) v[j] -= weight * table.cos[(freq * j) % n];
        freq = (freq * b) % n;
        weight *= a;
      }
      break;
    }
    case FunctionKind::lipschitz: {
      const double alpha = spec.param("alpha");
      for (std::size_t j = 0; j < n; ++j) v[j] = std::pow(std::abs(std::sin(grid.node(j) / 2.0)), alpha);
      break;
    }
    case FunctionKind::smooth_bump: {
      const double w = spec.param("width");
      for (std::size_t j = 0; j < n; ++j) {
        const double r = grid.node(j) / w;
        v[j] = std::abs(r) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
      }
      break;
    }
  }
  return {grid, std::move(v), spec.to_string()};
}

inline GridFunction make_function(std::string_view spec, const Grid& grid) {
  return make_function(FunctionSpec::parse(spec), grid);
}

inline double sup_norm(const GridFunction& g) {
  double best = 0.0;
  for (double x : g.values) best = std::max(best, std::abs(x));
  return best;
}

/// A δ rounded down to a whole number of grid steps.
struct SnappedDelta {
  std::size_t shift;
  double delta_used;
  double snap_amount;
};

inline SnappedDelta snap_delta(const Grid& grid, double delta) {
  if (!(delta >= 0.0)) throw InputError("modulus of continuity: delta must be >= 0");
  if (delta > 2.0 * std::numbers::pi) throw InputError("modulus of continuity: delta must be <= 2*pi");
  const double steps = delta / grid.step();
  auto shift = static_cast<std::size_t>(std::floor(steps + 1e-9));
  shift = std::min(shift, grid.size() / 2);
  const double used = static_cast<double>(shift) * grid.step();
  return {shift, used, std::max(0.0, delta - used)};
}

namespace detail {

inline double shift_difference(const std::vector<double>& v, std::size_t s) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = j + s < n ? j + s : j + s - n;
    best = std::max(best, std::abs(v[i] - v[j]));
  }
  return best;
}

}  // namespace detail

/// ω_g(δ) over grid shifts |s·h| ≤ δ, with δ snapped down to the grid.
inline double modulus_of_continuity(const GridFunction& g, double delta) {
  const auto snap = snap_delta(g.grid, delta);
  double best = 0.0;
  for (std::size_t s = 1; s <= snap.shift; ++s) best = std::max(best, detail::shift_difference(g.values, s));
  return best;
}

/// The grid modulus tabulated at every shift 0..N/2, for repeated lookups.
class ModulusProfile {
 public:
  explicit ModulusProfile(const GridFunction& g) : grid_(g.grid), omega_(g.size() / 2 + 1, 0.0) {
    for (std::size_t s = 1; s < omega_.size(); ++s) {
      omega_[s] = std::max(omega_[s - 1], detail::shift_difference(g.values, s));
    }
  }

  double at_shift(std::size_t s) const { return omega_.at(std::min(s, omega_.size() - 1)); }
  double operator()(double delta) const { return at_shift(snap_delta(grid_, delta).shift); }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::vector<double> omega_;
};

}  // namespace summa

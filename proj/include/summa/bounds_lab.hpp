#pragma once

// Both sides of the strong-approximation estimates on concrete fixtures, the
// ratio between them along an n-ladder, and the Dirichlet-kernel witness
// showing that ‖S_n f − f‖ is not controlled by E_n(f).

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "summa/detail/text.hpp"
#include "summa/error.hpp"
#include "summa/fourier_engine.hpp"
#include "summa/minimax.hpp"
#include "summa/periodic_function.hpp"
#include "summa/summability.hpp"

namespace summa {

enum class InequalityId { thm1, thm2, thm3_eq6, remark2, remark3_eq7, remark5_ek, remark5_omega, lemma, totik };

inline constexpr std::array<std::pair<InequalityId, std::string_view>, 9> kInequalityNames{{
    {InequalityId::thm1, "thm1"},
    {InequalityId::thm2, "thm2"},
    {InequalityId::thm3_eq6, "thm3-eq6"},
    {InequalityId::remark2, "remark2"},
    {InequalityId::remark3_eq7, "remark3-eq7"},
    {InequalityId::remark5_ek, "remark5-Ek"},
    {InequalityId::remark5_omega, "remark5-omega"},
    {InequalityId::lemma, "lemma"},
    {InequalityId::totik, "totik"},
}};

inline std::string to_string(InequalityId id) {
  for (const auto& [v, name] : kInequalityNames) {
    if (v == id) return std::string(name);
  }
  return "?";
}

inline InequalityId inequality_from_string(std::string_view s) {
  for (const auto& [v, name] : kInequalityNames) {
    if (name == s) return v;
  }
  throw InputError("unknown inequality '" + std::string(s) + "'");
}

inline bool uses_matrix(InequalityId id) { return id != InequalityId::lemma && id != InequalityId::totik; }
inline bool uses_phi(InequalityId id) {
  return id == InequalityId::remark5_ek || id == InequalityId::remark5_omega || id == InequalityId::totik;
}

struct BoundEntry {
  std::size_t n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; when rhs = 0 the entry is degenerate and ratio is 0 (lhs = 0) or inf.
  double ratio = 0.0;
  bool degenerate = false;
};

struct BoundCheckReport {
  InequalityId inequality_id = InequalityId::thm3_eq6;
  /// Matrix label; for lemma the λ rule, for totik "none".
  std::string matrix;
  std::string function;
  std::string phi;
  double p = 1.0;
  double c = 2.0;
  /// The c used in the index [k/2^[c]] of the right-hand side.
  double c_bound = 2.0;
  std::size_t grid_size = kDefaultGridSize;
  std::string fixture;
  std::vector<BoundEntry> per_n;
  double ratio_max = 0.0;
  double ratio_median = 0.0;
  double ratio_trend = 0.0;
  bool bounded = true;
  /// Hypotheses failed and the check ran anyway.
  bool forced = false;
  /// Largest blocked RHS − 2^[c]·(unblocked E_k RHS) over n; set for MS matrices only.
  std::optional<double> regrouping_excess;
  /// E-values that came back as certified brackets rather than converged solves.
  int unconverged_e = 0;
  std::vector<std::string> notes;
  /// Non-empty when the cell failed; the other fields are then partial.
  std::string error;

  std::size_t non_degenerate_count() const {
    return static_cast<std::size_t>(std::count_if(per_n.begin(), per_n.end(), [](const auto& e) { return !e.degenerate; }));
  }
};

/// Fills ratio_max, ratio_median, ratio_trend and bounded from per_n: bounded
/// means |slope of ratio against ln n| <= 0.1 and ratio_max <= 10 × median
/// over non-degenerate entries.
inline void summarize(BoundCheckReport& r) {
  std::vector<double> xs, ys;
  for (const auto& e : r.per_n) {
    if (e.degenerate) continue;
    xs.push_back(static_cast<double>(e.n));
    ys.push_back(e.ratio);
  }
  const auto fit = detail::fit_log_trend(xs, ys);
  r.ratio_max = fit.max;
  r.ratio_median = fit.median;
  r.ratio_trend = fit.slope;
  r.bounded = ys.empty() || detail::bounded_trend(fit);
}

/// "8..256" (doubling), "8,16,32" or "8 16 32".
inline std::vector<std::size_t> parse_n_list(std::string_view text) {
  std::vector<std::size_t> out;
  text = detail::trim(text);
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = detail::parse_int(text.substr(0, dots));
    const auto hi = detail::parse_int(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw InputError("n range must satisfy 1 <= lo <= hi");
    for (long long n = lo; n <= hi; n *= 2) out.push_back(static_cast<std::size_t>(n));
    return out;
  }
  for (const auto& tok : detail::split(text, ", \t")) {
    const auto n = detail::parse_int(tok);
    if (n < 1) throw InputError("n values must be >= 1");
    out.push_back(static_cast<std::size_t>(n));
  }
  if (out.empty()) throw InputError("empty n list");
  return out;
}

/// One function on one grid with everything the checks reuse: residuals
/// S_k f − f, best-approximation errors E_k and the modulus profile.
class FunctionLab {
 public:
  FunctionLab(const FunctionSpec& spec, const Grid& grid, MinimaxOptions options = {})
      : spec_(spec),
        f_(make_function(spec, grid)),
        scale_(std::max(1.0, sup_norm(f_))),
        options_(options),
        residuals_(f_, fourier_coefficients(f_, static_cast<int>(grid.size() / 2) - 1)) {}

  const FunctionSpec& spec() const { return spec_; }
  const GridFunction& function() const { return f_; }
  const Grid& grid() const { return f_.grid; }
  ResidualTable& residuals() { return residuals_; }

  /// Values at or below this are treated as exact zeros (trig-polynomial exactness).
  double zero_tol() const { return 1e-11 * scale_; }

  const BestApproxResult& best_result(int k) {
    auto it = best_.find(k);
    if (it == best_.end()) {
      it = best_.emplace(k, best_approximation(f_, k, options_)).first;
      if (!it->second.converged) ++unconverged_;
    }
    return it->second;
  }

  /// E_k(f) on the grid, snapped to 0 below zero_tol().
  double best(int k) {
    const double v = best_result(k).value;
    return v <= zero_tol() ? 0.0 : v;
  }

  int unconverged_count() const { return unconverged_; }

  double omega(double delta) {
    if (!profile_) profile_ = std::make_unique<ModulusProfile>(f_);
    const double v = (*profile_)(delta);
    return v <= zero_tol() ? 0.0 : v;
  }

 private:
  FunctionSpec spec_;
  GridFunction f_;
  double scale_;
  MinimaxOptions options_;
  ResidualTable residuals_;
  std::map<int, BestApproxResult> best_;
  std::unique_ptr<ModulusProfile> profile_;
  int unconverged_ = 0;
};

struct CheckOptions {
  bool force = false;
  /// Overrides c in the right-hand-side index [k/2^[c]].
  std::optional<double> c_bound;
  PhiSpec phi = PhiSpec::power(1.0);
  std::size_t grid_size = kDefaultGridSize;
};

/// Shared caches across checks: functions by (spec, grid) and matrix
/// validations by (matrix, n_max, c).
class BoundsLab {
 public:
  explicit BoundsLab(MinimaxOptions options = {}) : options_(options) {}

  FunctionLab& function(const FunctionSpec& spec, std::size_t grid_size) {
    const auto key = spec.to_string() + "@" + std::to_string(grid_size);
    auto it = functions_.find(key);
    if (it == functions_.end()) {
      it = functions_.emplace(key, std::make_unique<FunctionLab>(spec, Grid(grid_size), options_)).first;
    }
    return *it->second;
  }

  const MatrixValidationReport& validation(const SummabilityMatrix& m, std::size_t n_max, double c) {
    const auto key = m.label() + "@" + std::to_string(n_max) + "@" + detail::format_double(c);
    auto it = validations_.find(key);
    if (it == validations_.end()) it = validations_.emplace(key, validate_matrix(m, n_max, c)).first;
    return it->second;
  }

  const MinimaxOptions& options() const { return options_; }

 private:
  MinimaxOptions options_;
  std::map<std::string, std::unique_ptr<FunctionLab>> functions_;
  std::map<std::string, MatrixValidationReport> validations_;
};

namespace detail {

inline BoundEntry make_entry(std::size_t n, double lhs, double rhs, double lhs_zero, double rhs_zero) {
  BoundEntry e{n, lhs <= lhs_zero ? 0.0 : lhs, rhs <= rhs_zero ? 0.0 : rhs, 0.0, false};
  if (e.rhs > 0.0) {
    e.ratio = e.lhs / e.rhs;
  } else {
    e.degenerate = true;
    e.ratio = e.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return e;
}

// Either throws HypothesisError or, under force, records the failures.
inline void enforce(BoundCheckReport& r, const std::vector<std::string>& failures, bool force) {
  if (failures.empty()) return;
  std::string joined;
  for (const auto& f : failures) joined += (joined.empty() ? "" : "; ") + f;
  if (!force) throw HypothesisError(to_string(r.inequality_id) + " hypotheses fail: " + joined);
  r.forced = true;
  for (const auto& f : failures) r.notes.push_back("hypothesis violated (forced): " + f);
}

inline std::vector<std::string> matrix_hypotheses(InequalityId id, const MatrixValidationReport& v) {
  std::vector<std::string> out;
  if (!v.row_sums_ok) out.push_back("row sums deviate from 1 by " + format_double(v.max_row_sum_deviation));
  if (!v.a_n0_decreasing) out.push_back("a_{n,0} does not decrease towards 0");
  switch (id) {
    case InequalityId::thm1:
    case InequalityId::remark2:
      if (!v.all_ms) out.push_back("rows are not monotone decreasing");
      break;
    case InequalityId::thm2:
      if (!v.all_nmcs) out.push_back("rows are not NMCS at the horizon");
      break;
    default:
      if (!v.all_gm5) out.push_back("some row violates gm5");
      if (!v.gm5_uniform) out.push_back("gm5 constants grow with n (growth " + format_double(v.gm5_growth) + ")");
      break;
  }
  return out;
}

inline std::size_t block_shift(double c) {
  const double fc = std::floor(c);
  if (!(fc >= 1.0) || fc > 20.0) throw InputError("c must satisfy 1 < c and [c] <= 20");
  return std::size_t{1} << static_cast<std::size_t>(fc);
}

}  // namespace detail

/// LHS and RHS of one matrix-form estimate along `n_list`.
inline BoundCheckReport inequality_check(BoundsLab& lab, InequalityId id, const SummabilityMatrix& m,
                                         const FunctionSpec& fspec, double p, double c,
                                         const std::vector<std::size_t>& n_list, const CheckOptions& opts = {}) {
  if (!uses_matrix(id)) throw InputError(to_string(id) + " is checked with lemma_check / totik_check");
  if (n_list.empty()) throw InputError("empty n list");
  if (!(c > 1.0)) throw InputError("c must be > 1");
  detail::require_p(p);

  BoundCheckReport r;
  r.inequality_id = id;
  r.matrix = m.label();
  r.function = fspec.to_string();
  r.p = id == InequalityId::thm1 || uses_phi(id) ? 1.0 : p;
  r.c = c;
  r.c_bound = opts.c_bound.value_or(c);
  r.grid_size = opts.grid_size;
  if (uses_phi(id)) r.phi = opts.phi.to_string();
  r.fixture = to_string(id) + " | " + r.matrix + " | " + r.function + " | p=" + detail::format_double(r.p) +
              " | c=" + detail::format_double(c) + (r.phi.empty() ? "" : " | phi=" + r.phi);

  const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
  for (std::size_t n : n_list) {
    if (!m.has_row(n)) throw InputError("matrix has no row " + std::to_string(n));
  }
  const auto& validation = lab.validation(m, n_max, c);
  detail::enforce(r, detail::matrix_hypotheses(id, validation), opts.force);

  if (uses_phi(id)) {
    const auto pv = validate_phi(opts.phi);
    if (!pv.valid) throw InputError("invalid phi " + r.phi + ": " + pv.violation);
  }

  const std::size_t shift = detail::block_shift(r.c_bound);
  const bool check_regrouping = (id == InequalityId::thm3_eq6 || id == InequalityId::remark2) && validation.all_ms;
  {
    // Fail before any solve when the ladder needs E_k beyond what the grid supports.
    std::size_t support = 0;
    for (std::size_t n : n_list) support = std::max(support, m.row(n).size());
    const bool full_k = id == InequalityId::thm2 || id == InequalityId::remark2 || check_regrouping;
    const bool blocked_k = id == InequalityId::thm3_eq6 || id == InequalityId::remark5_ek;
    const std::size_t k_max = full_k ? support - 1 : blocked_k ? (support - 1) / shift : 0;
    if ((full_k || blocked_k) && k_max >= opts.grid_size / 4) {
      throw InputError("n = " + std::to_string(n_max) + " needs E_" + std::to_string(k_max) + ", beyond grid size " +
                       std::to_string(opts.grid_size) + " / 4; raise the grid size");
    }
  }

  auto& fl = lab.function(fspec, opts.grid_size);
  const double zero = fl.zero_tol();
  const auto pow_p = [&](double x) { return r.p == 1.0 ? x : std::pow(x, r.p); };
  const double lhs_zero = id == InequalityId::thm1 ? zero : (uses_phi(id) ? opts.phi(zero) : pow_p(zero));

  for (std::size_t n : n_list) {
    const auto row = m.row(n);
    double lhs = 0.0;
    switch (id) {
      case InequalityId::thm1:
        lhs = transform_deviation(row, fl.residuals()).sup;
        break;
      case InequalityId::remark5_ek:
      case InequalityId::remark5_omega:
        lhs = phi_mean(row, opts.phi, fl.residuals()).sup;
        break;
      default:
        lhs = strong_mean(row, r.p, fl.residuals()).sup;
        break;
    }

    double rhs = 0.0, rhs_blocked = 0.0, rhs_ek = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double a = row[k];
      if (a == 0.0) continue;
      const auto blocked = static_cast<int>(k / shift);
      switch (id) {
        case InequalityId::thm1:
          rhs += a * fl.omega(1.0 / static_cast<double>(k + 1));
          break;
        case InequalityId::thm2:
        case InequalityId::remark2:
          rhs += a * pow_p(fl.best(static_cast<int>(k)));
          break;
        case InequalityId::thm3_eq6:
          rhs += a * pow_p(fl.best(blocked));
          break;
        case InequalityId::remark3_eq7:
          rhs += a * pow_p(fl.omega(std::numbers::pi / static_cast<double>(k + 1)));
          break;
        case InequalityId::remark5_ek:
          rhs += a * opts.phi(fl.best(blocked));
          break;
        case InequalityId::remark5_omega:
          rhs += a * opts.phi(fl.omega(std::numbers::pi / static_cast<double>(k + 1)));
          break;
        default:
          break;
      }
      if (check_regrouping) {
        rhs_blocked += a * pow_p(fl.best(blocked));
        rhs_ek += a * pow_p(fl.best(static_cast<int>(k)));
      }
    }
    if (check_regrouping) {
      const double excess = rhs_blocked - static_cast<double>(shift) * rhs_ek;
      r.regrouping_excess = std::max(r.regrouping_excess.value_or(-std::numeric_limits<double>::infinity()), excess);
    }
    const double rhs_zero = id == InequalityId::thm1 ? zero : lhs_zero;
    r.per_n.push_back(detail::make_entry(n, lhs, rhs, lhs_zero, rhs_zero));
  }
  r.unconverged_e = fl.unconverged_count();
  if (r.unconverged_e > 0) {
    r.notes.push_back(std::to_string(r.unconverged_e) + " E-values are certified brackets, not converged solves");
  }
  summarize(r);
  return r;
}

/// λ_n rule for the lemma window: "half" = ceil(n/2), "fraction:θ" = ceil(θn),
/// "const:L" = min(L, n).
struct LambdaRule {
  enum class Kind { half, fraction, constant };
  Kind kind = Kind::half;
  double value = 0.5;

  static LambdaRule parse(std::string_view text) {
    text = detail::trim(text);
    if (text == "half") return {};
    if (text.starts_with("fraction:")) {
      const double theta = detail::parse_double(text.substr(9));
      if (!(theta > 0.0 && theta <= 1.0)) throw InputError("lambda fraction must lie in (0, 1]");
      return {Kind::fraction, theta};
    }
    if (text.starts_with("const:")) {
      const auto l = detail::parse_int(text.substr(6));
      if (l < 1) throw InputError("lambda constant must be >= 1");
      return {Kind::constant, static_cast<double>(l)};
    }
    throw InputError("unknown lambda rule '" + std::string(text) + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::half:
        return "half";
      case Kind::fraction:
        return "fraction:" + detail::format_double(value);
      case Kind::constant:
        return "const:" + detail::format_double(value);
    }
    return "?";
  }

  int operator()(int n) const {
    switch (kind) {
      case Kind::half:
        return (n + 1) / 2;
      case Kind::fraction:
        return std::max(1, static_cast<int>(std::ceil(value * n - 1e-12)));
      case Kind::constant:
        return std::min(static_cast<int>(value), n);
    }
    return 1;
  }
};

/// Windowed strong mean against E_{n−λ_n}(f).
inline BoundCheckReport lemma_check(BoundsLab& lab, const FunctionSpec& fspec, double p, const LambdaRule& rule,
                                    const std::vector<std::size_t>& n_list, double big_o_constant = 4.0,
                                    const CheckOptions& opts = {}) {
  detail::require_p(p);
  if (n_list.empty()) throw InputError("empty n list");
  BoundCheckReport r;
  r.inequality_id = InequalityId::lemma;
  r.matrix = "lambda:" + rule.to_string();
  r.function = fspec.to_string();
  r.p = p;
  r.c = r.c_bound = 0.0;
  r.grid_size = opts.grid_size;
  r.fixture = "lemma | " + r.matrix + " | " + r.function + " | p=" + detail::format_double(p);

  std::vector<std::string> failures;
  for (std::size_t n : n_list) {
    const int lambda = rule(static_cast<int>(n));
    if (static_cast<double>(n) > big_o_constant * lambda || lambda < 1) {
      failures.push_back("n = " + std::to_string(n) + " > " + detail::format_double(big_o_constant) +
                         " * lambda_n = " + std::to_string(lambda));
    }
  }
  detail::enforce(r, failures, opts.force);

  auto& fl = lab.function(fspec, opts.grid_size);
  const double zero = fl.zero_tol();
  for (std::size_t n : n_list) {
    LemmaConfig cfg{static_cast<int>(n), rule(static_cast<int>(n)), p, big_o_constant};
    if (opts.force) cfg.big_o_constant = std::numeric_limits<double>::infinity();
    const double lhs = windowed_strong_mean(fl.residuals(), cfg);
    const double rhs = fl.best(cfg.n - cfg.lambda_n);
    r.per_n.push_back(detail::make_entry(n, lhs, rhs, zero, zero));
  }
  r.unconverged_e = fl.unconverged_count();
  summarize(r);
  return r;
}

/// (1/n) Σ_{k=n+1}^{2n} φ(|S_k f − f|) against φ(E_n(f)).
inline BoundCheckReport totik_check(BoundsLab& lab, const FunctionSpec& fspec, const PhiSpec& phi,
                                    const std::vector<std::size_t>& n_list, const CheckOptions& opts = {}) {
  if (n_list.empty()) throw InputError("empty n list");
  const auto pv = validate_phi(phi);
  if (!pv.valid) throw InputError("invalid phi " + phi.to_string() + ": " + pv.violation);
  BoundCheckReport r;
  r.inequality_id = InequalityId::totik;
  r.matrix = "none";
  r.function = fspec.to_string();
  r.phi = phi.to_string();
  r.c = r.c_bound = 0.0;
  r.grid_size = opts.grid_size;
  r.fixture = "totik | " + r.function + " | phi=" + r.phi;

  auto& fl = lab.function(fspec, opts.grid_size);
  const double zero = phi(fl.zero_tol());
  for (std::size_t n : n_list) {
    std::vector<double> window(2 * n + 1, 0.0);
    for (std::size_t k = n + 1; k <= 2 * n; ++k) window[k] = 1.0 / static_cast<double>(n);
    const double lhs = phi_mean(window, phi, fl.residuals()).sup;
    const double rhs = phi(fl.best(static_cast<int>(n)));
    r.per_n.push_back(detail::make_entry(n, lhs, rhs, zero, zero));
  }
  r.unconverged_e = fl.unconverged_count();
  summarize(r);
  return r;
}

struct CounterexampleEntry {
  std::size_t n = 0;
  std::size_t grid_size = 0;
  /// ‖S_n f_n − f_n‖ for the witness f_n.
  double deviation = 0.0;
  double best = 0.0;
  double ratio = 0.0;
  double lebesgue = 0.0;
  double witness_sup = 0.0;
  /// E_n came from the Fejér upper bound because the exchange solve failed.
  bool upper_bound_used = false;
};

struct CounterexampleReport {
  std::vector<CounterexampleEntry> entries;
  bool increasing = false;
  /// Least-squares fit ratio ≈ slope·ln n + intercept.
  double slope = 0.0;
  double intercept = 0.0;
  /// Pearson correlation of ratio_n with the Lebesgue constant L_n.
  double lebesgue_correlation = 0.0;
  /// ‖S_n g − g‖ <= (1 + L_n) E_n(g) for g = cos x and the triangle wave, every n.
  bool classical_bound_ok = true;
  std::vector<std::string> notes;
};

/// Fejér mean of degree 4n of sign(D_n) sampled on `grid`.
inline TrigPolynomial dirichlet_sign_witness(std::size_t n, const Grid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = dirichlet_kernel(static_cast<int>(n), grid.node(j));
    values[j] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
  const int degree = static_cast<int>(4 * n);
  const auto coeffs = fourier_coefficients(GridFunction{grid, std::move(values), "sign_dirichlet"}, degree);
  TrigPolynomial t = coeffs.truncated(degree);
  for (int m = 1; m <= degree; ++m) {
    const double w = 1.0 - static_cast<double>(m) / (degree + 1);
    t.a[static_cast<std::size_t>(m)] *= w;
    t.b[static_cast<std::size_t>(m)] *= w;
  }
  return t;
}

inline CounterexampleReport remark4_counterexample(BoundsLab& lab, const std::vector<std::size_t>& n_list,
                                                   std::size_t grid_size = kDefaultGridSize) {
  if (n_list.empty()) throw InputError("empty n list");
  CounterexampleReport rep;
  for (std::size_t n : n_list) {
    if (n < 1) throw InputError("counterexample n must be >= 1");
    const std::size_t size = std::max(grid_size, std::bit_ceil(16 * n));
    const Grid grid(size);
    const auto witness = dirichlet_sign_witness(n, grid);
    const auto f = witness.on(grid, "witness_" + std::to_string(n));

    CounterexampleEntry e;
    e.n = n;
    e.grid_size = size;
    e.witness_sup = sup_norm(f);
    auto head = witness;
    head.a.resize(n + 1);
    head.b.resize(n + 1);
    e.deviation = sup_norm(head.on(grid) - f);
    try {
      e.best = best_approximation(f, static_cast<int>(n), lab.options()).value;
    } catch (const SolverError&) {
      // ‖f − σ_n f‖ bounds E_n from above, so the ratio can only be understated.
      auto fejer = witness;
      const int deg = static_cast<int>(n);
      fejer.a.resize(static_cast<std::size_t>(deg) + 1);
      fejer.b.resize(static_cast<std::size_t>(deg) + 1);
      for (int m = 1; m <= deg; ++m) {
        const double w = 1.0 - static_cast<double>(m) / (deg + 1);
        fejer.a[static_cast<std::size_t>(m)] *= w;
        fejer.b[static_cast<std::size_t>(m)] *= w;
      }
      e.best = sup_norm(f - fejer.on(grid));
      e.upper_bound_used = true;
      rep.notes.push_back("n = " + std::to_string(n) + ": E_n replaced by the Fejer upper bound");
    }
    e.ratio = e.best > 0.0 ? e.deviation / e.best : std::numeric_limits<double>::infinity();
    e.lebesgue = lebesgue_constant(static_cast<int>(n));
    rep.entries.push_back(e);

    for (const char* g : {"cos:m=1", "triangle"}) {
      auto& fl = lab.function(FunctionSpec::parse(g), grid_size);
      if (n >= fl.grid().size() / 4) continue;
      const auto res = fl.residuals().at(static_cast<int>(n));
      const double dev = std::abs(res[detail::argmax_abs({res.begin(), res.end()})]);
      if (dev > (1.0 + e.lebesgue) * fl.best(static_cast<int>(n)) + fl.zero_tol()) {
        rep.classical_bound_ok = false;
        rep.notes.push_back(std::string("classical bound fails for ") + g + " at n = " + std::to_string(n));
      }
    }
  }

  rep.increasing = true;
  for (std::size_t i = 1; i < rep.entries.size(); ++i) {
    if (!(rep.entries[i].ratio > rep.entries[i - 1].ratio)) rep.increasing = false;
  }
  std::vector<double> xs, ys, ls;
  for (const auto& e : rep.entries) {
    xs.push_back(static_cast<double>(e.n));
    ys.push_back(e.ratio);
    ls.push_back(e.lebesgue);
  }
  const auto fit = detail::fit_log_trend(xs, ys);
  rep.slope = fit.slope;
  double mean_log = 0.0, mean_y = 0.0, mean_l = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    mean_log += std::log(xs[i]);
    mean_y += ys[i];
    mean_l += ls[i];
  }
  const auto count = static_cast<double>(ys.size());
  mean_log /= count;
  mean_y /= count;
  mean_l /= count;
  rep.intercept = mean_y - rep.slope * mean_log;
  double syl = 0.0, syy = 0.0, sll = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    syl += (ys[i] - mean_y) * (ls[i] - mean_l);
    syy += (ys[i] - mean_y) * (ys[i] - mean_y);
    sll += (ls[i] - mean_l) * (ls[i] - mean_l);
  }
  rep.lebesgue_correlation = syy > 0.0 && sll > 0.0 ? syl / std::sqrt(syy * sll) : 0.0;
  return rep;
}

/// One group of cells from an experiment config.
struct ExperimentGroup {
  std::string name;
  std::vector<std::string> inequalities{"thm3-eq6"};
  std::vector<std::string> matrices{"cesaro"};
  std::vector<std::string> functions{"triangle"};
  std::vector<double> p{1.0};
  std::vector<double> c{2.0};
  std::vector<std::string> phis{"power:1"};
  std::vector<std::string> lambdas{"half"};
  std::string n_list = "8..256";
  std::size_t grid_size = kDefaultGridSize;
  bool force = false;
};

/// INI-style text: "[name]" opens a group; "key = value" lines with
/// whitespace-separated lists; '#' comments. Keys: inequality, matrix,
/// function, p, c, phi, lambda, n_list, grid_size, force.
inline std::vector<ExperimentGroup> parse_experiment_config(std::string_view text) {
  std::vector<ExperimentGroup> groups;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto where = "config line " + std::to_string(line_no);
    if (body.front() == '[') {
      if (body.back() != ']') throw InputError(where + ": unterminated section header");
      groups.emplace_back();
      groups.back().name = std::string(detail::trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw InputError(where + ": expected key = value");
    if (groups.empty()) throw InputError(where + ": key outside a [section]");
    auto& g = groups.back();
    const std::string key{detail::trim(body.substr(0, eq))};
    const auto value = detail::trim(body.substr(eq + 1));
    const auto words = detail::split(value, " \t");
    if (words.empty()) throw InputError(where + ": empty value for " + key);
    const auto numbers = [&]() {
      std::vector<double> out;
      for (const auto& w : words) out.push_back(detail::parse_double(w));
      return out;
    };
    if (key == "inequality") {
      g.inequalities = words;
    } else if (key == "matrix") {
      g.matrices = words;
    } else if (key == "function") {
      g.functions = words;
    } else if (key == "p") {
      g.p = numbers();
    } else if (key == "c") {
      g.c = numbers();
    } else if (key == "phi") {
      g.phis = words;
    } else if (key == "lambda") {
      g.lambdas = words;
    } else if (key == "n_list") {
      g.n_list = std::string(value);
      parse_n_list(g.n_list);
    } else if (key == "grid_size") {
      const auto size = detail::parse_int(value);
      Grid check(static_cast<std::size_t>(std::max(0LL, size)));
      g.grid_size = check.size();
    } else if (key == "force") {
      if (value != "true" && value != "false") throw InputError(where + ": force must be true or false");
      g.force = value == "true";
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  return groups;
}

/// Runs every cell of every group in declaration order. A failing cell keeps
/// its identifying fields, carries the message in `error`, and the run goes on.
inline std::vector<BoundCheckReport> run_experiment_suite(BoundsLab& lab, const std::vector<ExperimentGroup>& groups) {
  std::vector<BoundCheckReport> out;
  for (const auto& g : groups) {
    for (const auto& ineq_text : g.inequalities) {
      std::optional<InequalityId> id;
      try {
        id = inequality_from_string(ineq_text);
      } catch (const InputError& e) {
        BoundCheckReport r;
        r.fixture = g.name + " | " + ineq_text;
        r.error = e.what();
        out.push_back(std::move(r));
        continue;
      }
      // The second axis is the matrix for matrix forms, the λ rule for the
      // lemma and φ for Totik; remark5 forms run matrices × φ.
      const auto& second = *id == InequalityId::lemma ? g.lambdas : (*id == InequalityId::totik ? g.phis : g.matrices);
      const std::vector<std::string> third =
          (*id == InequalityId::remark5_ek || *id == InequalityId::remark5_omega) ? g.phis
                                                                                   : std::vector<std::string>{""};
      const std::vector<double> ps = (*id == InequalityId::thm1 || uses_phi(*id)) ? std::vector<double>{1.0} : g.p;
      const std::vector<double> cs = uses_matrix(*id) ? g.c : std::vector<double>{0.0};
      for (const auto& axis : second) {
        for (const auto& fn : g.functions) {
          for (double p : ps) {
            for (double c : cs) {
              for (const auto& phi_text : third) {
                BoundCheckReport r;
                r.inequality_id = *id;
                r.function = fn;
                r.matrix = axis;
                r.p = p;
                r.c = r.c_bound = c;
                r.grid_size = g.grid_size;
                r.fixture = g.name;
                try {
                  CheckOptions opts;
                  opts.force = g.force;
                  opts.grid_size = g.grid_size;
                  const auto ns = parse_n_list(g.n_list);
                  const auto fspec = FunctionSpec::parse(fn);
                  if (*id == InequalityId::lemma) {
                    r = lemma_check(lab, fspec, p, LambdaRule::parse(axis), ns, 4.0, opts);
                  } else if (*id == InequalityId::totik) {
                    r = totik_check(lab, fspec, PhiSpec::parse(axis), ns, opts);
                  } else {
                    if (!phi_text.empty()) opts.phi = PhiSpec::parse(phi_text);
                    r = inequality_check(lab, *id, SummabilityMatrix::parse(axis), fspec, p, c, ns, opts);
                  }
                  r.fixture = g.name + " | " + r.fixture;
                } catch (const std::exception& e) {
                  r.error = e.what();
                  r.per_n.clear();
                }
                out.push_back(std::move(r));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<BoundCheckReport> run_experiment_suite(BoundsLab& lab, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return run_experiment_suite(lab, parse_experiment_config(buf.str()));
}

}  // namespace summa

#pragma once

// Row-stochastic summability matrices, the A-transformation, the strong p-mean,
// the φ-mean and the windowed strong mean over partial sums S_k f.

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "summa/detail/text.hpp"
#include "summa/error.hpp"
#include "summa/fourier_engine.hpp"
#include "summa/periodic_function.hpp"
#include "summa/sequence_classes.hpp"

namespace summa {

enum class MatrixKind { cesaro, riesz, norlund, identity, gm5_synthetic, custom };

inline std::string to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::cesaro:
      return "cesaro";
    case MatrixKind::riesz:
      return "riesz";
    case MatrixKind::norlund:
      return "norlund";
    case MatrixKind::identity:
      return "identity";
    case MatrixKind::gm5_synthetic:
      return "gm5_synthetic";
    case MatrixKind::custom:
      return "custom";
  }
  return "?";
}

inline MatrixKind matrix_kind_from_string(std::string_view s) {
  for (auto k : {MatrixKind::cesaro, MatrixKind::riesz, MatrixKind::norlund, MatrixKind::identity,
                 MatrixKind::gm5_synthetic, MatrixKind::custom}) {
    if (to_string(k) == s) return k;
  }
  throw InputError("unknown matrix kind '" + std::string(s) + "'");
}

/// Nonnegative matrix (a_{n,k}) with finite row supports k <= K_n.
///
/// Built kinds produce any row on demand; custom matrices hold the rows read
/// from a file and nothing else.
class SummabilityMatrix {
 public:
  MatrixKind kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }

  /// "riesz:s=1", "norlund", "custom:path/to/rows.txt" and so on.
  std::string label() const {
    if (kind_ == MatrixKind::custom) return "custom:" + source_;
    std::string out = to_string(kind_);
    char sep = ':';
    for (const auto& [k, v] : params_) {
      out += sep + k + "=" + detail::format_double(v);
      sep = ',';
    }
    return out;
  }

  bool has_row(std::size_t n) const { return kind_ != MatrixKind::custom || custom_rows_.contains(n); }

  /// Largest available row index (unbounded for built kinds).
  std::size_t max_row() const {
    if (kind_ != MatrixKind::custom) return std::numeric_limits<std::size_t>::max();
    return custom_rows_.empty() ? 0 : custom_rows_.rbegin()->first;
  }

  /// a_{n,0..K_n}; trailing zeros are trimmed but a_{n,0} is always present.
  std::vector<double> row(std::size_t n) const {
    std::vector<double> r;
    switch (kind_) {
      case MatrixKind::cesaro:
        r.assign(n + 1, 1.0);
        break;
      case MatrixKind::riesz: {
        const double s = params_.at("s");
        r.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) r[k] = std::pow(static_cast<double>(k + 1), -s);
        break;
      }
      case MatrixKind::norlund: {
        const double s = params_.at("s");
        r.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) r[k] = std::pow(static_cast<double>(n - k + 1), s);
        break;
      }
      case MatrixKind::identity:
        r.assign(n + 1, 0.0);
        r[n] = 1.0;
        return r;
      case MatrixKind::gm5_synthetic: {
        r.resize(n + 1);
        const double heavy = params_.at("w");
        for (std::size_t k = 0; k <= n; ++k) r[k] = (std::bit_width(k + 1) - 1) % 2 == 1 ? heavy : 1.0;
        break;
      }
      case MatrixKind::custom: {
        const auto it = custom_rows_.find(n);
        if (it == custom_rows_.end()) throw InputError("custom matrix has no row " + std::to_string(n));
        return it->second;
      }
    }
    double total = 0.0;
    for (double v : r) total += v;
    if (!(total > 0.0)) throw InputError("matrix row " + std::to_string(n) + " has zero total mass");
    for (double& v : r) v /= total;
    return r;
  }

  std::size_t support(std::size_t n) const { return row(n).size() - 1; }

  static SummabilityMatrix build(MatrixKind kind, std::map<std::string, double> params = {});

  /// "kind" or "kind:key=value,...". Custom matrices go through from_file.
  static SummabilityMatrix parse(std::string_view text);

  /// Rows "n: a0 a1 ..." one per line; '#' starts a comment. With
  /// `normalize`, every row is divided by its sum; otherwise rows are kept
  /// as written and validate_matrix reports any row-sum deviation.
  static SummabilityMatrix from_text(std::string_view text, bool normalize, std::string source = "inline");
  static SummabilityMatrix from_file(const std::string& path, bool normalize);

 private:
  MatrixKind kind_ = MatrixKind::cesaro;
  std::map<std::string, double> params_;
  std::map<std::size_t, std::vector<double>> custom_rows_;
  std::string source_;
};

inline SummabilityMatrix SummabilityMatrix::build(MatrixKind kind, std::map<std::string, double> params) {
  std::map<std::string, double> defaults;
  switch (kind) {
    case MatrixKind::riesz:
    case MatrixKind::norlund:
      defaults = {{"s", 1.0}};
      break;
    case MatrixKind::gm5_synthetic:
      defaults = {{"w", 2.0}};
      break;
    case MatrixKind::custom:
      throw InputError("custom matrices are read from a file");
    default:
      break;
  }
  for (const auto& [key, value] : params) {
    if (!defaults.contains(key)) throw InputError("unknown parameter '" + key + "' for matrix " + to_string(kind));
    if (!std::isfinite(value)) throw InputError("matrix parameter '" + key + "' must be finite");
    defaults[key] = value;
  }
  if (kind == MatrixKind::gm5_synthetic && !(defaults["w"] > 0.0)) throw InputError("gm5_synthetic: w must be > 0");
  SummabilityMatrix m;
  m.kind_ = kind;
  m.params_ = std::move(defaults);
  return m;
}

inline SummabilityMatrix SummabilityMatrix::parse(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const auto kind = matrix_kind_from_string(detail::trim(text.substr(0, colon)));
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    for (const auto& item : detail::split(text.substr(colon + 1), ",")) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("expected key=value in matrix spec, got '" + item + "'");
      params[std::string(detail::trim(std::string_view(item).substr(0, eq)))] =
          detail::parse_double(std::string_view(item).substr(eq + 1));
    }
  }
  return build(kind, std::move(params));
}

inline SummabilityMatrix SummabilityMatrix::from_text(std::string_view text, bool normalize, std::string source) {
  SummabilityMatrix m;
  m.kind_ = MatrixKind::custom;
  m.source_ = std::move(source);
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto colon = body.find(':');
    const auto where = m.source_ + ":" + std::to_string(line_no);
    if (colon == std::string_view::npos) throw InputError(where + ": expected 'n: a0 a1 ...'");
    long long n = 0;
    std::vector<double> row;
    try {
      n = detail::parse_int(body.substr(0, colon));
      for (const auto& tok : detail::split(body.substr(colon + 1), " \t")) row.push_back(detail::parse_double(tok));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (n < 0) throw InputError(where + ": row index must be >= 0");
    if (row.empty()) throw InputError(where + ": row has no entries");
    double total = 0.0;
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) throw InputError(where + ": entries must be finite and nonnegative");
      total += v;
    }
    if (!(total > 0.0)) throw InputError(where + ": row has zero total mass");
    if (normalize) {
      for (double& v : row) v /= total;
    }
    while (row.size() > 1 && row.back() == 0.0) row.pop_back();
    if (!m.custom_rows_.emplace(static_cast<std::size_t>(n), std::move(row)).second) {
      throw InputError(where + ": duplicate row " + std::to_string(n));
    }
  }
  return m;
}

inline SummabilityMatrix SummabilityMatrix::from_file(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), normalize, path);
}

/// Row viewed as a sequence, padded so finite-horizon checks see its whole
/// support and a stretch of zeros after it.
inline RealSequence row_sequence(const std::vector<double>& row) {
  return RealSequence::matrix_row(row, std::max<std::size_t>(RealSequence::kMinHorizon, 4 * row.size()));
}

struct MatrixRowReport {
  std::size_t n = 0;
  std::size_t support = 0;
  double row_sum_deviation = 0.0;
  double a_n0 = 0.0;
  ClassMembershipReport gm5;
  bool ms = false;
  bool nmcs = false;
};

struct MatrixValidationReport {
  std::string matrix;
  double c = 2.0;
  std::vector<MatrixRowReport> rows;
  double max_row_sum_deviation = 0.0;
  bool row_sums_ok = true;
  /// a_{n,0} nonincreasing in n and ending below where it starts (or all zero).
  bool a_n0_decreasing = true;
  bool all_ms = true;
  bool all_nmcs = true;
  /// No row violates gm5 at its horizon.
  bool all_gm5 = true;
  double gm5_K_max = 0.0;
  /// max K over rows (n_max/2, n_max] divided by max K over (n_max/4, n_max/2].
  double gm5_growth = 0.0;
  /// gm5 constants stop growing over the last doubling of n.
  bool gm5_uniform = true;
};

namespace detail {

struct TrendFit {
  double slope = 0.0;
  double max = 0.0;
  double median = 0.0;
};

// Least-squares slope of y against ln x, plus max and median of y.
inline TrendFit fit_log_trend(const std::vector<double>& x, const std::vector<double>& y) {
  TrendFit fit;
  if (y.empty()) return fit;
  std::vector<double> sorted = y;
  std::sort(sorted.begin(), sorted.end());
  fit.max = sorted.back();
  const std::size_t h = sorted.size() / 2;
  fit.median = sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  if (y.size() < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    mx += std::log(x[i]);
    my += y[i];
  }
  mx /= static_cast<double>(y.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (y[i] - my);
    sxx += dx * dx;
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return fit;
}

inline constexpr double kTrendSlopeLimit = 0.1;
inline constexpr double kSpreadLimit = 10.0;

inline bool bounded_trend(const TrendFit& fit) {
  return std::abs(fit.slope) <= kTrendSlopeLimit && fit.max <= kSpreadLimit * fit.median;
}

}  // namespace detail

inline constexpr double kGm5GrowthLimit = 1.25;

inline MatrixValidationReport validate_matrix(const SummabilityMatrix& m, std::size_t n_max, double c = 2.0,
                                              std::size_t n_min = 0) {
  MatrixValidationReport rep;
  rep.matrix = m.label();
  rep.c = c;
  std::vector<double> ks, ns;  // gm5 constants of measurable rows n >= 1
  double first_a0 = -1.0;
  double prev_a0 = std::numeric_limits<double>::infinity();
  for (std::size_t n = n_min; n <= n_max; ++n) {
    if (!m.has_row(n)) continue;
    MatrixRowReport row_rep;
    const auto row = m.row(n);
    row_rep.n = n;
    row_rep.support = row.size() - 1;
    double total = 0.0;
    for (double v : row) total += v;
    row_rep.row_sum_deviation = std::abs(total - 1.0);
    row_rep.a_n0 = row[0];
    const auto seq = row_sequence(row);
    row_rep.gm5 = variation_constant(seq, SequenceClass::gm5, {.c = c});
    row_rep.ms = check_ms(seq).member();
    row_rep.nmcs = check_nmcs(seq).member();

    rep.max_row_sum_deviation = std::max(rep.max_row_sum_deviation, row_rep.row_sum_deviation);
    if (row_rep.row_sum_deviation > 1e-10) rep.row_sums_ok = false;
    if (first_a0 < 0.0) first_a0 = row[0];
    if (row[0] > prev_a0 + 1e-15) rep.a_n0_decreasing = false;
    prev_a0 = row[0];
    rep.all_ms = rep.all_ms && row_rep.ms;
    rep.all_nmcs = rep.all_nmcs && row_rep.nmcs;
    if (row_rep.gm5.verdict == Verdict::violated) rep.all_gm5 = false;
    if (row_rep.gm5.verdict == Verdict::member_at_horizon) {
      rep.gm5_K_max = std::max(rep.gm5_K_max, row_rep.gm5.K_estimate);
      if (n >= 1) {
        ns.push_back(static_cast<double>(n));
        ks.push_back(row_rep.gm5.K_estimate);
      }
    }
    rep.rows.push_back(std::move(row_rep));
  }
  if (!rep.rows.empty() && prev_a0 >= first_a0 && first_a0 > 0.0) rep.a_n0_decreasing = false;
  // K_n may saw-tooth with the position of the support end inside a dyadic
  // block, so compare peaks over consecutive doublings instead of fitting a slope.
  double upper = 0.0, lower = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] > n_max / 2.0) {
      upper = std::max(upper, ks[i]);
    } else if (ns[i] > n_max / 4.0) {
      lower = std::max(lower, ks[i]);
    }
  }
  rep.gm5_growth = lower > 0.0 ? upper / lower : (upper > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  rep.gm5_uniform = rep.all_gm5 && rep.gm5_growth <= kGm5GrowthLimit;
  return rep;
}

/// Signed residuals S_k f − f on the grid for k = 0..degree(), grown on demand.
class ResidualTable {
 public:
  ResidualTable(const GridFunction& f, const FourierCoefficients& c)
      : f_(f), coeffs_(c), sweep_(coeffs_, f_.grid) {
    if (coeffs_.source_grid_size != f_.size()) throw InputError("coefficients come from a different grid");
    push_current();
  }

  ResidualTable(const ResidualTable&) = delete;
  ResidualTable& operator=(const ResidualTable&) = delete;

  int degree() const { return static_cast<int>(rows_.size()) - 1; }
  int degree_cap() const { return coeffs_.degree_cap; }
  const GridFunction& function() const { return f_; }
  const FourierCoefficients& coefficients() const { return coeffs_; }

  void extend_to(int k) {
    if (k > coeffs_.degree_cap) {
      throw InputError("support " + std::to_string(k) + " exceeds coefficient cap " +
                       std::to_string(coeffs_.degree_cap));
    }
    while (degree() < k) {
      sweep_.advance();
      push_current();
    }
  }

  std::span<const double> at(int k) {
    extend_to(k);
    return rows_[static_cast<std::size_t>(k)];
  }

 private:
  void push_current() {
    const auto s = sweep_.values();
    std::vector<double> r(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) r[j] = s[j] - f_.values[j];
    rows_.push_back(std::move(r));
  }

  GridFunction f_;
  FourierCoefficients coeffs_;
  PartialSumSweep sweep_;
  std::vector<std::vector<double>> rows_;
};

struct MeanResult {
  GridFunction pointwise;
  double sup = 0.0;
};

namespace detail {

template <class Transform>
MeanResult weighted_mean(const std::vector<double>& row, ResidualTable& table, Transform g, std::string label) {
  const Grid& grid = table.function().grid;
  std::vector<double> acc(grid.size(), 0.0);
  table.extend_to(static_cast<int>(row.size()) - 1);
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double w = row[k];
    if (w == 0.0) continue;
    const auto r = table.at(static_cast<int>(k));
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += w * g(r[j]);
  }
  MeanResult out{GridFunction{grid, std::move(acc), std::move(label)}, 0.0};
  out.sup = sup_norm(out.pointwise);
  return out;
}

inline void require_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be a finite number > 0");
}

}  // namespace detail

/// Σ_k a_{n,k} |S_k f − f|^p pointwise, and its sup norm.
inline MeanResult strong_mean(const std::vector<double>& row, double p, ResidualTable& table) {
  detail::require_p(p);
  if (p == 1.0) return detail::weighted_mean(row, table, [](double r) { return std::abs(r); }, "strong_mean");
  if (p == 2.0) return detail::weighted_mean(row, table, [](double r) { return r * r; }, "strong_mean");
  return detail::weighted_mean(row, table, [p](double r) { return std::pow(std::abs(r), p); }, "strong_mean");
}

inline MeanResult strong_mean(const SummabilityMatrix& m, std::size_t n, double p, const GridFunction& f,
                              const FourierCoefficients& c) {
  ResidualTable table(f, c);
  return strong_mean(m.row(n), p, table);
}

/// T_{n,A} f − f = Σ_k a_{n,k} (S_k f − f) for row sums 1; sup is ‖T_{n,A} f − f‖.
inline MeanResult transform_deviation(const std::vector<double>& row, ResidualTable& table) {
  return detail::weighted_mean(row, table, [](double r) { return r; }, "transform_deviation");
}

inline MeanResult transform_deviation(const SummabilityMatrix& m, std::size_t n, const GridFunction& f,
                                      const FourierCoefficients& c) {
  ResidualTable table(f, c);
  return transform_deviation(m.row(n), table);
}

/// Nondecreasing φ with φ(0) = 0: t^p, log(1 + t), or a piecewise-linear table.
struct PhiSpec {
  enum class Kind { power, log1p, table };
  Kind kind = Kind::power;
  double p = 1.0;
  std::vector<std::pair<double, double>> knots;
  /// Declared growth constant; unset means "find the smallest one".
  std::optional<double> A;

  static PhiSpec power(double p) {
    detail::require_p(p);
    return {Kind::power, p, {}, std::nullopt};
  }
  static PhiSpec log1p() { return {Kind::log1p, 1.0, {}, std::nullopt}; }

  /// Knots (t_i, φ_i) with t strictly increasing and φ nondecreasing.
  static PhiSpec table(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw InputError("phi table needs at least two knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const auto [t, v] = knots[i];
      if (!std::isfinite(t) || !std::isfinite(v) || t < 0.0) throw InputError("phi table knots must be finite, t >= 0");
      if (i > 0 && !(t > knots[i - 1].first)) throw InputError("phi table t values must increase");
      if (i > 0 && v < knots[i - 1].second) throw InputError("phi table values must be nondecreasing");
    }
    return {Kind::table, 1.0, std::move(knots), std::nullopt};
  }

  /// "power:0.5", "log1p", "table:0/0,1/1.7,2/53.6"; an optional ";A=2" declares A.
  static PhiSpec parse(std::string_view text) {
    text = detail::trim(text);
    std::optional<double> declared;
    if (const auto semi = text.find(';'); semi != std::string_view::npos) {
      const auto tail = detail::trim(text.substr(semi + 1));
      if (!tail.starts_with("A=")) throw InputError("expected ';A=value' in phi spec");
      declared = detail::parse_double(tail.substr(2));
      text = detail::trim(text.substr(0, semi));
    }
    PhiSpec phi;
    if (text == "log1p") {
      phi = log1p();
    } else if (text.starts_with("power:")) {
      phi = power(detail::parse_double(text.substr(6)));
    } else if (text.starts_with("table:")) {
      std::vector<std::pair<double, double>> knots;
      for (const auto& item : detail::split(text.substr(6), ",")) {
        const auto slash = item.find('/');
        if (slash == std::string::npos) throw InputError("phi table knots are written t/value, got '" + item + "'");
        knots.emplace_back(detail::parse_double(std::string_view(item).substr(0, slash)),
                           detail::parse_double(std::string_view(item).substr(slash + 1)));
      }
      phi = table(std::move(knots));
    } else {
      throw InputError("unknown phi '" + std::string(text) + "'");
    }
    phi.A = declared;
    return phi;
  }

  std::string to_string() const {
    std::string out;
    switch (kind) {
      case Kind::power:
        out = "power:" + detail::format_double(p);
        break;
      case Kind::log1p:
        out = "log1p";
        break;
      case Kind::table: {
        out = "table:";
        for (std::size_t i = 0; i < knots.size(); ++i) {
          if (i > 0) out += ",";
          out += detail::format_double(knots[i].first) + "/" + detail::format_double(knots[i].second);
        }
        break;
      }
    }
    if (A) out += ";A=" + detail::format_double(*A);
    return out;
  }

  /// Largest t where φ is defined (tables stop at their last knot).
  double domain_end() const {
    return kind == Kind::table ? knots.back().first : std::numeric_limits<double>::infinity();
  }

  double operator()(double t) const {
    switch (kind) {
      case Kind::power:
        return p == 1.0 ? t : std::pow(t, p);
      case Kind::log1p:
        return std::log1p(t);
      case Kind::table: {
        if (t <= knots.front().first) return knots.front().second;
        if (t > knots.back().first) throw InputError("phi table evaluated past its last knot");
        const auto it = std::lower_bound(knots.begin(), knots.end(), t,
                                         [](const auto& kv, double x) { return kv.first < x; });
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      }
    }
    return 0.0;
  }
};

struct PhiValidation {
  bool valid = true;
  /// Smallest A with φ(t) <= e^{At} on the ladder.
  double A_exp = 0.0;
  /// Smallest A with φ(2t) <= Aφ(t) on the ladder part inside (0, 1).
  double A_doubling = 0.0;
  double A = 0.0;
  double witness_t = 0.0;
  std::string violation;
};

/// 241 geometric points from 1e-6 to 1e3.
inline std::vector<double> default_phi_ladder() {
  std::vector<double> ladder;
  for (int i = 0; i <= 240; ++i) ladder.push_back(std::pow(10.0, -6.0 + 9.0 * i / 240.0));
  return ladder;
}

inline PhiValidation validate_phi(const PhiSpec& phi, std::vector<double> ladder = default_phi_ladder()) {
  PhiValidation v;
  const auto fail = [&](double t, std::string why) {
    if (v.valid) {
      v.valid = false;
      v.witness_t = t;
      v.violation = std::move(why);
    }
  };
  std::erase_if(ladder, [&](double t) { return !(t > 0.0) || !std::isfinite(t) || t > phi.domain_end(); });
  std::sort(ladder.begin(), ladder.end());
  if (ladder.size() < 2) throw InputError("validate_phi: ladder needs two points inside the domain of phi");

  if (phi(0.0) != 0.0) fail(0.0, "phi(0) != 0");

  std::size_t argmax = 0;
  double prev_value = phi(0.0);
  std::vector<double> exp_need(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double t = ladder[i];
    const double value = phi(t);
    if (!std::isfinite(value) || value < 0.0) fail(t, "phi is not finite and nonnegative");
    if (value < prev_value) fail(t, "phi decreases");
    prev_value = value;
    exp_need[i] = value > 0.0 ? std::log(value) / t : 0.0;
    if (exp_need[i] > exp_need[argmax]) argmax = i;
    if (phi.A && value > std::exp(*phi.A * t)) fail(t, "phi(t) > exp(A t)");

    if (t < 1.0 && 2.0 * t <= phi.domain_end()) {
      const double doubled = phi(2.0 * t);
      if (value > 0.0) {
        v.A_doubling = std::max(v.A_doubling, doubled / value);
      } else if (doubled > 0.0) {
        fail(t, "phi(2t) > 0 = phi(t)");
      }
      if (phi.A && doubled > *phi.A * value) fail(t, "phi(2t) > A phi(t)");
    }
  }
  v.A_exp = std::max(0.0, exp_need[argmax]);
  // The required exponential rate is still climbing at the end of the data:
  // no finite A is supported. Tables are judged on their knots, since linear
  // interpolation bends log(phi)/t between them.
  bool climbing = argmax + 1 == ladder.size() && exp_need[argmax] > exp_need[argmax - 1];
  if (phi.kind == PhiSpec::Kind::table) {
    climbing = true;
    double prev_rate = -std::numeric_limits<double>::infinity();
    for (const auto& [t, value] : phi.knots) {
      if (t <= 0.0 || value <= 0.0) continue;
      const double rate = std::log(value) / t;
      v.A_exp = std::max(v.A_exp, rate);
      if (!(rate > prev_rate)) climbing = false;
      prev_rate = rate;
    }
  }
  if (climbing) fail(phi.kind == PhiSpec::Kind::table ? phi.knots.back().first : ladder.back(), "log(phi(t))/t still increasing at the end of the data; no exp(A t) majorant");
  v.A = std::max(v.A_exp, v.A_doubling);
  return v;
}

/// Σ_k a_{n,k} φ(|S_k f − f|) pointwise, and its sup norm.
inline MeanResult phi_mean(const std::vector<double>& row, const PhiSpec& phi, ResidualTable& table) {
  if (phi.kind == PhiSpec::Kind::power) return strong_mean(row, phi.p, table);
  return detail::weighted_mean(row, table, [&phi](double r) { return phi(std::abs(r)); }, "phi_mean");
}

inline MeanResult phi_mean(const SummabilityMatrix& m, std::size_t n, const PhiSpec& phi, const GridFunction& f,
                           const FourierCoefficients& c) {
  const auto check = validate_phi(phi);
  if (!check.valid) throw InputError("invalid phi " + phi.to_string() + ": " + check.violation);
  ResidualTable table(f, c);
  return phi_mean(m.row(n), phi, table);
}

struct LemmaConfig {
  int n = 1;
  int lambda_n = 1;
  double p = 1.0;
  double big_o_constant = 4.0;

  void validate() const {
    detail::require_p(p);
    if (lambda_n < 1 || lambda_n > n) throw InputError("lambda_n must satisfy 1 <= lambda_n <= n");
    if (static_cast<double>(n) > big_o_constant * lambda_n) {
      throw InputError("n = " + std::to_string(n) + " exceeds " + detail::format_double(big_o_constant) +
                       " * lambda_n = " + std::to_string(lambda_n));
    }
  }
};

/// {(1/λ_n) Σ_{k=n−λ_n}^{n−1} |S_k f − f|^p}^{1/p} at every grid node.
inline GridFunction windowed_strong_mean_pointwise(ResidualTable& table, const LemmaConfig& cfg) {
  cfg.validate();
  if (cfg.n - 1 > table.degree_cap()) throw InputError("coefficient cap too small for the lemma window");
  std::vector<double> window(static_cast<std::size_t>(cfg.n), 0.0);
  for (int k = cfg.n - cfg.lambda_n; k < cfg.n; ++k) window[static_cast<std::size_t>(k)] = 1.0 / cfg.lambda_n;
  auto mean = strong_mean(window, cfg.p, table).pointwise;
  if (cfg.p != 1.0) {
    for (double& v : mean.values) v = std::pow(v, 1.0 / cfg.p);
  }
  mean.label = "windowed_strong_mean";
  return mean;
}

inline double windowed_strong_mean(ResidualTable& table, const LemmaConfig& cfg) {
  return sup_norm(windowed_strong_mean_pointwise(table, cfg));
}

inline double windowed_strong_mean(const GridFunction& f, const FourierCoefficients& c, const LemmaConfig& cfg) {
  ResidualTable table(f, c);
  return windowed_strong_mean(table, cfg);
}

}  // namespace summa

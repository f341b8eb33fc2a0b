#pragma once

// Membership checks and constant estimates for the monotonicity-type sequence
// classes MS, CQMS, RBVS, MRBVS, GM, GM(β) with Tikhonov's β-variants, and NMCS.
//
// All checks are finite-horizon: a "member-at-horizon" verdict means the
// defining inequality holds with K_estimate for every tested m, nothing more.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "summa/detail/text.hpp"
#include "summa/error.hpp"

namespace summa {

enum class TailModel { zero_extended, explicit_formula };

inline std::string to_string(TailModel t) { return t == TailModel::zero_extended ? "zero-extended" : "explicit-formula"; }

inline TailModel tail_model_from_string(std::string_view s) {
  if (s == "zero-extended") return TailModel::zero_extended;
  if (s == "explicit-formula") return TailModel::explicit_formula;
  throw InputError("unknown tail model '" + std::string(s) + "'");
}

/// Real sequence a_first..a_M with a declared behavior beyond the horizon M.
///
/// Standalone sequences start at index 1; summability-matrix rows start at 0.
class RealSequence {
 public:
  using Formula = std::function<double(std::size_t)>;

  static constexpr std::size_t kMinHorizon = 16;

  /// Zero-extended beyond the last stored value.
  explicit RealSequence(std::vector<double> values, std::size_t first_index = 1)
      : values_(std::move(values)), first_(first_index) {
    check();
  }

  /// Values a_first..a_horizon from `formula`, which also defines the tail.
  /// `monotone_null_tail` asserts |a_k| decreases to 0 beyond the horizon, so
  /// the tail variation telescopes to |a_{horizon+1}|.
  RealSequence(Formula formula, std::size_t horizon, std::size_t first_index, bool monotone_null_tail)
      : first_(first_index), formula_(std::move(formula)), monotone_null_tail_(monotone_null_tail) {
    if (horizon < first_index) throw InputError("sequence horizon precedes its first index");
    values_.reserve(horizon - first_index + 1);
    for (std::size_t k = first_index; k <= horizon; ++k) values_.push_back(formula_(k));
    check();
  }

  /// A matrix row (index 0) padded with zeros to at least `min_horizon`.
  static RealSequence matrix_row(std::vector<double> row, std::size_t min_horizon = kMinHorizon) {
    if (row.size() < min_horizon + 1) row.resize(min_horizon + 1, 0.0);
    return RealSequence(std::move(row), 0);
  }

  std::size_t first_index() const { return first_; }
  std::size_t horizon() const { return first_ + values_.size() - 1; }
  TailModel tail_model() const { return formula_ ? TailModel::explicit_formula : TailModel::zero_extended; }
  bool monotone_null_tail() const { return monotone_null_tail_ || !formula_; }
  const std::vector<double>& values() const { return values_; }

  /// a_k for any k >= first_index, following the tail model past the horizon.
  double operator[](std::size_t k) const {
    if (k < first_) throw InputError("sequence index below first index");
    if (k <= horizon()) return values_[k - first_];
    return formula_ ? formula_(k) : 0.0;
  }

  /// Marks the explicit tail as monotone inside every block [2^j + 1, 2^(j+1) - 1],
  /// which lets the tail variation telescope block by block.
  RealSequence with_dyadic_monotone_tail() const {
    RealSequence out = *this;
    out.dyadic_monotone_ = true;
    return out;
  }
  bool dyadic_monotone_tail() const { return dyadic_monotone_ && formula_; }

  RealSequence scaled(double lambda) const {
    RealSequence out = *this;
    for (double& v : out.values_) v *= lambda;
    if (formula_) out.formula_ = [f = formula_, lambda](std::size_t k) { return lambda * f(k); };
    return out;
  }

 private:
  void check() const {
    if (values_.empty() || horizon() < kMinHorizon) {
      throw InputError("sequence horizon must be >= " + std::to_string(kMinHorizon));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw InputError("sequence entries must be finite");
    }
  }

  std::vector<double> values_;
  std::size_t first_ = 1;
  Formula formula_;
  bool monotone_null_tail_ = false;
  bool dyadic_monotone_ = false;
};

enum class SequenceClass { ms, cqms, rbvs, mrbvs, gm, gm1, gm2, gm3, gm4, gm5, nmcs };

inline constexpr std::array<std::pair<SequenceClass, std::string_view>, 11> kSequenceClassNames{{
    {SequenceClass::ms, "ms"},
    {SequenceClass::cqms, "cqms"},
    {SequenceClass::rbvs, "rbvs"},
    {SequenceClass::mrbvs, "mrbvs"},
    {SequenceClass::gm, "gm"},
    {SequenceClass::gm1, "gm1"},
    {SequenceClass::gm2, "gm2"},
    {SequenceClass::gm3, "gm3"},
    {SequenceClass::gm4, "gm4"},
    {SequenceClass::gm5, "gm5"},
    {SequenceClass::nmcs, "nmcs"},
}};

inline std::string to_string(SequenceClass c) {
  for (const auto& [id, name] : kSequenceClassNames) {
    if (id == c) return std::string(name);
  }
  return "?";
}

inline SequenceClass sequence_class_from_string(std::string_view s) {
  for (const auto& [id, name] : kSequenceClassNames) {
    if (name == s) return id;
  }
  throw InputError("unknown sequence class '" + std::string(s) + "'");
}

enum class Verdict { member_at_horizon, violated, degenerate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::member_at_horizon:
      return "member-at-horizon";
    case Verdict::violated:
      return "violated";
    case Verdict::degenerate:
      return "degenerate";
  }
  return "?";
}

inline Verdict verdict_from_string(std::string_view s) {
  if (s == "member-at-horizon") return Verdict::member_at_horizon;
  if (s == "violated") return Verdict::violated;
  if (s == "degenerate") return Verdict::degenerate;
  throw InputError("unknown verdict '" + std::string(s) + "'");
}

/// Result of one class check.
///
/// For the variation classes K_estimate is the largest ratio LHS(m)/RHS(m) over
/// tested m with RHS(m) > 0. An m with LHS(m) > 0 = RHS(m) admits no finite
/// constant: it is counted in degenerate_count and makes the verdict
/// "violated", but never enters K_estimate. "degenerate" means no tested m had a
/// nonzero side, so there was nothing to measure. For nmcs, K_estimate holds
/// the tail maximum of k·a_k.
struct ClassMembershipReport {
  SequenceClass class_id = SequenceClass::ms;
  double K_estimate = 0.0;
  std::size_t witness_m = 0;
  Verdict verdict = Verdict::member_at_horizon;
  std::size_t horizon = 0;
  TailModel tail_model = TailModel::zero_extended;
  std::size_t m_max = 0;
  std::size_t degenerate_count = 0;
  /// Some window reached past the horizon of a zero-extended sequence.
  bool window_truncated = false;
  /// An infinite tail sum was cut off before reaching its tolerance.
  bool tail_truncated = false;
  double partial_sum_increment = 0.0;
  std::string note;

  bool member() const { return verdict == Verdict::member_at_horizon; }
};

namespace detail {

inline void require_nonnegative(const RealSequence& a, const char* op) {
  for (double v : a.values()) {
    if (v < 0.0) throw PreconditionError(std::string(op) + ": sequence must be nonnegative");
  }
}

inline ClassMembershipReport base_report(const RealSequence& a, SequenceClass id) {
  ClassMembershipReport r;
  r.class_id = id;
  r.horizon = a.horizon();
  r.tail_model = a.tail_model();
  return r;
}

}  // namespace detail

/// Monotone decreasing nonnegative: a_k >= a_{k+1} >= 0 for every k < M.
inline ClassMembershipReport check_ms(const RealSequence& a) {
  auto r = detail::base_report(a, SequenceClass::ms);
  r.m_max = a.horizon();
  r.K_estimate = 1.0;
  for (std::size_t k = a.first_index(); k < a.horizon(); ++k) {
    if (!(a[k] >= a[k + 1] && a[k + 1] >= 0.0)) {
      r.verdict = Verdict::violated;
      r.witness_m = k;
      r.K_estimate = std::numeric_limits<double>::infinity();
      return r;
    }
  }
  if (a[a.horizon()] < 0.0) {
    r.verdict = Verdict::violated;
    r.witness_m = a.horizon();
    r.K_estimate = std::numeric_limits<double>::infinity();
  }
  return r;
}

/// Classic quasimonotone: a_k / k^alpha nonincreasing over the horizon.
inline ClassMembershipReport check_cqms(const RealSequence& a, double alpha) {
  if (!(alpha > 0.0)) throw InputError("check_cqms: alpha must be > 0");
  detail::require_nonnegative(a, "check_cqms");
  auto r = detail::base_report(a, SequenceClass::cqms);
  r.m_max = a.horizon();
  r.K_estimate = 1.0;
  const std::size_t start = std::max<std::size_t>(1, a.first_index());
  for (std::size_t k = start; k < a.horizon(); ++k) {
    const double lhs = a[k] / std::pow(static_cast<double>(k), alpha);
    const double rhs = a[k + 1] / std::pow(static_cast<double>(k + 1), alpha);
    if (rhs > lhs) {
      r.verdict = Verdict::violated;
      r.witness_m = k;
      r.K_estimate = std::numeric_limits<double>::infinity();
      return r;
    }
  }
  return r;
}

/// Parameters of the variation-type classes. `c` is the "some c > 1" of gm3,
/// gm4 and gm5 (gm3 uses floor(c) as its integer base); `big_n` is the N of gm2
/// and gm3; m_max = 0 selects floor(horizon / (2c)).
struct VariationParams {
  double c = 2.0;
  int big_n = 2;
  std::size_t m_max = 0;
};

namespace detail {

// |a_k - a_{k+1}| summed over k >= from, for the part beyond the cached range.
inline double tail_variation(const RealSequence& a, std::size_t from, bool& truncated) {
  if (a.tail_model() == TailModel::zero_extended) {
    double sum = 0.0;
    for (std::size_t k = from; k <= a.horizon(); ++k) sum += std::abs(a[k] - a[k + 1]);
    return sum;
  }
  if (a.monotone_null_tail()) return std::abs(a[from]);
  if (a.dyadic_monotone_tail()) {
    // Edges of each dyadic block explicitly, the monotone interior by telescoping.
    double total = 0.0;
    std::size_t k = from;
    for (; k < 4 || !std::has_single_bit(k); ++k) total += std::abs(a[k] - a[k + 1]);
    for (int j = std::bit_width(k) - 1; j < 62; ++j) {
      const std::size_t lo = std::size_t{1} << j;
      const std::size_t hi = (lo << 1) - 1;
      const double block = std::abs(a[lo] - a[lo + 1]) + std::abs(a[lo + 1] - a[hi]) + std::abs(a[hi] - a[hi + 1]);
      total += block;
      if (total > 0.0 && block <= 1e-13 * total) return total;
    }
    truncated = total > 0.0;
    return total;
  }
  constexpr std::size_t kLimit = std::size_t{1} << 26;
  double total = 0.0;
  std::size_t lo = from;
  std::size_t width = std::max<std::size_t>(from, 64);
  while (lo < kLimit) {
    double block = 0.0;
    for (std::size_t k = lo; k < lo + width; ++k) block += std::abs(a[k] - a[k + 1]);
    total += block;
    lo += width;
    width *= 2;
    if (block <= 1e-12 * total || total == 0.0) return total;
  }
  truncated = true;
  return total;
}

}  // namespace detail

/// K(a) estimate for rbvs, mrbvs, gm (= gm1), gm2..gm5.
inline ClassMembershipReport variation_constant(const RealSequence& a, SequenceClass variant,
                                                const VariationParams& params = {}) {
  using detail::base_report;
  switch (variant) {
    case SequenceClass::rbvs:
    case SequenceClass::mrbvs:
    case SequenceClass::gm:
    case SequenceClass::gm1:
    case SequenceClass::gm2:
    case SequenceClass::gm3:
    case SequenceClass::gm4:
    case SequenceClass::gm5:
      break;
    default:
      throw InputError("variation_constant: " + to_string(variant) + " is not a variation class");
  }
  const double c = params.c;
  if ((variant == SequenceClass::gm3 || variant == SequenceClass::gm4 || variant == SequenceClass::gm5) && !(c > 1.0)) {
    throw InputError("variation_constant: c must be > 1");
  }
  if (variant == SequenceClass::gm3 && c < 2.0) throw InputError("variation_constant: gm3 needs an integer c >= 2");
  if ((variant == SequenceClass::gm2 || variant == SequenceClass::gm3) && params.big_n < 0) {
    throw InputError("variation_constant: N must be >= 0");
  }

  auto r = base_report(a, variant);
  const std::size_t horizon = a.horizon();
  const std::size_t m_lo = std::max<std::size_t>(1, a.first_index());
  const double c_window = std::max(c, 1.0 + 1e-12);
  std::size_t m_max = params.m_max != 0 ? params.m_max
                                        : static_cast<std::size_t>(std::floor(horizon / (2.0 * c_window)));
  m_max = std::max(m_max, m_lo);
  r.m_max = m_max;

  // Largest index any window touches.
  std::size_t reach = 2 * m_max + 1;
  const auto cm = [&](std::size_t m) { return static_cast<std::size_t>(std::floor(c * static_cast<double>(m))); };
  const auto c_int = static_cast<std::size_t>(std::floor(c));
  switch (variant) {
    case SequenceClass::gm2:
      reach = std::max(reach, m_max + static_cast<std::size_t>(params.big_n));
      break;
    case SequenceClass::gm3: {
      std::size_t top = m_max;
      for (int nu = 0; nu < params.big_n; ++nu) top *= c_int;
      reach = std::max(reach, top);
      break;
    }
    case SequenceClass::gm4:
    case SequenceClass::gm5:
      reach = std::max(reach, cm(m_max));
      break;
    default:
      break;
  }
  if (reach > horizon && a.tail_model() == TailModel::zero_extended) r.window_truncated = true;

  // vals[k - first] = a_k for first..reach+1. Windows are summed directly:
  // prefix-sum differences lose all relative accuracy once a_m is tiny.
  const std::size_t first = a.first_index();
  std::vector<double> vals(reach - first + 2);
  for (std::size_t k = first; k <= reach + 1; ++k) vals[k - first] = a[k];
  const auto at = [&](std::size_t k) { return vals[k - first]; };
  const auto abs_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) s += std::abs(at(k));
    return s;
  };
  const auto over_k_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = std::max<std::size_t>(lo, 1); k <= hi; ++k) s += std::abs(at(k)) / static_cast<double>(k);
    return s;
  };
  const auto diff_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) s += std::abs(at(k) - at(k + 1));
    return s;
  };
  // Rest variation from m to reach, accumulated from the far end (no cancellation).
  std::vector<double> diff_suffix;
  if (variant == SequenceClass::rbvs || variant == SequenceClass::mrbvs) {
    diff_suffix.assign(reach - first + 2, 0.0);
    for (std::size_t k = reach + 1; k-- > first;) diff_suffix[k - first] = diff_suffix[k - first + 1] + std::abs(at(k) - at(k + 1));
  }

  double tail_beyond = 0.0;
  if (variant == SequenceClass::rbvs || variant == SequenceClass::mrbvs) {
    tail_beyond = detail::tail_variation(a, reach + 1, r.tail_truncated);
  }

  bool any_measured = false;
  for (std::size_t m = m_lo; m <= m_max; ++m) {
    double lhs = 0.0;
    if (variant == SequenceClass::rbvs || variant == SequenceClass::mrbvs) {
      lhs = diff_suffix[m - first] + tail_beyond;
    } else {
      lhs = diff_sum(m, 2 * m - 1);
    }

    double rhs = 0.0;
    switch (variant) {
      case SequenceClass::rbvs:
      case SequenceClass::gm:
      case SequenceClass::gm1:
        rhs = std::abs(a[m]);
        break;
      case SequenceClass::mrbvs:
        rhs = abs_sum(std::max((m + 1) / 2, first), m) / static_cast<double>(m);
        break;
      case SequenceClass::gm2:
        rhs = abs_sum(m, m + static_cast<std::size_t>(params.big_n));
        break;
      case SequenceClass::gm3: {
        std::size_t idx = m;
        for (int nu = 0; nu <= params.big_n; ++nu, idx *= c_int) rhs += std::abs(a[idx]);
        break;
      }
      case SequenceClass::gm4:
        rhs = std::abs(a[m]) + over_k_sum(m + 1, cm(m));
        break;
      case SequenceClass::gm5: {
        const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(m) / c)));
        rhs = over_k_sum(std::max(lo, first), cm(m));
        break;
      }
      default:
        break;
    }

    if (lhs > 0.0 || rhs > 0.0) any_measured = true;
    if (rhs > 0.0) {
      const double ratio = lhs / rhs;
      if (ratio > r.K_estimate) {
        r.K_estimate = ratio;
        if (r.degenerate_count == 0) r.witness_m = m;
      }
    } else if (lhs > 0.0) {
      if (r.degenerate_count == 0) r.witness_m = m;
      ++r.degenerate_count;
    }
  }

  if (r.degenerate_count > 0) {
    r.verdict = Verdict::violated;
    r.note = std::to_string(r.degenerate_count) + " tested m with zero majorant and nonzero variation";
  } else if (!any_measured) {
    r.verdict = Verdict::degenerate;
    r.note = "no tested m with a nonzero side";
  }
  if (r.window_truncated) {
    r.note += std::string(r.note.empty() ? "" : "; ") + "windows past the horizon read the zero tail";
  }
  return r;
}

/// Nearly monotone convergent at the horizon: the last-quarter partial-sum
/// increment and max_{k in [M/2, M]} k·a_k are both below `tol`.
inline ClassMembershipReport check_nmcs(const RealSequence& a, double tol = 1e-3) {
  if (!(tol > 0.0)) throw InputError("check_nmcs: tol must be > 0");
  detail::require_nonnegative(a, "check_nmcs");
  auto r = detail::base_report(a, SequenceClass::nmcs);
  const std::size_t m = a.horizon();
  r.m_max = m;

  double increment = 0.0;
  for (std::size_t k = std::max(a.first_index(), 3 * m / 4 + 1); k <= m; ++k) increment += a[k];
  double tail_max = 0.0;
  for (std::size_t k = std::max(a.first_index(), (m + 1) / 2); k <= m; ++k) {
    const double v = static_cast<double>(k) * a[k];
    if (v > tail_max || r.witness_m == 0) {
      tail_max = std::max(tail_max, v);
      r.witness_m = k;
    }
  }
  r.K_estimate = tail_max;
  r.partial_sum_increment = increment;
  r.verdict = (increment < tol && tail_max < tol) ? Verdict::member_at_horizon : Verdict::violated;
  r.note = "finite-horizon surrogate for sum < inf and k a_k -> 0";
  return r;
}

/// Named sequence generators. Row families (cesaro_row, riesz_row, identity_row)
/// are indexed from 0 like matrix rows; the rest from 1.
enum class SequenceFamily { power, geometric, cesaro_row, riesz_row, spiked, lacunary_gaps, identity_row };

struct SequenceFamilySpec {
  SequenceFamily family = SequenceFamily::power;
  std::map<std::string, double> params;

  static SequenceFamilySpec parse(std::string_view text);
  std::string to_string() const;
};

namespace detail {

struct FamilyInfo {
  SequenceFamily family;
  std::string_view name;
  std::map<std::string, double> defaults;
};

// power: k^-s. geometric: q^k. cesaro_row: 1/(n+1) on 0..n. riesz_row: (k+1)^-s
// normalized on 0..n. spiked: k^-s plus height·2^(-r j) at k = 2^j.
// lacunary_gaps: k^-s on dyadic blocks [2^j, 2^(j+1)) with j even, 0 on odd
// blocks. identity_row: e_n.
inline const std::vector<FamilyInfo>& sequence_families() {
  static const std::vector<FamilyInfo> families = {
      {SequenceFamily::power, "power", {{"s", 2.0}}},
      {SequenceFamily::geometric, "geometric", {{"q", 0.5}}},
      {SequenceFamily::cesaro_row, "cesaro_row", {{"n", 7.0}}},
      {SequenceFamily::riesz_row, "riesz_row", {{"n", 7.0}, {"s", 1.0}}},
      {SequenceFamily::spiked, "spiked", {{"s", 2.0}, {"r", 1.0}, {"height", 1.0}}},
      {SequenceFamily::lacunary_gaps, "lacunary_gaps", {{"s", 2.0}}},
      {SequenceFamily::identity_row, "identity_row", {{"n", 5.0}}},
  };
  return families;
}

}  // namespace detail

inline SequenceFamilySpec SequenceFamilySpec::parse(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const auto name = detail::trim(text.substr(0, colon));
  const detail::FamilyInfo* info = nullptr;
  for (const auto& f : detail::sequence_families()) {
    if (f.name == name) info = &f;
  }
  if (info == nullptr) throw InputError("unknown sequence family '" + std::string(name) + "'");
  SequenceFamilySpec spec{info->family, info->defaults};
  if (colon != std::string_view::npos) {
    for (const auto& item : detail::split(text.substr(colon + 1), ",")) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("expected key=value in family spec, got '" + item + "'");
      const std::string key{detail::trim(std::string_view(item).substr(0, eq))};
      if (!spec.params.contains(key)) throw InputError("unknown parameter '" + key + "' for family " + std::string(name));
      spec.params[key] = detail::parse_double(std::string_view(item).substr(eq + 1));
    }
  }
  return spec;
}

inline std::string SequenceFamilySpec::to_string() const {
  std::string out;
  for (const auto& f : detail::sequence_families()) {
    if (f.family == family) out = std::string(f.name);
  }
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep + k + "=" + detail::format_double(v);
    sep = ',';
  }
  return out;
}

inline RealSequence generate_sequence(const SequenceFamilySpec& spec, std::size_t horizon = 4096) {
  const auto& p = spec.params;
  const auto row_n = [&]() {
    const double n = p.at("n");
    if (!(n >= 0.0) || n != std::floor(n)) throw InputError("row family needs an integer n >= 0");
    return static_cast<std::size_t>(n);
  };
  switch (spec.family) {
    case SequenceFamily::power: {
      const double s = p.at("s");
      if (!(s > 0.0)) throw InputError("power: s must be > 0");
      return RealSequence([s](std::size_t k) { return std::pow(static_cast<double>(k), -s); }, horizon, 1, true);
    }
    case SequenceFamily::geometric: {
      const double q = p.at("q");
      if (!(q > 0.0 && q < 1.0)) throw InputError("geometric: q must lie in (0, 1)");
      return RealSequence([q](std::size_t k) { return std::pow(q, static_cast<double>(k)); }, horizon, 1, true);
    }
    case SequenceFamily::cesaro_row: {
      const std::size_t n = row_n();
      return RealSequence::matrix_row(std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1)), horizon);
    }
    case SequenceFamily::riesz_row: {
      const std::size_t n = row_n();
      const double s = p.at("s");
      std::vector<double> row(n + 1);
      double total = 0.0;
      for (std::size_t k = 0; k <= n; ++k) total += row[k] = std::pow(static_cast<double>(k + 1), -s);
      for (double& v : row) v /= total;
      return RealSequence::matrix_row(std::move(row), horizon);
    }
    case SequenceFamily::spiked: {
      const double s = p.at("s");
      const double rate = p.at("r");
      const double height = p.at("height");
      if (!(s > 0.0) || !(height >= 0.0)) throw InputError("spiked: need s > 0 and height >= 0");
      return RealSequence(
          [s, rate, height](std::size_t k) {
            double v = std::pow(static_cast<double>(k), -s);
            if (std::has_single_bit(k)) v += height * std::pow(static_cast<double>(k), -rate);
            return v;
          },
          horizon, 1, false)
          .with_dyadic_monotone_tail();
    }
    case SequenceFamily::lacunary_gaps: {
      const double s = p.at("s");
      if (!(s > 0.0)) throw InputError("lacunary_gaps: s must be > 0");
      return RealSequence(
          [s](std::size_t k) {
            const int block = std::bit_width(k) - 1;
            return block % 2 == 0 ? std::pow(static_cast<double>(k), -s) : 0.0;
          },
          horizon, 1, false)
          .with_dyadic_monotone_tail();
    }
    case SequenceFamily::identity_row: {
      const std::size_t n = row_n();
      std::vector<double> row(n + 1, 0.0);
      row[n] = 1.0;
      return RealSequence::matrix_row(std::move(row), horizon);
    }
  }
  throw InputError("unknown sequence family");
}

inline RealSequence generate_sequence(std::string_view spec, std::size_t horizon = 4096) {
  return generate_sequence(SequenceFamilySpec::parse(spec), horizon);
}

/// Dispatches to the checker for `id`.
inline ClassMembershipReport classify_sequence(const RealSequence& a, SequenceClass id, const VariationParams& params = {},
                                      double alpha = 1.0, double nmcs_tol = 1e-3) {
  switch (id) {
    case SequenceClass::ms:
      return check_ms(a);
    case SequenceClass::cqms:
      return check_cqms(a, alpha);
    case SequenceClass::nmcs:
      return check_nmcs(a, nmcs_tol);
    default:
      return variation_constant(a, id, params);
  }
}

/// Numerical check that a summable gm5 sequence is NMCS, through the chain
/// k|a_k| <= C · Σ_{l=[k/2c]}^{[ck]+2k} |a_l|.
struct Remark1Report {
  ClassMembershipReport gm5;
  /// Largest ratio k|a_k| / window sum over tested k.
  double chain_constant = 0.0;
  std::size_t chain_witness_k = 0;
  std::size_t k_max = 0;
  /// max_{k in [M/2, M]} k|a_k|.
  double tail_max = 0.0;
  double partial_sum_increment = 0.0;
  bool holds = false;
};

inline Remark1Report verify_remark1(const RealSequence& a, double c = 2.0, double summable_tol = 1e-3) {
  Remark1Report rep;
  rep.gm5 = variation_constant(a, SequenceClass::gm5, {.c = c});
  if (!rep.gm5.member()) {
    throw PreconditionError("verify_remark1: sequence is not a gm5 member at the horizon (" + to_string(rep.gm5.verdict) +
                            ")");
  }
  const std::size_t m = a.horizon();
  for (std::size_t k = std::max(a.first_index(), 3 * m / 4 + 1); k <= m; ++k) rep.partial_sum_increment += std::abs(a[k]);
  if (!(rep.partial_sum_increment < summable_tol)) {
    throw PreconditionError("verify_remark1: sum |a_k| is not numerically convergent at the horizon");
  }

  for (std::size_t k = std::max<std::size_t>(2, a.first_index());; ++k) {
    const auto hi = static_cast<std::size_t>(std::floor(c * static_cast<double>(k))) + 2 * k;
    if (hi > m) break;
    const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(k) / (2.0 * c))));
    // Summed directly: prefix differences cancel to zero on fast-decaying tails.
    double window = 0.0;
    for (std::size_t l = std::max(lo, a.first_index()); l <= hi; ++l) window += std::abs(a[l]);
    const double lhs = static_cast<double>(k) * std::abs(a[k]);
    rep.k_max = k;
    if (window > 0.0) {
      if (lhs / window > rep.chain_constant) {
        rep.chain_constant = lhs / window;
        rep.chain_witness_k = k;
      }
    } else if (lhs > 0.0) {
      rep.chain_constant = std::numeric_limits<double>::infinity();
      rep.chain_witness_k = k;
    }
  }
  for (std::size_t k = std::max(a.first_index(), (m + 1) / 2); k <= m; ++k) {
    rep.tail_max = std::max(rep.tail_max, static_cast<double>(k) * std::abs(a[k]));
  }
  rep.holds = std::isfinite(rep.chain_constant);
  return rep;
}

}  // namespace summa

#pragma once

// JSON and CSV forms of the reports. Infinite doubles travel as JSON null.

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "summa/bounds_lab.hpp"
#include "summa/detail/text.hpp"
#include "summa/sequence_classes.hpp"
#include "summa/summability.hpp"

namespace summa {

using nlohmann::json;

namespace detail {

inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? json(nullptr) : json("-inf");
  return x;
}

inline double number_from(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (j.is_string() && j.get<std::string>() == "-inf") return -std::numeric_limits<double>::infinity();
  return j.get<double>();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline void to_json(json& j, const BoundEntry& e) {
  j = json{{"n", e.n},
           {"lhs", detail::number(e.lhs)},
           {"rhs", detail::number(e.rhs)},
           {"ratio", detail::number(e.ratio)},
           {"degenerate", e.degenerate}};
}

inline void from_json(const json& j, BoundEntry& e) {
  e.n = j.at("n").get<std::size_t>();
  e.lhs = detail::number_from(j.at("lhs"));
  e.rhs = detail::number_from(j.at("rhs"));
  e.ratio = detail::number_from(j.at("ratio"));
  e.degenerate = j.at("degenerate").get<bool>();
}

inline void to_json(json& j, const BoundCheckReport& r) {
  j = json{{"inequality_id", to_string(r.inequality_id)},
           {"matrix", r.matrix},
           {"function", r.function},
           {"phi", r.phi},
           {"p", r.p},
           {"c", r.c},
           {"c_bound", r.c_bound},
           {"grid_size", r.grid_size},
           {"fixture", r.fixture},
           {"per_n", r.per_n},
           {"ratio_max", detail::number(r.ratio_max)},
           {"ratio_median", detail::number(r.ratio_median)},
           {"ratio_trend", detail::number(r.ratio_trend)},
           {"bounded", r.bounded},
           {"forced", r.forced},
           {"regrouping_excess", r.regrouping_excess ? detail::number(*r.regrouping_excess) : json("absent")},
           {"unconverged_e", r.unconverged_e},
           {"notes", r.notes},
           {"error", r.error}};
}

inline void from_json(const json& j, BoundCheckReport& r) {
  r.inequality_id = inequality_from_string(j.at("inequality_id").get<std::string>());
  r.matrix = j.at("matrix").get<std::string>();
  r.function = j.at("function").get<std::string>();
  r.phi = j.at("phi").get<std::string>();
  r.p = j.at("p").get<double>();
  r.c = j.at("c").get<double>();
  r.c_bound = j.at("c_bound").get<double>();
  r.grid_size = j.at("grid_size").get<std::size_t>();
  r.fixture = j.at("fixture").get<std::string>();
  r.per_n = j.at("per_n").get<std::vector<BoundEntry>>();
  r.ratio_max = detail::number_from(j.at("ratio_max"));
  r.ratio_median = detail::number_from(j.at("ratio_median"));
  r.ratio_trend = detail::number_from(j.at("ratio_trend"));
  r.bounded = j.at("bounded").get<bool>();
  r.forced = j.at("forced").get<bool>();
  const auto& g = j.at("regrouping_excess");
  if (g.is_string() && g.get<std::string>() == "absent") {
    r.regrouping_excess.reset();
  } else {
    r.regrouping_excess = detail::number_from(g);
  }
  r.unconverged_e = j.at("unconverged_e").get<int>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.error = j.at("error").get<std::string>();
}

inline void to_json(json& j, const ClassMembershipReport& r) {
  j = json{{"class_id", to_string(r.class_id)},
           {"K_estimate", detail::number(r.K_estimate)},
           {"witness_m", r.witness_m},
           {"verdict", to_string(r.verdict)},
           {"horizon", r.horizon},
           {"tail_model", to_string(r.tail_model)},
           {"m_max", r.m_max},
           {"degenerate_count", r.degenerate_count},
           {"window_truncated", r.window_truncated},
           {"tail_truncated", r.tail_truncated},
           {"partial_sum_increment", r.partial_sum_increment},
           {"note", r.note}};
}

inline void from_json(const json& j, ClassMembershipReport& r) {
  r.class_id = sequence_class_from_string(j.at("class_id").get<std::string>());
  r.K_estimate = detail::number_from(j.at("K_estimate"));
  r.witness_m = j.at("witness_m").get<std::size_t>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.horizon = j.at("horizon").get<std::size_t>();
  r.tail_model = tail_model_from_string(j.at("tail_model").get<std::string>());
  r.m_max = j.at("m_max").get<std::size_t>();
  r.degenerate_count = j.at("degenerate_count").get<std::size_t>();
  r.window_truncated = j.at("window_truncated").get<bool>();
  r.tail_truncated = j.at("tail_truncated").get<bool>();
  r.partial_sum_increment = j.at("partial_sum_increment").get<double>();
  r.note = j.at("note").get<std::string>();
}

inline void to_json(json& j, const Remark1Report& r) {
  j = json{{"gm5", r.gm5},
           {"chain_constant", detail::number(r.chain_constant)},
           {"chain_witness_k", r.chain_witness_k},
           {"k_max", r.k_max},
           {"tail_max", r.tail_max},
           {"partial_sum_increment", r.partial_sum_increment},
           {"holds", r.holds}};
}

inline void from_json(const json& j, Remark1Report& r) {
  r.gm5 = j.at("gm5").get<ClassMembershipReport>();
  r.chain_constant = detail::number_from(j.at("chain_constant"));
  r.chain_witness_k = j.at("chain_witness_k").get<std::size_t>();
  r.k_max = j.at("k_max").get<std::size_t>();
  r.tail_max = j.at("tail_max").get<double>();
  r.partial_sum_increment = j.at("partial_sum_increment").get<double>();
  r.holds = j.at("holds").get<bool>();
}

inline void to_json(json& j, const MatrixRowReport& r) {
  j = json{{"n", r.n},
           {"support", r.support},
           {"row_sum_deviation", r.row_sum_deviation},
           {"a_n0", r.a_n0},
           {"gm5", r.gm5},
           {"ms", r.ms},
           {"nmcs", r.nmcs}};
}

inline void from_json(const json& j, MatrixRowReport& r) {
  r.n = j.at("n").get<std::size_t>();
  r.support = j.at("support").get<std::size_t>();
  r.row_sum_deviation = j.at("row_sum_deviation").get<double>();
  r.a_n0 = j.at("a_n0").get<double>();
  r.gm5 = j.at("gm5").get<ClassMembershipReport>();
  r.ms = j.at("ms").get<bool>();
  r.nmcs = j.at("nmcs").get<bool>();
}

inline void to_json(json& j, const MatrixValidationReport& r) {
  j = json{{"matrix", r.matrix},
           {"c", r.c},
           {"rows", r.rows},
           {"max_row_sum_deviation", r.max_row_sum_deviation},
           {"row_sums_ok", r.row_sums_ok},
           {"a_n0_decreasing", r.a_n0_decreasing},
           {"all_ms", r.all_ms},
           {"all_nmcs", r.all_nmcs},
           {"all_gm5", r.all_gm5},
           {"gm5_K_max", detail::number(r.gm5_K_max)},
           {"gm5_growth", detail::number(r.gm5_growth)},
           {"gm5_uniform", r.gm5_uniform}};
}

inline void from_json(const json& j, MatrixValidationReport& r) {
  r.matrix = j.at("matrix").get<std::string>();
  r.c = j.at("c").get<double>();
  r.rows = j.at("rows").get<std::vector<MatrixRowReport>>();
  r.max_row_sum_deviation = j.at("max_row_sum_deviation").get<double>();
  r.row_sums_ok = j.at("row_sums_ok").get<bool>();
  r.a_n0_decreasing = j.at("a_n0_decreasing").get<bool>();
  r.all_ms = j.at("all_ms").get<bool>();
  r.all_nmcs = j.at("all_nmcs").get<bool>();
  r.all_gm5 = j.at("all_gm5").get<bool>();
  r.gm5_K_max = detail::number_from(j.at("gm5_K_max"));
  r.gm5_growth = detail::number_from(j.at("gm5_growth"));
  r.gm5_uniform = j.at("gm5_uniform").get<bool>();
}

inline void to_json(json& j, const CounterexampleEntry& e) {
  j = json{{"n", e.n},
           {"grid_size", e.grid_size},
           {"deviation", e.deviation},
           {"best", e.best},
           {"ratio", detail::number(e.ratio)},
           {"lebesgue", e.lebesgue},
           {"witness_sup", e.witness_sup},
           {"upper_bound_used", e.upper_bound_used}};
}

inline void from_json(const json& j, CounterexampleEntry& e) {
  e.n = j.at("n").get<std::size_t>();
  e.grid_size = j.at("grid_size").get<std::size_t>();
  e.deviation = j.at("deviation").get<double>();
  e.best = j.at("best").get<double>();
  e.ratio = detail::number_from(j.at("ratio"));
  e.lebesgue = j.at("lebesgue").get<double>();
  e.witness_sup = j.at("witness_sup").get<double>();
  e.upper_bound_used = j.at("upper_bound_used").get<bool>();
}

inline void to_json(json& j, const CounterexampleReport& r) {
  j = json{{"entries", r.entries},
           {"increasing", r.increasing},
           {"slope", r.slope},
           {"intercept", r.intercept},
           {"lebesgue_correlation", r.lebesgue_correlation},
           {"classical_bound_ok", r.classical_bound_ok},
           {"notes", r.notes}};
}

inline void from_json(const json& j, CounterexampleReport& r) {
  r.entries = j.at("entries").get<std::vector<CounterexampleEntry>>();
  r.increasing = j.at("increasing").get<bool>();
  r.slope = j.at("slope").get<double>();
  r.intercept = j.at("intercept").get<double>();
  r.lebesgue_correlation = j.at("lebesgue_correlation").get<double>();
  r.classical_bound_ok = j.at("classical_bound_ok").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
}

inline constexpr const char* kBoundCsvColumns = "inequality_id,matrix,function,p,c,n,lhs,rhs,ratio,degenerate_flag";

/// One row per (report, n). `header_comment` goes on a leading '#' line and is
/// the only place for run-dependent text such as timestamps.
inline void write_bound_csv(std::ostream& out, const std::vector<BoundCheckReport>& reports,
                            const std::string& header_comment = {}) {
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << kBoundCsvColumns << "\n";
  for (const auto& r : reports) {
    const std::string prefix = detail::csv_field(to_string(r.inequality_id)) + "," +
                               detail::csv_field(r.phi.empty() || r.inequality_id == InequalityId::totik
                                                     ? r.matrix
                                                     : r.matrix + ";phi=" + r.phi) +
                               "," + detail::csv_field(r.inequality_id == InequalityId::totik
                                                           ? r.function + ";phi=" + r.phi
                                                           : r.function) +
                               "," + detail::format_double(r.p) + "," + detail::format_double(r.c) + ",";
    for (const auto& e : r.per_n) {
      out << prefix << e.n << "," << detail::format_double(e.lhs) << "," << detail::format_double(e.rhs) << ","
          << detail::format_double(e.ratio) << "," << (e.degenerate ? 1 : 0) << "\n";
    }
  }
}

inline std::string bound_csv(const std::vector<BoundCheckReport>& reports, const std::string& header_comment = {}) {
  std::ostringstream out;
  write_bound_csv(out, reports, header_comment);
  return out.str();
}

inline void write_counterexample_csv(std::ostream& out, const CounterexampleReport& r,
                                     const std::string& header_comment = {}) {
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << "n,grid_size,deviation,best,ratio,lebesgue,witness_sup,upper_bound_used\n";
  for (const auto& e : r.entries) {
    out << e.n << "," << e.grid_size << "," << detail::format_double(e.deviation) << ","
        << detail::format_double(e.best) << "," << detail::format_double(e.ratio) << ","
        << detail::format_double(e.lebesgue) << "," << detail::format_double(e.witness_sup) << ","
        << (e.upper_bound_used ? 1 : 0) << "\n";
  }
}

}  // namespace summa

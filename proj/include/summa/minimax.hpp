#pragma once

// Best uniform approximation E_k(f) on the working grid by trigonometric
// polynomials of degree <= k.
//
// Trig polynomials of degree k form a Haar space of dimension 2k+1 on any set
// of grid nodes, so the discrete best approximation is unique and
// characterized by 2k+2 alternation points. The solver is a discrete exchange
// iteration: solve the levelled system on a reference of 2k+2 nodes, then
// move every reference node to the error peak of its sign run and insert the
// global peak. If that step fails to raise the levelled error, a single-point
// exchange is taken instead, which raises it strictly. Every iterate brackets the answer:
// |h| <= E_k <= max|f - t|.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "summa/error.hpp"
#include "summa/fourier_engine.hpp"
#include "summa/periodic_function.hpp"

namespace summa {

struct MinimaxOptions {
  int max_iterations = 200;
  /// Stop once max|e| - |h| <= tolerance * max|e|.
  double tolerance = 1e-9;
  /// A stalled exchange (reference numerically singular) is accepted, flagged
  /// unconverged, when its relative bracket is at most this wide.
  double stall_gap = 1e-4;
};

struct BestApproxResult {
  int k = 0;
  /// max_j |f(x_j) - witness(x_j)|: the discrete E_k up to the solver gap.
  double value = 0.0;
  TrigPolynomial witness;
  int equioscillation_count = 0;
  /// Levelled error of the final reference; a lower bound for the discrete E_k.
  double lower_bound = 0.0;
  int iterations = 0;
  /// False when the exchange stalled on a near-singular reference; the bracket
  /// [lower_bound, value] is still certified.
  bool converged = true;
  /// ω_f(2π/N): bracket between the grid value and the continuum E_k.
  double grid_gap_bound = 0.0;
};

namespace detail {

class ExchangeSolver {
 public:
  ExchangeSolver(const GridFunction& g, int k)
      : f_(g.values), grid_(g.grid), k_(k), table_(g.size()), dim_(2 * static_cast<std::size_t>(k) + 2) {}

  struct Level {
    TrigPolynomial poly;
    double h = 0.0;
  };

  // Solve t(x_i) + (-1)^i h = f(x_i) on the reference.
  Level solve(const std::vector<std::size_t>& ref) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd system(d, d);
    Eigen::VectorXd rhs(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const std::size_t j = ref[static_cast<std::size_t>(i)];
      system(i, 0) = 1.0;
      for (int m = 1; m <= k_; ++m) {
        system(i, m) = cos_harmonic(table_, static_cast<std::uint64_t>(m), j);
        system(i, k_ + m) = sin_harmonic(table_, static_cast<std::uint64_t>(m), j);
      }
      system(i, d - 1) = (i % 2 == 0) ? 1.0 : -1.0;
      rhs(i) = f_[j];
    }
    const Eigen::VectorXd z = system.partialPivLu().solve(rhs);
    Level level;
    level.poly.a.assign(static_cast<std::size_t>(k_) + 1, 0.0);
    level.poly.b.assign(static_cast<std::size_t>(k_) + 1, 0.0);
    level.poly.a[0] = 2.0 * z(0);
    for (int m = 1; m <= k_; ++m) {
      level.poly.a[static_cast<std::size_t>(m)] = z(m);
      level.poly.b[static_cast<std::size_t>(m)] = z(k_ + m);
    }
    level.h = z(d - 1);
    if (!z.allFinite()) throw SolverError("singular reference system", 0.0, std::numeric_limits<double>::infinity());
    return level;
  }

  std::vector<double> error(const TrigPolynomial& t) const {
    auto e = t.sample(grid_);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = f_[j] - e[j];
    return e;
  }

  // One extremum per maximal run of constant error sign, in circular order.
  static std::vector<std::size_t> run_extrema(const std::vector<double>& e) {
    const std::size_t n = e.size();
    auto sign = [&](std::size_t j) { return e[j] >= 0.0; };
    std::size_t start = 0;
    while (start < n && sign(start) == sign(0)) ++start;
    if (start == n) {
      // single run
      return {static_cast<std::size_t>(std::max_element(e.begin(), e.end(), [](double x, double y) {
                                         return std::abs(x) < std::abs(y);
                                       }) -
                                       e.begin())};
    }
    std::vector<std::size_t> out;
    std::size_t best = start;
    for (std::size_t step = 1; step <= n; ++step) {
      const std::size_t j = (start + step) % n;
      if (step == n || sign(j) != sign(best)) {
        out.push_back(best);
        best = j;
      } else if (std::abs(e[j]) > std::abs(e[best])) {
        best = j;
      }
    }
    return out;
  }

  // Drop adjacent pairs (smallest first) until `target` alternating points remain.
  static void thin(std::vector<std::size_t>& pts, const std::vector<double>& e, std::size_t target) {
    while (pts.size() > target) {
      const std::size_t r = pts.size();
      std::size_t weakest = 0;
      for (std::size_t i = 1; i < r; ++i) {
        if (std::abs(e[pts[i]]) < std::abs(e[pts[weakest]])) weakest = i;
      }
      const std::size_t left = (weakest + r - 1) % r;
      const std::size_t right = (weakest + 1) % r;
      const std::size_t partner = std::abs(e[pts[left]]) <= std::abs(e[pts[right]]) ? left : right;
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(std::max(weakest, partner)));
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(std::min(weakest, partner)));
    }
  }

  // Alternating peaks of all sign runs, thinned to the reference size. Keeps the
  // global peak, since pairs are removed from the weakest end.
  std::vector<std::size_t> global_exchange(const std::vector<double>& e) const {
    auto pts = run_extrema(e);
    if (pts.size() < dim_) return {};
    thin(pts, e, dim_);
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  // Move each reference node to the error peak of its own sign run, then insert
  // the global peak. Runs of consecutive reference nodes are distinct because the
  // levelled error alternates on the reference.
  std::vector<std::size_t> local_exchange(const std::vector<std::size_t>& ref, const std::vector<double>& e,
                                          std::size_t peak) const {
    const std::size_t n = e.size();
    auto same = [&](std::size_t i, std::size_t j) { return (e[i] >= 0.0) == (e[j] >= 0.0); };
    std::vector<std::size_t> out(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      std::size_t best = ref[i];
      for (std::size_t j = (ref[i] + 1) % n; j != ref[i] && same(j, ref[i]); j = (j + 1) % n) {
        if (std::abs(e[j]) > std::abs(e[best])) best = j;
      }
      for (std::size_t j = (ref[i] + n - 1) % n; j != ref[i] && same(j, ref[i]); j = (j + n - 1) % n) {
        if (std::abs(e[j]) > std::abs(e[best])) best = j;
      }
      out[i] = best;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() != ref.size()) return {};
    if (!std::binary_search(out.begin(), out.end(), peak)) out = single_exchange(std::move(out), e, peak);
    return out;
  }

  static std::vector<std::size_t> single_exchange(std::vector<std::size_t> ref, const std::vector<double>& e,
                                                  std::size_t peak) {
    const std::size_t r = ref.size();
    const auto pos = static_cast<std::size_t>(std::upper_bound(ref.begin(), ref.end(), peak) - ref.begin());
    const std::size_t left = (pos + r - 1) % r;
    const std::size_t right = pos % r;
    const bool same_as_left = (e[ref[left]] >= 0.0) == (e[peak] >= 0.0);
    ref[same_as_left ? left : right] = peak;
    std::sort(ref.begin(), ref.end());
    return ref;
  }

  std::vector<std::size_t> initial_reference() const {
    std::vector<std::size_t> ref(dim_);
    const std::size_t n = f_.size();
    for (std::size_t i = 0; i < dim_; ++i) ref[i] = (i * n) / dim_;
    return ref;
  }

  std::size_t dim() const { return dim_; }

 private:
  const std::vector<double>& f_;
  Grid grid_;
  int k_;
  TrigTable table_;
  std::size_t dim_;
};

inline std::size_t argmax_abs(const std::vector<double>& e) {
  return static_cast<std::size_t>(
      std::max_element(e.begin(), e.end(), [](double x, double y) { return std::abs(x) < std::abs(y); }) - e.begin());
}

}  // namespace detail

/// Discrete E_k(f) and its optimal polynomial on the grid of `g`.
/// Throws SolverError (carrying the final bracket) when the iteration cap is hit.
inline BestApproxResult best_approximation(const GridFunction& g, int k, const MinimaxOptions& options = {}) {
  const std::size_t n = g.size();
  if (k < 0) throw InputError("best_approximation: k must be >= 0");
  if (static_cast<std::size_t>(k) >= n / 4) {
    throw InputError("best_approximation: k = " + std::to_string(k) + " must be < grid size / 4 = " +
                     std::to_string(n / 4));
  }

  detail::ExchangeSolver solver(g, k);
  const double scale = std::max(1.0, sup_norm(g));
  const double floor = 1e-13 * scale;
  // Reachable accuracy of the levelled solve is relative to ||f||, not to E_k.
  const double gap_floor = 1e-12 * scale;

  auto ref = solver.initial_reference();
  auto level = solver.solve(ref);
  auto err = solver.error(level.poly);

  BestApproxResult result;
  result.k = k;
  int iter = 0;
  for (;; ++iter) {
    const std::size_t peak = detail::argmax_abs(err);
    const double emax = std::abs(err[peak]);
    const double h = std::abs(level.h);
    if (emax <= floor || emax - h <= std::max(options.tolerance * emax, gap_floor)) break;
    if (iter >= options.max_iterations) {
      throw SolverError("best_approximation: no convergence for k = " + std::to_string(k) + " after " +
                            std::to_string(iter) + " exchanges",
                        h, emax);
    }

    bool advanced = false;
    {
      // Both multi-point candidates raise |h| in exact arithmetic; keep the larger
      // one, skipping references whose interpolant explodes between nodes.
      const double blowup = 1e6 * scale;
      double best_h = h * (1.0 + 1e-13);
      for (auto candidate : {solver.local_exchange(ref, err, peak), solver.global_exchange(err)}) {
        if (candidate.empty() || candidate == ref) continue;
        auto next = solver.solve(candidate);
        if (!(std::abs(next.h) > best_h)) continue;
        auto next_err = solver.error(next.poly);
        if (std::abs(next_err[detail::argmax_abs(next_err)]) > blowup) continue;
        best_h = std::abs(next.h);
        ref = std::move(candidate);
        level = std::move(next);
        err = std::move(next_err);
        advanced = true;
      }
    }
    if (advanced) continue;
    {
      auto candidate = detail::ExchangeSolver::single_exchange(ref, err, peak);
      if (candidate == ref) break;
      auto next = solver.solve(candidate);
      if (!(std::abs(next.h) > h)) {
        if (emax - h <= options.stall_gap * emax) {
          result.converged = false;
          break;
        }
        throw SolverError("best_approximation: exchange stalled for k = " + std::to_string(k), h, emax);
      }
      ref = std::move(candidate);
      level = std::move(next);
    }
    err = solver.error(level.poly);
  }

  const std::size_t peak = detail::argmax_abs(err);
  result.value = std::abs(err[peak]);
  result.lower_bound = std::min(std::abs(level.h), result.value);
  result.witness = std::move(level.poly);
  result.iterations = iter;

  const double level_cut = result.value * (1.0 - 1e-6);
  int count = 0;
  if (result.value > floor) {
    for (std::size_t j : detail::ExchangeSolver::run_extrema(err)) {
      if (std::abs(err[j]) >= level_cut) ++count;
    }
  }
  result.equioscillation_count = count;
  result.grid_gap_bound = modulus_of_continuity(g, g.grid.step());
  return result;
}

/// E_k(f) / ω_f(π/(k+1)), bounded by an absolute constant (Jackson).
inline double jackson_ratio(const GridFunction& g, int k, const MinimaxOptions& options = {}) {
  if (k < 0) throw InputError("jackson_ratio: k must be >= 0");
  const double omega = modulus_of_continuity(g, std::numbers::pi / (k + 1));
  const double ek = best_approximation(g, k, options).value;
  const double floor = 1e-12 * std::max(1.0, sup_norm(g));
  if (omega <= floor) {
    if (ek <= floor) return 0.0;
    throw PreconditionError("jackson_ratio: modulus vanishes while E_k(f) > 0");
  }
  return ek / omega;
}

}  // namespace summa

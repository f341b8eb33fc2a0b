// summa: command-line front end for the sequence-class, summability and bound checks.
//
// Exit codes: 0 success, 1 verdict failure, 2 usage or input error, 3 solver error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "summa/bounds_lab.hpp"
#include "summa/report_io.hpp"

namespace {

using namespace summa;

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct Output {
  std::string dir = "./reports";
  bool stdout_only = false;
  std::vector<std::string> written;

  void emit(const std::string& name, const std::string& body) {
    if (stdout_only) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << '\n';
      return;
    }
    std::filesystem::create_directories(dir);
    const auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << body;
    written.push_back(path);
  }

  void done() const {
    for (const auto& p : written) std::cout << "wrote " << p << "\n";
  }
};

std::size_t default_grid_size() {
  if (const char* env = std::getenv("SUMMA_GRID_SIZE")) {
    const auto n = detail::parse_int(env);
    if (n < 16) throw InputError("SUMMA_GRID_SIZE must be a power of two >= 16");
    return Grid(static_cast<std::size_t>(n)).size();
  }
  return kDefaultGridSize;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string settings_line(const json& settings) {
  std::string out;
  for (const auto& [k, v] : settings.items()) {
    out += (out.empty() ? "" : " ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

json envelope(const std::string& command, const json& settings, const json& report) {
  return json{{"command", command}, {"settings", settings}, {"report", report}};
}

SummabilityMatrix load_matrix(const std::string& spec, const std::string& file, bool normalize) {
  if (!file.empty()) return SummabilityMatrix::from_file(file, normalize);
  return SummabilityMatrix::parse(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summa: numerical checks for strong summability of Fourier series"};
  app.require_subcommand(1);
  Output out;
  std::size_t grid_size = 0;
  app.add_option("--out", out.dir, "Directory for report files")->capture_default_str();
  app.add_flag("--stdout-only", out.stdout_only, "Print reports to stdout instead of writing files");
  app.add_option("--grid-size", grid_size, "Grid size (power of two >= 16); default SUMMA_GRID_SIZE or 4096");

  // classify
  auto* classify = app.add_subcommand("classify", "Check a generated sequence against a class");
  std::string family = "power";
  std::map<std::string, double> family_params;
  std::string class_name = "gm5";
  VariationParams vparams;
  double alpha = 1.0, nmcs_tol = 1e-3;
  std::size_t horizon = 4096;
  bool nmcs_chain = false;
  classify->add_option("--family", family, "power, geometric, cesaro_row, riesz_row, spiked, lacunary_gaps, identity_row")
      ->capture_default_str();
  for (const char* key : {"s", "q", "n", "r", "height"}) {
    classify->add_option_function<double>(std::string("--") + key, [&family_params, key](double v) { family_params[key] = v; },
                                          std::string("Family parameter ") + key);
  }
  classify->add_option("--class", class_name, "ms, cqms, rbvs, mrbvs, gm, gm1..gm5, nmcs")->capture_default_str();
  classify->add_option("--c", vparams.c, "c > 1 for gm3, gm4, gm5")->capture_default_str();
  classify->add_option("--big-n", vparams.big_n, "N for gm2 and gm3")->capture_default_str();
  classify->add_option("--m-max", vparams.m_max, "Largest tested m (0: horizon / 2c)");
  classify->add_option("--alpha", alpha, "Exponent for cqms")->capture_default_str();
  classify->add_option("--nmcs-tol", nmcs_tol, "Tolerance of the nmcs surrogate")->capture_default_str();
  classify->add_option("--horizon", horizon, "Last stored index M")->capture_default_str();
  classify->add_flag("--nmcs-chain", nmcs_chain, "Also run the gm5 + summable => NMCS chain check");

  // matrix build / validate
  auto* matrix = app.add_subcommand("matrix", "Build or validate a summability matrix");
  matrix->require_subcommand(1);
  std::string matrix_spec = "cesaro", matrix_file;
  bool normalize = false;
  std::size_t rows = 8, n_max = 64;
  double matrix_c = 2.0;
  auto* mbuild = matrix->add_subcommand("build", "Print rows of a matrix");
  auto* mvalidate = matrix->add_subcommand("validate", "Row sums, a_{n,0} trend and per-row class checks");
  for (auto* sub : {mbuild, mvalidate}) {
    sub->add_option("--matrix", matrix_spec, "cesaro, riesz[:s=..], norlund[:s=..], identity, gm5_synthetic[:w=..]")
        ->capture_default_str();
    sub->add_option("--matrix-file", matrix_file, "Custom rows 'n: a0 a1 ...'");
    sub->add_flag("--normalize", normalize, "Divide custom rows by their sums");
  }
  mbuild->add_option("--rows", rows, "Rows 0..rows-1 to print")->capture_default_str();
  mvalidate->add_option("--n-max", n_max, "Last validated row")->capture_default_str();
  mvalidate->add_option("--c", matrix_c, "c of the gm5 row check")->capture_default_str();

  // approx
  auto* approx = app.add_subcommand("approx", "E_k, modulus of continuity and Lebesgue constant tables");
  std::string function = "triangle";
  int k_max = 32;
  approx->add_option("--function", function, "Function spec, e.g. triangle, lip:alpha=0.5, cos:m=4")->capture_default_str();
  approx->add_option("--k-max", k_max, "Largest degree k")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Measure both sides of an estimate along an n ladder");
  std::string inequality = "thm3-eq6", n_text = "8..256", phi_text = "power:1", lambda_text = "half";
  double p = 1.0, c = 2.0, big_o = 4.0;
  std::optional<double> c_bound;
  bool force = false;
  verify->add_option("--inequality", inequality,
                     "thm1, thm2, thm3-eq6, remark2, remark3-eq7, remark5-Ek, remark5-omega, lemma, totik")
      ->capture_default_str();
  verify->add_option("--matrix", matrix_spec, "Matrix spec")->capture_default_str();
  verify->add_option("--matrix-file", matrix_file, "Custom rows 'n: a0 a1 ...'");
  verify->add_flag("--normalize", normalize, "Divide custom rows by their sums");
  verify->add_option("--function", function, "Function spec")->capture_default_str();
  verify->add_option("--p", p, "Exponent p > 0")->capture_default_str();
  verify->add_option("--c", c, "c > 1 of the gm5 hypothesis")->capture_default_str();
  verify->add_option("--c-bound", c_bound, "c in the index [k/2^[c]] (default: --c)");
  verify->add_option("--n", n_text, "n ladder: 8..256 (doubling) or 8,16,32")->capture_default_str();
  verify->add_option("--phi", phi_text, "power:p, log1p or table:t/v,...; ';A=..' declares A")->capture_default_str();
  verify->add_option("--lambda", lambda_text, "Lemma window rule: half, fraction:θ, const:L")->capture_default_str();
  verify->add_option("--big-o", big_o, "Constant C in n <= C lambda_n")->capture_default_str();
  verify->add_flag("--force", force, "Run even when hypotheses fail; the report is annotated");

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "Dirichlet-sign witness: ||S_n f - f|| / E_n(f) along n");
  std::string counter_n = "8..256";
  counter->add_option("--n", counter_n, "n ladder")->capture_default_str();

  // suite
  auto* suite = app.add_subcommand("suite", "Run an experiment config");
  std::string config = "configs/default.ini";
  suite->add_option("--config", config, "Experiment config file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (grid_size == 0) grid_size = default_grid_size();
    static_cast<void>(Grid(grid_size));  // validates the size
    int exit_code = 0;

    if (*classify) {
      auto fspec = SequenceFamilySpec::parse(family);
      for (const auto& [k, v] : family_params) {
        if (!fspec.params.contains(k)) throw InputError("family " + family + " has no parameter --" + k);
        fspec.params[k] = v;
      }
      const auto seq = generate_sequence(fspec, horizon);
      const auto id = sequence_class_from_string(class_name);
      const auto report = classify_sequence(seq, id, vparams, alpha, nmcs_tol);
      json settings{{"family", fspec.to_string()}, {"class", class_name}, {"c", vparams.c}, {"big_n", vparams.big_n},
                    {"alpha", alpha}, {"horizon", horizon}, {"nmcs_tol", nmcs_tol}};
      json body = envelope("classify", settings, report);
      if (nmcs_chain) body["nmcs_chain"] = verify_remark1(seq, vparams.c, nmcs_tol);
      out.emit("classify.json", body.dump(2) + "\n");
      if (!out.stdout_only) {
        std::cout << to_string(id) << ": " << to_string(report.verdict)
                  << " K=" << detail::format_double(report.K_estimate) << "\n";
      }
      if (!report.member()) exit_code = kExitVerdict;
    } else if (*matrix) {
      const auto m = load_matrix(matrix_spec, matrix_file, normalize);
      if (*mbuild) {
        json rows_json = json::array();
        for (std::size_t n = 0; n < rows; ++n) {
          if (m.has_row(n)) rows_json.push_back(json{{"n", n}, {"row", m.row(n)}});
        }
        out.emit("matrix-build.json", envelope("matrix build", {{"matrix", m.label()}, {"rows", rows}}, rows_json).dump(2) + "\n");
      } else {
        const auto v = validate_matrix(m, n_max, matrix_c);
        out.emit("matrix-validate.json",
                 envelope("matrix validate", {{"matrix", m.label()}, {"n_max", n_max}, {"c", matrix_c}}, v).dump(2) + "\n");
        if (!out.stdout_only) {
          std::cout << m.label() << ": row sums " << (v.row_sums_ok ? "ok" : "FAIL") << ", a_n0 decreasing "
                    << (v.a_n0_decreasing ? "yes" : "no") << ", ms " << v.all_ms << ", nmcs " << v.all_nmcs << ", gm5 "
                    << v.all_gm5 << " (K max " << detail::format_double(v.gm5_K_max) << ", uniform " << v.gm5_uniform
                    << ")\n";
        }
        if (!v.row_sums_ok) exit_code = kExitVerdict;
      }
    } else if (*approx) {
      const auto fspec = FunctionSpec::parse(function);
      FunctionLab fl(fspec, Grid(grid_size));
      if (k_max < 0 || static_cast<std::size_t>(k_max) >= grid_size / 4) {
        throw InputError("--k-max must lie in [0, grid size / 4)");
      }
      std::string csv = "k,E_k,E_k_lower,converged,equioscillation,omega_pi_over_k1,jackson_ratio,lebesgue\n";
      json table = json::array();
      for (int k = 0; k <= k_max; ++k) {
        const auto& r = fl.best_result(k);
        const double om = fl.omega(std::numbers::pi / (k + 1));
        const double jr = om > 0.0 ? r.value / om : 0.0;
        const double leb = lebesgue_constant(k);
        csv += std::to_string(k) + "," + detail::format_double(r.value) + "," + detail::format_double(r.lower_bound) +
               "," + (r.converged ? "1" : "0") + "," + std::to_string(r.equioscillation_count) + "," +
               detail::format_double(om) + "," + detail::format_double(jr) + "," + detail::format_double(leb) + "\n";
        table.push_back(json{{"k", k}, {"E_k", r.value}, {"E_k_lower", r.lower_bound}, {"converged", r.converged},
                             {"equioscillation", r.equioscillation_count}, {"omega_pi_over_k1", om},
                             {"jackson_ratio", jr}, {"lebesgue", leb}});
      }
      json settings{{"function", fspec.to_string()}, {"grid_size", grid_size}, {"k_max", k_max}};
      out.emit("approx.json", envelope("approx", settings, table).dump(2) + "\n");
      if (!out.stdout_only) out.emit("approx.csv", "# summa approx " + timestamp() + " " + settings_line(settings) + "\n" + csv);
    } else if (*verify) {
      BoundsLab lab;
      const auto id = inequality_from_string(inequality);
      const auto ns = parse_n_list(n_text);
      const auto fspec = FunctionSpec::parse(function);
      CheckOptions opts;
      opts.force = force;
      opts.c_bound = c_bound;
      opts.grid_size = grid_size;
      opts.phi = PhiSpec::parse(phi_text);
      BoundCheckReport report;
      if (id == InequalityId::lemma) {
        report = lemma_check(lab, fspec, p, LambdaRule::parse(lambda_text), ns, big_o, opts);
      } else if (id == InequalityId::totik) {
        report = totik_check(lab, fspec, opts.phi, ns, opts);
      } else {
        report = inequality_check(lab, id, load_matrix(matrix_spec, matrix_file, normalize), fspec, p, c, ns, opts);
      }
      json settings{{"inequality", inequality}, {"function", fspec.to_string()}, {"p", p}, {"c", c},
                    {"c_bound", c_bound.value_or(c)}, {"n", n_text}, {"grid_size", grid_size}};
      if (uses_matrix(id)) settings["matrix"] = report.matrix;
      if (uses_phi(id)) settings["phi"] = opts.phi.to_string();
      if (id == InequalityId::lemma) {
        settings["lambda"] = lambda_text;
        settings["big_o"] = big_o;
      }
      out.emit("verify.json", envelope("verify", settings, report).dump(2) + "\n");
      if (!out.stdout_only) {
        out.emit("verify.csv", bound_csv({report}, "summa verify " + timestamp() + " " + settings_line(settings)));
        std::cout << report.fixture << ": " << (report.bounded ? "bounded" : "NOT bounded")
                  << " (ratio max " << detail::format_double(report.ratio_max) << ", trend "
                  << detail::format_double(report.ratio_trend) << ")\n";
      }
      if (!report.bounded) exit_code = kExitVerdict;
    } else if (*counter) {
      BoundsLab lab;
      const auto report = remark4_counterexample(lab, parse_n_list(counter_n), grid_size);
      json settings{{"n", counter_n}, {"grid_size", grid_size}};
      out.emit("counterexample.json", envelope("counterexample", settings, report).dump(2) + "\n");
      if (!out.stdout_only) {
        std::ostringstream csv;
        write_counterexample_csv(csv, report, "summa counterexample " + timestamp() + " " + settings_line(settings));
        out.emit("counterexample.csv", csv.str());
        for (const auto& e : report.entries) {
          std::cout << "n=" << e.n << " ratio=" << detail::format_double(e.ratio)
                    << " L_n=" << detail::format_double(e.lebesgue) << "\n";
        }
      }
      if (!report.increasing) exit_code = kExitVerdict;
    } else if (*suite) {
      BoundsLab lab;
      const auto reports = run_experiment_suite(lab, config);
      json settings{{"config", config}};
      out.emit("suite.json", envelope("suite", settings, reports).dump(2) + "\n");
      std::size_t failed = 0, unbounded = 0;
      for (const auto& r : reports) {
        if (!r.error.empty()) ++failed;
        else if (!r.bounded) ++unbounded;
      }
      if (!out.stdout_only) {
        out.emit("suite.csv", bound_csv(reports, "summa suite " + timestamp() + " " + settings_line(settings)));
        std::cout << reports.size() << " cells, " << failed << " failed, " << unbounded << " not bounded\n";
      }
      if (failed + unbounded > 0) exit_code = kExitVerdict;
    }
    out.done();
    return exit_code;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (bracket [" << e.lower_bound << ", " << e.upper_bound << "])\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitSolver;
  }
}

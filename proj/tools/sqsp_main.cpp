#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "run_record.hpp"
#include "sqsp/chebyshev.hpp"
#include "sqsp/jacobian.hpp"
#include "sqsp/linalg.hpp"
#include "sqsp/qsp_eval.hpp"
#include "sqsp/solver.hpp"
#include "sqsp/targets.hpp"

namespace {

using sqsp_cli::RunRecord;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct TargetFlags {
  std::string target = "cos";
  double tau = 0.0;
  double mu = 0.5;
  double sigma = 0.1;
  int degree = 100;
  double scale = 0.9;
  double eps0 = 1e-14;
  std::string coef_file;
};

void add_target_flags(CLI::App* cmd, TargetFlags* t) {
  cmd->add_option("--target", t->target, "Target kind")
      ->check(CLI::IsMember({"cos", "sin", "gaussian", "file"}));
  cmd->add_option("--tau", t->tau, "Frequency for cos/sin targets (>= 0)");
  cmd->add_option("--mu", t->mu, "Gaussian center");
  cmd->add_option("--sigma", t->sigma, "Gaussian width (> 0)");
  cmd->add_option("--degree", t->degree,
                  "Gaussian truncation degree (even, >= 2)");
  cmd->add_option("--scale", t->scale, "Target max-norm alpha in (0, 1]");
  cmd->add_option("--eps0", t->eps0,
                  "Truncation accuracy for cos/sin targets");
  cmd->add_option("--coef-file", t->coef_file,
                  "Coefficient JSON (required for --target file)");
}

sqsp::TargetSpec to_spec(const TargetFlags& t) {
  sqsp::TargetSpec spec;
  if (t.target == "cos") {
    spec.kind = sqsp::TargetKind::cos_tau;
  } else if (t.target == "sin") {
    spec.kind = sqsp::TargetKind::sin_tau;
  } else if (t.target == "gaussian") {
    spec.kind = sqsp::TargetKind::gaussian;
  } else if (t.target == "file") {
    if (t.coef_file.empty()) {
      throw std::invalid_argument("--coef-file is required for --target file");
    }
    spec.kind = sqsp::TargetKind::file;
  } else {
    throw std::invalid_argument("unknown target kind: " + t.target);
  }
  spec.tau = t.tau;
  spec.mu = t.mu;
  spec.sigma = t.sigma;
  spec.degree = t.degree;
  spec.path = t.coef_file;
  spec.scale = t.scale;
  spec.trunc_eps = t.eps0;
  return spec;
}

// Comma-free echo of the target, safe inside one CSV field.
std::string target_echo(const TargetFlags& t) {
  if (t.target == "cos" || t.target == "sin") {
    return t.target + "(tau=" + fmt_short(t.tau) + ")";
  }
  if (t.target == "gaussian") {
    return "gaussian(mu=" + fmt_short(t.mu) + ";sigma=" + fmt_short(t.sigma) +
           ";degree=" + std::to_string(t.degree) + ")";
  }
  std::string path = t.coef_file;
  for (char& ch : path) {
    if (ch == ',') {
      ch = ';';
    }
  }
  return "file(" + path + ")";
}

sqsp::SolverConfig make_config(const std::string& method, double tol,
                               long max_iter, unsigned long long seed) {
  sqsp::SolverConfig cfg = sqsp::SolverConfig::for_method(
      method == "fpi" ? sqsp::SolveMethod::fpi : sqsp::SolveMethod::newton);
  cfg.residual_tol = tol;
  if (max_iter > 0) {
    cfg.max_iter = max_iter;
  }
  cfg.seed = seed;
  return cfg;
}

void write_convergence_log(const std::string& path,
                           const sqsp::SolverReport& report) {
  std::ofstream out(path);
  if (!out) {
    throw sqsp::FileFormatError("cannot open " + path + " for writing");
  }
  out << "iter,residual_l1,elapsed_ms\n";
  for (std::size_t i = 0; i < report.residual_history.size(); ++i) {
    const double ms = i < report.elapsed_ms_history.size()
                          ? report.elapsed_ms_history[i]
                          : 0.0;
    out << i << ',' << fmt(report.residual_history[i]) << ',' << fmt(ms)
        << '\n';
  }
  if (!out) {
    throw sqsp::FileFormatError("write failed for " + path);
  }
}

struct SolveArgs {
  TargetFlags target;
  std::string method = "newton";
  double tol = 1e-12;
  long max_iter = -1;
  unsigned long long seed = 7;
  std::string out_path;
  std::string log_path;
};

int run_solve(const SolveArgs& args) {
  bool norm_warn = false;
  const sqsp::ChebyshevCoeffVector c =
      sqsp::build_target(to_spec(args.target), &norm_warn);
  if (norm_warn) {
    std::cerr << "warning: coefficient max-norm exceeds 1; the solve may "
                 "legitimately fail\n";
  }
  const sqsp::SolverConfig cfg =
      make_config(args.method, args.tol, args.max_iter, args.seed);
  sqsp::SolveResult result;
  try {
    result = sqsp::solve(c, cfg);
  } catch (const sqsp::NewtonBreakdownError& err) {
    std::cerr << "error: " << err.what() << "\n";
    result = err.partial();
  }
  if (!args.out_path.empty()) {
    sqsp::save_phases(args.out_path, result.phases);
  }
  if (!args.log_path.empty()) {
    write_convergence_log(args.log_path, result.report);
  }
  std::cout << "target=" << target_echo(args.target) << " degree=" << c.degree()
            << " method=" << args.method
            << " converged=" << (result.report.converged ? 1 : 0)
            << " iterations=" << result.report.iterations
            << " residual_l1=" << fmt(result.report.final_residual_l1)
            << " wall_ms=" << fmt(result.report.wall_seconds * 1e3) << "\n";
  return result.report.converged ? 0 : 2;
}

struct VerifyArgs {
  std::string phases_path;
  TargetFlags target;
  bool target_given = false;
  int grid = 1000;
  double tol = 1e-12;
  bool cond = false;
  unsigned long long seed = 7;
};

int run_verify(const VerifyArgs& args) {
  const sqsp::ReducedPhaseFactors phi = sqsp::load_phases(args.phases_path);
  sqsp::ChebyshevCoeffVector c;
  if (!args.target.coef_file.empty() && args.target.target != "file") {
    bool ignored = false;
    c = sqsp::load_coeffs(args.target.coef_file, &ignored);
  } else if (args.target_given || !args.target.coef_file.empty()) {
    c = sqsp::build_target(to_spec(args.target));
  } else {
    std::cerr << "error: verify needs --coef-file or --target\n";
    return 1;
  }
  const double residual = sqsp::residual_l1(phi, c);
  if (args.grid < 2) {
    throw std::invalid_argument("--grid must be >= 2");
  }
  double max_err = 0.0;
  for (int k = 0; k < args.grid; ++k) {
    const double x = std::cos(M_PI * k / (args.grid - 1));
    max_err = std::max(max_err, std::abs(sqsp::evaluate_g_real(x, phi) -
                                         sqsp::evaluate_series(c, x)));
  }
  std::cout << "residual_l1=" << fmt(residual) << "\n";
  std::cout << "max_pointwise_error=" << fmt(max_err) << "\n";
  if (args.cond) {
    const double kappa =
        sqsp::condition_estimate(sqsp::jacobian_mps_real(phi), 100, args.seed);
    std::cout << "cond_estimate=" << fmt(kappa) << "\n";
  }
  return residual < args.tol ? 0 : 2;
}

struct BenchArgs {
  std::string suite;
  std::vector<double> tau_list = {100.0};
  std::vector<double> scale_list = {0.5, 0.9, 0.99, 0.999};
  std::vector<std::string> methods = {"newton"};
  double mu = 0.5;
  double sigma = 0.01;
  int degree = 100;
  double eps0 = 1e-14;
  double tol = 1e-12;
  long max_iter = -1;
  unsigned long long seed = 7;
  std::string out_path;
};

int run_bench(const BenchArgs& args) {
  if (args.scale_list.empty()) {
    std::cerr << "error: --scale-list must not be empty\n";
    return 1;
  }
  if (args.suite == "hamiltonian" && args.tau_list.empty()) {
    std::cerr << "error: --tau-list must not be empty\n";
    return 1;
  }
  if (args.methods.empty()) {
    std::cerr << "error: --method list must not be empty\n";
    return 1;
  }
  std::vector<RunRecord> rows;
  bool all_converged = true;
  const auto run_one = [&](const std::string& echo,
                           const sqsp::ChebyshevCoeffVector& c, double scale,
                           const std::string& method) {
    const sqsp::SolverConfig base =
        make_config(method, args.tol, args.max_iter, args.seed);
    sqsp::SolverConfig cfg = base;
    cfg.estimate_condition = true;
    sqsp::SolveResult result;
    try {
      result = sqsp::solve(c, cfg);
    } catch (const sqsp::NewtonBreakdownError& err) {
      std::cerr << "warning: " << err.what() << "\n";
      result = err.partial();
    }
    RunRecord rec;
    rec.target = echo;
    rec.degree = c.degree();
    rec.scale = scale;
    rec.method = method;
    rec.iterations = result.report.iterations;
    rec.residual_l1 = result.report.final_residual_l1;
    rec.wall_ms = result.report.wall_seconds * 1e3;
    if (result.report.condition_estimate) {
      rec.cond_estimate = *result.report.condition_estimate;
    }
    rows.push_back(rec);
    all_converged = all_converged && result.report.converged;
  };

  if (args.suite == "hamiltonian") {
    for (const double tau : args.tau_list) {
      for (const double scale : args.scale_list) {
        const sqsp::ChebyshevCoeffVector cos_c =
            sqsp::jacobi_anger_cos(tau, args.eps0, scale);
        const sqsp::ChebyshevCoeffVector sin_c =
            sqsp::jacobi_anger_sin(tau, args.eps0, scale);
        for (const std::string& method : args.methods) {
          run_one("cos(tau=" + fmt_short(tau) + ")", cos_c, scale, method);
          run_one("sin(tau=" + fmt_short(tau) + ")", sin_c, scale, method);
        }
      }
    }
  } else {
    for (const double scale : args.scale_list) {
      const sqsp::ChebyshevCoeffVector c =
          sqsp::gaussian_coeffs(args.mu, args.sigma, args.degree, scale);
      const std::string echo = "gaussian(mu=" + fmt_short(args.mu) +
                               ";sigma=" + fmt_short(args.sigma) +
                               ";degree=" + std::to_string(args.degree) + ")";
      for (const std::string& method : args.methods) {
        run_one(echo, c, scale, method);
      }
    }
  }

  std::string csv = sqsp_cli::run_record_csv_header() + "\n";
  for (const RunRecord& rec : rows) {
    csv += sqsp_cli::to_csv_row(rec) + "\n";
  }
  std::cout << csv;
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) {
      throw sqsp::FileFormatError("cannot open " + args.out_path +
                                  " for writing");
    }
    out << csv;
  }
  return all_converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric quantum-signal-processing phase-factor solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve F(Phi) = c for phase factors");
  add_target_flags(solve_cmd, &solve_args.target);
  solve_cmd->add_option("--method", solve_args.method, "newton or fpi")
      ->check(CLI::IsMember({"newton", "fpi"}));
  solve_cmd->add_option("--tol", solve_args.tol, "L1 residual tolerance");
  solve_cmd->add_option("--max-iter", solve_args.max_iter,
                        "Iteration budget (default 100 newton / 1e5 fpi)");
  solve_cmd->add_option("--seed", solve_args.seed, "RNG seed");
  solve_cmd->add_option("--out", solve_args.out_path, "Phase JSON output path");
  solve_cmd->add_option("--log", solve_args.log_path,
                        "Convergence CSV output path");

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check phases against a target");
  verify_cmd
      ->add_option("--phases", verify_args.phases_path, "Phase JSON to verify")
      ->required();
  CLI::Option* verify_target_opt = nullptr;
  {
    TargetFlags* t = &verify_args.target;
    verify_target_opt =
        verify_cmd->add_option("--target", t->target, "Target kind")
            ->check(CLI::IsMember({"cos", "sin", "gaussian", "file"}));
    verify_cmd->add_option("--tau", t->tau, "Frequency for cos/sin targets");
    verify_cmd->add_option("--mu", t->mu, "Gaussian center");
    verify_cmd->add_option("--sigma", t->sigma, "Gaussian width");
    verify_cmd->add_option("--degree", t->degree, "Gaussian degree");
    verify_cmd->add_option("--scale", t->scale, "Target max-norm alpha");
    verify_cmd->add_option("--eps0", t->eps0, "Trig truncation accuracy");
    verify_cmd->add_option("--coef-file", t->coef_file,
                           "Coefficient JSON to verify against");
  }
  verify_cmd->add_option("--grid", verify_args.grid,
                         "Pointwise comparison grid size");
  verify_cmd->add_option("--tol", verify_args.tol, "Residual pass threshold");
  verify_cmd->add_flag("--cond", verify_args.cond,
                       "Also print the Jacobian condition estimate");
  verify_cmd->add_option("--seed", verify_args.seed, "RNG seed");

  BenchArgs bench_args;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run a solver benchmark suite");
  bench_cmd->add_option("--suite", bench_args.suite, "hamiltonian or gaussian")
      ->required()
      ->check(CLI::IsMember({"hamiltonian", "gaussian"}));
  bench_cmd->add_option("--tau-list", bench_args.tau_list, "Frequencies")
      ->delimiter(',');
  bench_cmd->add_option("--scale-list", bench_args.scale_list, "Scales")
      ->delimiter(',');
  bench_cmd->add_option("--method", bench_args.methods, "Methods to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"newton", "fpi"}));
  bench_cmd->add_option("--mu", bench_args.mu, "Gaussian center");
  bench_cmd->add_option("--sigma", bench_args.sigma, "Gaussian width");
  bench_cmd->add_option("--degree", bench_args.degree, "Gaussian degree");
  bench_cmd->add_option("--eps0", bench_args.eps0, "Trig truncation accuracy");
  bench_cmd->add_option("--tol", bench_args.tol, "L1 residual tolerance");
  bench_cmd->add_option("--max-iter", bench_args.max_iter, "Iteration budget");
  bench_cmd->add_option("--seed", bench_args.seed, "RNG seed");
  bench_cmd->add_option("--out", bench_args.out_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_args);
    }
    if (verify_cmd->parsed()) {
      verify_args.target_given = verify_target_opt->count() > 0;
      return run_verify(verify_args);
    }
    return run_bench(bench_args);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

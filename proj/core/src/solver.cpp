#include "sqsp/solver.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "sqsp/jacobian.hpp"
#include "sqsp/linalg.hpp"

namespace sqsp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.residual_tol > 0.0)) {
    throw std::invalid_argument("solver: residual_tol must be positive");
  }
  if (cfg.max_iter < 1) {
    throw std::invalid_argument("solver: max_iter must be >= 1");
  }
}

ReducedPhaseFactors initial_iterate(const ChebyshevCoeffVector& c,
                                    const SolverConfig& cfg) {
  if (c.size() == 0) {
    throw std::invalid_argument("solver: empty coefficient vector");
  }
  if (cfg.initial_guess) {
    if (cfg.initial_guess->size() != c.size()) {
      throw std::invalid_argument("solver: initial guess length mismatch");
    }
    return {c.parity, *cfg.initial_guess};
  }
  return ReducedPhaseFactors::zeros(c.parity, c.size());
}

void finalize_extras(SolveResult& result, const SolverConfig& cfg) {
  if (cfg.estimate_condition) {
    result.report.condition_estimate =
        condition_estimate(jacobian_mps_real(result.phases), 100, cfg.seed);
  }
  if (cfg.fd_check) {
    const JacobianMatrix mps = jacobian_mps_real(result.phases);
    const JacobianMatrix fd = jacobian_fd(result.phases);
    result.report.jacobian_fd_error = (mps - fd).norm() / fd.norm();
  }
}

SolveResult run_iteration(const ChebyshevCoeffVector& c,
                          const SolverConfig& cfg, bool newton) {
  check_config(cfg);
  SolveResult result;
  result.phases = initial_iterate(c, cfg);
  SolverReport& report = result.report;
  const auto start = Clock::now();
  long updates = 0;
  for (;;) {
    const Eigen::VectorXd r =
        evaluate_F(result.phases, cfg.kernel).coeffs - c.coeffs;
    const double res = r.lpNorm<1>();
    report.final_residual_l1 = res;
    if (cfg.record_history) {
      report.residual_history.push_back(res);
      report.elapsed_ms_history.push_back(elapsed_ms(start));
    }
    if (res < cfg.residual_tol) {
      report.converged = true;
      break;
    }
    if (updates == cfg.max_iter) {
      report.converged = false;
      break;
    }
    if (newton) {
      try {
        const LuFactorization lu(jacobian_mps_real(result.phases));
        result.phases.phases -= lu.solve(r);
      } catch (const SingularMatrixError& err) {
        report.converged = false;
        report.iterations = updates;
        report.wall_seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        throw NewtonBreakdownError(
            std::string("newton_solve: singular Jacobian at iteration ") +
                std::to_string(updates) + " (" + err.what() + ")",
            std::move(result));
      }
    } else {
      result.phases.phases -= 0.5 * r;
    }
    ++updates;
  }
  report.iterations = updates;
  report.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  finalize_extras(result, cfg);
  return result;
}

}  // namespace

SolverConfig SolverConfig::for_method(SolveMethod m) {
  SolverConfig cfg;
  cfg.method = m;
  cfg.max_iter = m == SolveMethod::fpi ? 100000 : 100;
  return cfg;
}

NewtonBreakdownError::NewtonBreakdownError(const std::string& what,
                                           SolveResult partial)
    : std::runtime_error(what), partial_(std::move(partial)) {}

ChebyshevCoeffVector evaluate_F(const ReducedPhaseFactors& phi,
                                EvalKernel kernel) {
  if (phi.reduced_size() == 0) {
    throw std::invalid_argument("evaluate_F: empty phase sequence");
  }
  const SampleGrid grid(phi.degree());
  const Eigen::VectorXd samples = sample_g(phi, grid.nodes, kernel);
  return coefficients_from_samples(
      std::span<const double>(samples.data(),
                              static_cast<std::size_t>(samples.size())),
      phi.parity);
}

double residual_l1(const ReducedPhaseFactors& phi,
                   const ChebyshevCoeffVector& c) {
  if (phi.parity != c.parity || phi.reduced_size() != c.size()) {
    throw std::invalid_argument("residual_l1: parity or length mismatch");
  }
  return (evaluate_F(phi).coeffs - c.coeffs).lpNorm<1>();
}

SolveResult newton_solve(const ChebyshevCoeffVector& c,
                         const SolverConfig& cfg) {
  return run_iteration(c, cfg, /*newton=*/true);
}

SolveResult fpi_solve(const ChebyshevCoeffVector& c, const SolverConfig& cfg) {
  return run_iteration(c, cfg, /*newton=*/false);
}

SolveResult solve(const ChebyshevCoeffVector& c, const SolverConfig& cfg) {
  return cfg.method == SolveMethod::newton ? newton_solve(c, cfg)
                                           : fpi_solve(c, cfg);
}

}  // namespace sqsp

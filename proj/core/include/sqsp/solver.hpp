#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqsp/chebyshev.hpp"
#include "sqsp/qsp_eval.hpp"
#include "sqsp/types.hpp"

namespace sqsp {

enum class SolveMethod { newton, fpi };

struct SolverConfig {
  SolveMethod method = SolveMethod::newton;
  double residual_tol = 1e-12;  // L1 stopping threshold
  long max_iter = 100;
  bool record_history = true;
  bool fd_check = false;            // compare DF vs finite differences at Phi*
  bool estimate_condition = false;  // kappa estimate of DF at Phi*
  unsigned long long seed = 7;      // RNG seed for the condition estimate
  EvalKernel kernel = EvalKernel::real_so3;  // evaluation path for F
  std::optional<Eigen::VectorXd> initial_guess;  // default Phi^0 = 0

  // Per-method defaults: FPI converges linearly, so it gets a much larger
  // iteration budget (1e5) than Newton (100).
  static SolverConfig for_method(SolveMethod m);
};

struct SolverReport {
  bool converged = false;
  long iterations = 0;  // number of applied updates
  double final_residual_l1 = 0.0;
  // Residual before each update plus the final residual, so a converged run
  // with k updates records k+1 values and the last one is below the
  // tolerance exactly when converged is true.
  std::vector<double> residual_history;
  std::vector<double> elapsed_ms_history;  // cumulative wall clock per record
  double wall_seconds = 0.0;
  std::optional<double> condition_estimate;
  std::optional<double> jacobian_fd_error;  // relative Frobenius vs FD
};

struct SolveResult {
  ReducedPhaseFactors phases;
  SolverReport report;
};

// Raised when the Newton system is singular to working precision; carries the
// progress made before the breakdown.
class NewtonBreakdownError : public std::runtime_error {
 public:
  NewtonBreakdownError(const std::string& what, SolveResult partial);

  const SolveResult& partial() const { return partial_; }

 private:
  SolveResult partial_;
};

// F(Phi): g sampled on the degree-d node set, reduced to definite-parity
// Chebyshev coefficients; length d~, same parity as Phi.
ChebyshevCoeffVector evaluate_F(const ReducedPhaseFactors& phi,
                                EvalKernel kernel = EvalKernel::real_so3);

// ||F(Phi) - c||_1; parity and length must match.
double residual_l1(const ReducedPhaseFactors& phi,
                   const ChebyshevCoeffVector& c);

// Newton iteration from Phi^0 = 0 with exact MPS Jacobian and LU solves.
// Convergence means residual_l1 < residual_tol before the update budget is
// spent; running out of budget returns converged=false rather than throwing.
SolveResult newton_solve(
    const ChebyshevCoeffVector& c,
    const SolverConfig& cfg = SolverConfig::for_method(SolveMethod::newton));

// Fixed-point baseline Phi <- Phi - (F(Phi) - c)/2, same reporting contract.
SolveResult fpi_solve(
    const ChebyshevCoeffVector& c,
    const SolverConfig& cfg = SolverConfig::for_method(SolveMethod::fpi));

// Dispatches on cfg.method.
SolveResult solve(const ChebyshevCoeffVector& c, const SolverConfig& cfg);

}  // namespace sqsp

// Acceptance battery for the phase-factor solver: eight end-to-end checks,
// one [PASS]/[FAIL] line each, exit code = number of failures.

#include <quadmath.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sqsp/chebyshev.hpp"
#include "sqsp/jacobian.hpp"
#include "sqsp/linalg.hpp"
#include "sqsp/qsp_eval.hpp"
#include "sqsp/solver.hpp"
#include "sqsp/targets.hpp"
#include "sqsp/types.hpp"

using namespace sqsp;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double amp) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(rng, -amp, amp);
  return v;
}

template <typename F>
double time_median(F&& f, int repeats) {
  std::vector<double> times;
  times.reserve(repeats);
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

bool report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- 1. Newton on alpha*cos(1000 x) ---------------------------------------

bool criterion_newton_cos1000() {
  bool ok = true;
  std::string detail;
  const struct {
    double alpha;
    long budget;
  } cases[] = {{0.9, 8}, {1.0 - 1e-9, 24}};
  for (const auto& c : cases) {
    const ChebyshevCoeffVector target = jacobi_anger_cos(1000.0, 1e-14, c.alpha);
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult result = newton_solve(target);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool case_ok = result.report.converged &&
                         result.report.final_residual_l1 < 1e-12 &&
                         result.report.iterations <= c.budget && wall < 120.0;
    ok = ok && case_ok;
    if (!detail.empty()) detail += ", ";
    detail += "alpha=" + fmt(c.alpha) + ": " +
              std::to_string(result.report.iterations) + " iters (<=" +
              std::to_string(c.budget) + "), residual " +
              fmt(result.report.final_residual_l1) + ", " + fmt(wall) + " s";
  }
  return report(1, "newton on alpha*cos(1000x)", ok, detail);
}

// --- 2. Newton vs fixed-point on 0.999*cos(500 x) ---------------------------

bool criterion_newton_vs_fpi_cos500() {
  const ChebyshevCoeffVector target = jacobi_anger_cos(500.0, 1e-14, 0.999);

  SolverConfig newton_cfg = SolverConfig::for_method(SolveMethod::newton);
  newton_cfg.residual_tol = 1e-13;
  const SolveResult newton = newton_solve(target, newton_cfg);
  const bool newton_ok = newton.report.converged &&
                         newton.report.final_residual_l1 < 1e-13 &&
                         newton.report.iterations <= 12;

  SolverConfig fpi_cfg = SolverConfig::for_method(SolveMethod::fpi);
  fpi_cfg.max_iter = 100;
  const SolveResult fpi = fpi_solve(target, fpi_cfg);
  double fpi_min = 1e300;
  for (double r : fpi.report.residual_history) fpi_min = std::min(fpi_min, r);
  const bool fpi_ok = !fpi.report.converged && fpi_min > 1e-2;

  // Quadratic tail over the last three recorded residuals, with a floor that
  // absorbs double-precision stagnation.
  const auto& r = newton.report.residual_history;
  bool tail_ok = r.size() >= 3;
  if (tail_ok) {
    for (size_t k = r.size() - 3; k + 1 < r.size(); ++k) {
      if (r[k + 1] > std::max(1e3 * r[k] * r[k], 1e-13)) tail_ok = false;
    }
  }

  const bool ok = newton_ok && fpi_ok && tail_ok;
  const std::string detail =
      "newton " + std::to_string(newton.report.iterations) +
      " iters (<=12), residual " + fmt(newton.report.final_residual_l1) +
      "; fpi min residual " + fmt(fpi_min) + " over 100 iters; quadratic tail " +
      (tail_ok ? "holds" : "violated");
  return report(2, "0.999*cos(500x) newton vs fpi", ok, detail);
}

// --- 3. Fixed-point contraction on random small targets ---------------------

bool criterion_fpi_random_targets() {
  std::mt19937_64 rng(20260825);
  bool ok = true;
  double worst_final_ratio = 0.0;
  int converged_count = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 100);
    Eigen::VectorXd coeffs = random_vector(rng, m, 1.0);
    const double mass = 0.8 * uniform(rng, 0.25, 1.0);
    coeffs *= mass / coeffs.lpNorm<1>();
    const ChebyshevCoeffVector c(Parity::even, coeffs);

    const SolveResult result = fpi_solve(c);
    if (result.report.converged) ++converged_count;
    ok = ok && result.report.converged;

    // The per-step residual ratio must eventually drop below 0.9: take the
    // last recorded step that is safely above the convergence floor.
    const auto& r = result.report.residual_history;
    double final_ratio = 0.0;
    for (size_t k = 0; k + 1 < r.size(); ++k) {
      if (r[k] > 1e-11) final_ratio = r[k + 1] / r[k];
    }
    worst_final_ratio = std::max(worst_final_ratio, final_ratio);
    ok = ok && final_ratio <= 0.9 && final_ratio > 0.0;
  }
  const std::string detail = std::to_string(converged_count) +
                             "/20 converged to 1e-12; worst late ratio " +
                             fmt(worst_final_ratio) + " (<=0.9)";
  return report(3, "fpi on random targets with l1 mass <= 0.8", ok, detail);
}

// --- 4. Jacobian assembly battery -------------------------------------------

bool criterion_jacobian() {
  std::mt19937_64 rng(424242);
  bool origin_ok = true;
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {1, 2, 7, 64}) {
      const ReducedPhaseFactors zero = ReducedPhaseFactors::zeros(p, m);
      const Eigen::MatrixXd expected = 2.0 * Eigen::MatrixXd::Identity(m, m);
      origin_ok = origin_ok &&
                  (jacobian_mps_real(zero) - expected).lpNorm<Eigen::Infinity>() <
                      1e-12 &&
                  (jacobian_mps_complex(zero) - expected)
                          .lpNorm<Eigen::Infinity>() < 1e-12;
    }
  }

  double worst_fd = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Parity p = (rng() & 1) != 0 ? Parity::odd : Parity::even;
    const int m = 1 + static_cast<int>(rng() % 50);
    const ReducedPhaseFactors phi(p, random_vector(rng, m, 0.3));
    const Eigen::MatrixXd fast = jacobian_mps_real(phi);
    const Eigen::MatrixXd slow = jacobian_fd(phi);
    worst_fd = std::max(worst_fd, (fast - slow).norm() / slow.norm());
  }
  const bool fd_ok = worst_fd < 1e-6;

  double worst_rc = 0.0;
  for (int m : {3, 17, 64, 128, 200}) {
    for (Parity p : {Parity::even, Parity::odd}) {
      const ReducedPhaseFactors phi(p, random_vector(rng, m, 0.25));
      worst_rc = std::max(worst_rc,
                          (jacobian_mps_real(phi) - jacobian_mps_complex(phi))
                              .lpNorm<Eigen::Infinity>());
    }
  }
  const bool rc_ok = worst_rc < 1e-12;

  // Per-sample shift identity: dg/dphi_i = 2 g(x, Psi + (pi/2) e_k) on the
  // mirrored sequence, for either mirrored slot k of phi_i.
  double worst_shift = 0.0;
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {2, 5, 12}) {
      const ReducedPhaseFactors phi(p, random_vector(rng, m, kPi / 4));
      std::vector<double> xs(7);
      for (double& x : xs) x = uniform(rng, -1.0, 1.0);
      // Row i holds dg/dphi_i over the node set.
      const Eigen::MatrixXd real = derivative_samples_real(phi, xs);
      const Eigen::MatrixXd complex = derivative_samples_complex(phi, xs);
      const FullPhaseFactors psi = build_full(phi);
      for (int i = 0; i < m; ++i) {
        const FullPhaseFactors shifted = shift_phase(psi, m - 1 - i, kPi / 2);
        for (size_t j = 0; j < xs.size(); ++j) {
          const double expected = 2.0 * evaluate_g(xs[j], shifted);
          worst_shift = std::max(worst_shift,
                                 std::abs(real(i, static_cast<int>(j)) - expected));
          worst_shift = std::max(
              worst_shift, std::abs(complex(i, static_cast<int>(j)) - expected));
        }
      }
    }
  }
  const bool shift_ok = worst_shift < 1e-12;

  const bool ok = origin_ok && fd_ok && rc_ok && shift_ok;
  const std::string detail = std::string("DF(0)=2I ") +
                             (origin_ok ? "ok" : "violated") +
                             "; worst fd rel error " + fmt(worst_fd) +
                             " (<=1e-6); real-vs-complex " + fmt(worst_rc) +
                             " (<=1e-12); shift identity " + fmt(worst_shift) +
                             " (<=1e-12)";
  return report(4, "jacobian assembly", ok, detail);
}

// --- 5. Real evaluation kernel ----------------------------------------------

bool criterion_real_kernel() {
  std::mt19937_64 rng(777);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Parity p = (rng() & 1) != 0 ? Parity::odd : Parity::even;
    const int m = 1 + static_cast<int>(rng() % 1000);
    const ReducedPhaseFactors phi(p, random_vector(rng, m, kPi));
    const double x = uniform(rng, -1.0, 1.0);
    worst = std::max(worst, std::abs(evaluate_g_real(x, phi) -
                                     evaluate_g_complex(x, phi)));
  }
  const bool agree_ok = worst < 1e-13;

  const ReducedPhaseFactors big(Parity::even, random_vector(rng, 700, 0.1));
  volatile double sink = 0.0;
  bool speed_ok = false;
  double ratio = 1e300;
  for (int attempt = 0; attempt < 3 && !speed_ok; ++attempt) {
    const double t_real = time_median(
        [&] { sink = sink + evaluate_F(big, EvalKernel::real_so3).coeffs[0]; },
        7);
    const double t_complex = time_median(
        [&] {
          sink = sink + evaluate_F(big, EvalKernel::complex_su2).coeffs[0];
        },
        7);
    ratio = t_real / t_complex;
    speed_ok = ratio <= 0.75;
  }

  const bool ok = agree_ok && speed_ok;
  const std::string detail = "worst |g_real - g_complex| " + fmt(worst) +
                             " (<=1e-13) over 1000 trials; wall ratio " +
                             fmt(ratio) + " (<=0.75) at reduced size 700";
  return report(5, "real evaluation kernel", ok, detail);
}

// --- 6. Coefficient round-trips ----------------------------------------------

bool criterion_round_trips() {
  std::mt19937_64 rng(606060);
  double worst_coeff = 0.0;
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {1, 2, 3, 10, 100, 500}) {
      const ChebyshevCoeffVector c(p, random_vector(rng, m, 1.0));
      const SampleGrid grid(c.degree());
      std::vector<double> samples(grid.nodes.size());
      for (size_t j = 0; j < samples.size(); ++j) {
        samples[j] = evaluate_series(c, grid.nodes[j]);
      }
      const ChebyshevCoeffVector back = coefficients_from_samples(samples, p);
      worst_coeff =
          std::max(worst_coeff,
                   (back.coeffs - c.coeffs).lpNorm<Eigen::Infinity>() / m);
    }
  }
  const bool coeff_ok = worst_coeff < 1e-13;

  double worst_point = 0.0;
  for (Parity p : {Parity::even, Parity::odd}) {
    const ReducedPhaseFactors phi(p, random_vector(rng, 40, 0.8));
    const ChebyshevCoeffVector f = evaluate_F(phi);
    for (int trial = 0; trial < 200; ++trial) {
      const double x = uniform(rng, -1.0, 1.0);
      worst_point = std::max(worst_point, std::abs(evaluate_series(f, x) -
                                                   evaluate_g_real(x, phi)));
    }
  }
  const bool point_ok = worst_point < 1e-12;

  const bool ok = coeff_ok && point_ok;
  const std::string detail = "size-normalized coefficient error " +
                             fmt(worst_coeff) +
                             " (<=1e-13); series-vs-g pointwise " +
                             fmt(worst_point) + " (<=1e-12)";
  return report(6, "coefficient round-trips", ok, detail);
}

// --- 7. Target builders --------------------------------------------------------

bool criterion_targets() {
  std::mt19937_64 rng(700700);

  // Bessel values against the ascending series, summed in quadruple
  // precision: the alternating terms peak near 1e6 at tau = 20, so a double
  // reference would carry ~1e-12 of cancellation error of its own.
  double worst_bessel = 0.0;
  for (double tau : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const Eigen::VectorXd j = bessel_j_sequence(40, tau);
    for (int k = 0; k <= 40; ++k) {
      const __float128 half = static_cast<__float128>(tau) / 2;
      __float128 term = 1;
      for (int i = 1; i <= k; ++i) term *= half / i;
      __float128 sum = term;
      for (int m = 1; m < 200; ++m) {
        term *= -half * half / (static_cast<__float128>(m) * (m + k));
        sum += term;
        if (fabsq(term) < static_cast<__float128>(1e-30)) break;
      }
      worst_bessel =
          std::max(worst_bessel, std::abs(j[k] - static_cast<double>(sum)));
    }
  }
  const bool bessel_ok = worst_bessel < 1e-14;

  // Unscaled trig truncations against the trig functions themselves.  The
  // series is summed by the Chebyshev recurrence in quadruple precision;
  // double summation at degree ~170 would add ~d*eps of evaluation roundoff
  // on top of the truncation error under test.
  const auto quad_error = [](const ChebyshevCoeffVector& c, double x,
                             double tau, bool sine) {
    const __float128 xq = x;
    const int off = c.parity == Parity::odd ? 1 : 0;
    const int d = 2 * (c.size() - 1) + off;
    __float128 sum = off == 0 ? static_cast<__float128>(c.coeffs[0])
                              : static_cast<__float128>(c.coeffs[0]) * xq;
    __float128 tprev = 1;  // T_0
    __float128 tcur = xq;  // T_1
    for (int k = 2; k <= d; ++k) {
      const __float128 tnext = 2 * xq * tcur - tprev;
      tprev = tcur;
      tcur = tnext;
      if ((k & 1) == off) {
        sum += static_cast<__float128>(c.coeffs[k / 2]) * tcur;
      }
    }
    const __float128 arg = static_cast<__float128>(tau) * xq;
    return static_cast<double>(fabsq(sum - (sine ? sinq(arg) : cosq(arg))));
  };
  double worst_trig = 0.0;
  for (double tau : {10.0, 100.0}) {
    const int d_even = jacobi_anger_degree(tau, 1e-14, Parity::even);
    const int d_odd = jacobi_anger_degree(tau, 1e-14, Parity::odd);
    const Eigen::VectorXd bessel =
        bessel_j_sequence(std::max(d_even, d_odd), tau);
    Eigen::VectorXd cos_c(d_even / 2 + 1);
    cos_c[0] = bessel[0];
    for (int k = 1; k < cos_c.size(); ++k) {
      cos_c[k] = 2.0 * (k % 2 != 0 ? -1.0 : 1.0) * bessel[2 * k];
    }
    Eigen::VectorXd sin_c((d_odd + 1) / 2);
    for (int k = 0; k < sin_c.size(); ++k) {
      sin_c[k] = 2.0 * (k % 2 != 0 ? -1.0 : 1.0) * bessel[2 * k + 1];
    }
    const ChebyshevCoeffVector cos_series(Parity::even, cos_c);
    const ChebyshevCoeffVector sin_series(Parity::odd, sin_c);
    for (int trial = 0; trial < 400; ++trial) {
      const double x = uniform(rng, -1.0, 1.0);
      worst_trig = std::max(worst_trig, quad_error(cos_series, x, tau, false));
      worst_trig = std::max(worst_trig, quad_error(sin_series, x, tau, true));
    }
  }
  const bool trig_ok = worst_trig < 2e-14;

  // Unscaled Gaussian truncation at degree 100.
  const double mu = 0.5, sigma = 0.1;
  const SampleGrid grid(100);
  std::vector<double> samples(grid.nodes.size());
  for (size_t j = 0; j < samples.size(); ++j) {
    const double t = (std::abs(grid.nodes[j]) - mu) / sigma;
    samples[j] = std::exp(-t * t);
  }
  const ChebyshevCoeffVector gauss =
      coefficients_from_samples(samples, Parity::even);
  double worst_gauss = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double x = uniform(rng, -1.0, 1.0);
    const double t = (std::abs(x) - mu) / sigma;
    worst_gauss = std::max(
        worst_gauss, std::abs(evaluate_series(gauss, x) - std::exp(-t * t)));
  }
  const bool gauss_ok = worst_gauss < 1e-10;

  // Scaled builder outputs land exactly on the requested norm.
  double worst_norm = 0.0;
  for (double alpha : {0.5, 0.9, 1.0 - 1e-9}) {
    worst_norm = std::max(
        worst_norm,
        std::abs(infinity_norm(jacobi_anger_cos(100.0, 1e-14, alpha)) - alpha));
    worst_norm = std::max(
        worst_norm,
        std::abs(infinity_norm(gaussian_coeffs(mu, sigma, 100, alpha)) - alpha));
  }
  const bool norm_ok = worst_norm < 1e-12;

  const bool ok = bessel_ok && trig_ok && gauss_ok && norm_ok;
  const std::string detail =
      "bessel vs series " + fmt(worst_bessel) + " (<=1e-14); trig truncation " +
      fmt(worst_trig) + " (<=2e-14); gaussian truncation " + fmt(worst_gauss) +
      " (<=1e-10); rescaled norm error " + fmt(worst_norm) + " (<=1e-12)";
  return report(7, "target builders", ok, detail);
}

// --- 8. Conditioning trend -----------------------------------------------------

bool criterion_condition_trend() {
  bool all_converged = true;
  std::vector<double> kappas;
  std::string detail = "kappa:";
  for (double scale : {0.5, 0.9, 0.99, 0.999}) {
    const ChebyshevCoeffVector c = jacobi_anger_cos(100.0, 1e-14, scale);
    SolverConfig cfg = SolverConfig::for_method(SolveMethod::newton);
    cfg.estimate_condition = true;
    const SolveResult result = newton_solve(c, cfg);
    all_converged = all_converged && result.report.converged;
    const double kappa = result.report.condition_estimate.value_or(0.0);
    kappas.push_back(kappa);
    detail += " " + fmt(scale) + "->" + fmt(kappa);
  }
  bool increasing = true;
  for (size_t i = 0; i + 1 < kappas.size(); ++i) {
    increasing = increasing && kappas[i + 1] > kappas[i];
  }
  const bool ok = all_converged && increasing;
  detail += increasing ? " (strictly increasing)" : " (NOT increasing)";
  detail += all_converged ? ", all converged" : ", convergence failure";
  return report(8, "condition estimate vs coherence", ok, detail);
}

}  // namespace

int main() {
  int failures = 0;
  failures += criterion_newton_cos1000() ? 0 : 1;
  failures += criterion_newton_vs_fpi_cos500() ? 0 : 1;
  failures += criterion_fpi_random_targets() ? 0 : 1;
  failures += criterion_jacobian() ? 0 : 1;
  failures += criterion_real_kernel() ? 0 : 1;
  failures += criterion_round_trips() ? 0 : 1;
  failures += criterion_targets() ? 0 : 1;
  failures += criterion_condition_trend() ? 0 : 1;
  if (failures == 0) {
    std::printf("all acceptance criteria satisfied\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures;
}

#pragma once

#include <stdexcept>
#include <string>

#include "sqsp/types.hpp"

namespace sqsp {

// J_0(tau) .. J_{k_max}(tau) by downward (Miller) recurrence, normalized with
// J_0 + 2*sum_k J_{2k} = 1; absolute accuracy ~1e-14.  Upward recurrence is
// unstable for k > tau, downward is not.
Eigen::VectorXd bessel_j_sequence(int k_max, double tau);

// Smallest degree of the requested parity >= e*tau/2 + ln(1/eps0).
int jacobi_anger_degree(double tau, double eps0, Parity parity);

// Truncated expansions of cos(tau x) / sin(tau x) in Chebyshev polynomials:
//   cos: c_0 = J_0(tau), c_j = 2(-1)^j J_{2j}(tau)   (even vector)
//   sin: c_j = 2(-1)^j J_{2j+1}(tau)                 (odd vector)
// truncated at jacobi_anger_degree and then rescaled to max-norm alpha.
ChebyshevCoeffVector jacobi_anger_cos(double tau, double eps0, double alpha);
ChebyshevCoeffVector jacobi_anger_sin(double tau, double eps0, double alpha);

// Even extension of exp(-(|x|-mu)^2/sigma^2) truncated at the given even
// degree by sampling on the equispaced-angle grid, then rescaled to alpha.
ChebyshevCoeffVector gaussian_coeffs(double mu, double sigma, int degree,
                                     double alpha);

// c * (alpha / infinity_norm(c)); rejects the zero vector.
ChebyshevCoeffVector rescale_to_norm(const ChebyshevCoeffVector& c,
                                     double alpha);

enum class TargetKind { cos_tau, sin_tau, gaussian, file };

struct TargetSpec {
  TargetKind kind = TargetKind::cos_tau;
  double tau = 0.0;          // trig targets
  double mu = 0.5;           // gaussian
  double sigma = 0.1;        // gaussian
  int degree = 100;          // gaussian truncation degree (even)
  std::string path;          // file targets
  double scale = 0.9;        // alpha in (0, 1]; ignored for file targets
  double trunc_eps = 1e-14;  // trig truncation accuracy
};

// Coefficients for a target spec.  File targets are loaded verbatim; the
// optional flag reports a loaded max-norm above 1 (accepted with a warning,
// the solver may legitimately fail on such input).
ChebyshevCoeffVector build_target(const TargetSpec& spec,
                                  bool* norm_exceeds_one = nullptr);

class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON files: {"parity": "even"|"odd", "coeffs": [...]} for coefficients,
// {"parity": ..., "reduced_phases": [...]} for phases.  Doubles round-trip
// exactly.
ChebyshevCoeffVector load_coeffs(const std::string& path,
                                 bool* norm_exceeds_one = nullptr);
void save_coeffs(const std::string& path, const ChebyshevCoeffVector& c);
ReducedPhaseFactors load_phases(const std::string& path);
void save_phases(const std::string& path, const ReducedPhaseFactors& phi);

}  // namespace sqsp

#include "sqsp/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sqsp/dft.hpp"

namespace sqsp {

namespace {
constexpr double kPi = std::numbers::pi;
}

SampleGrid::SampleGrid(int deg) : degree(deg) {
  if (deg < 0) {
    throw std::invalid_argument("SampleGrid: degree must be non-negative");
  }
  const int n = 2 * deg + 1;
  nodes.resize(deg + 1);
  for (int j = 0; j <= deg; ++j) {
    nodes[j] = std::cos(2.0 * kPi * j / n);
  }
}

ChebyshevCoeffVector coefficients_from_samples(std::span<const double> samples,
                                               Parity parity) {
  const int d = static_cast<int>(samples.size()) - 1;
  if (d < 0) {
    throw std::invalid_argument("coefficients_from_samples: empty sample vector");
  }
  if (d % 2 != parity_bit(parity)) {
    throw std::invalid_argument(
        "coefficients_from_samples: sample count does not match requested parity");
  }
  const int n = 2 * d + 1;
  std::vector<double> mirrored(n);
  for (int j = 0; j <= d; ++j) mirrored[j] = samples[j];
  for (int j = d + 1; j < n; ++j) mirrored[j] = samples[n - j];

  std::vector<std::complex<double>> spectrum(n);
  shared_odd_dft_plan(n).transform(mirrored, spectrum);

  const int p = parity_bit(parity);
  const int m = (d + 2 - p) / 2;  // reduced size
  Eigen::VectorXd coeffs(m);
  const double scale = 2.0 / n;
  for (int l = 0; l < m; ++l) {
    coeffs[l] = scale * spectrum[2 * l + p].real();
  }
  if (p == 0) coeffs[0] *= 0.5;
  return ChebyshevCoeffVector(parity, std::move(coeffs));
}

double evaluate_series(const ChebyshevCoeffVector& c, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error("evaluate_series: |x| must be <= 1");
  }
  const int m = c.size();
  if (m < 1) {
    throw std::invalid_argument("evaluate_series: empty coefficient vector");
  }
  // Both bases phi_j (T_{2j} or T_{2j+1}) satisfy the three-term recurrence
  // phi_{j+1} = 2y phi_j - phi_{j-1} with y = 2x^2 - 1, so a single Clenshaw
  // pass covers both parities with parity-dependent phi_0, phi_1.
  const double y = 2.0 * x * x - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int j = m - 1; j >= 1; --j) {
    const double b = 2.0 * y * b1 - b2 + c.coeffs[j];
    b2 = b1;
    b1 = b;
  }
  double phi0, phi1;
  if (c.parity == Parity::even) {
    phi0 = 1.0;            // T_0
    phi1 = y;              // T_2(x) = T_1(y)
  } else {
    phi0 = x;              // T_1
    phi1 = x * (2.0 * y - 1.0);  // T_3
  }
  return c.coeffs[0] * phi0 + phi1 * b1 - phi0 * b2;
}

double infinity_norm(const ChebyshevCoeffVector& c, int grid_points) {
  const int degree = c.degree();
  if (grid_points == 0) {
    grid_points = std::max(2048, 8 * degree) + 1;
  } else if (grid_points < std::max(2, 4 * degree)) {
    throw std::invalid_argument("infinity_norm: grid_points must be >= max(2, 4*degree)");
  }
  const int intervals = grid_points - 1;
  double best = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double x = std::cos(kPi * k / intervals);
    best = std::max(best, std::abs(evaluate_series(c, x)));
  }
  return best;
}

}  // namespace sqsp

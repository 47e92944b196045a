#include "sqsp/linalg.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>

namespace sqsp {

namespace {

constexpr double kPivotFloor = 1e-300;

double unit_interval(std::mt19937_64& rng) {
  // Top 53 bits -> [0, 1); fixed mapping so streams are identical across
  // standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd random_unit_vector(int n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = 2.0 * unit_interval(rng) - 1.0;
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setOnes();
    return v / v.norm();
  }
  return v / norm;
}

}  // namespace

LuFactorization::LuFactorization(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("LuFactorization: matrix must be square and non-empty");
  }
  lu_.compute(a);
  const Eigen::VectorXd diag = lu_.matrixLU().diagonal();
  for (int i = 0; i < diag.size(); ++i) {
    if (!(std::abs(diag[i]) >= kPivotFloor)) {
      throw SingularMatrixError("LuFactorization: pivot " + std::to_string(i) +
                                " below 1e-300; matrix is singular to working precision");
    }
  }
}

Eigen::VectorXd LuFactorization::solve(const Eigen::VectorXd& b) const {
  if (b.size() != lu_.rows()) {
    throw std::invalid_argument("LuFactorization::solve: size mismatch");
  }
  return lu_.solve(b);
}

Eigen::VectorXd LuFactorization::solve_transposed(const Eigen::VectorXd& b) const {
  if (b.size() != lu_.rows()) {
    throw std::invalid_argument("LuFactorization::solve_transposed: size mismatch");
  }
  // P A = L U gives A^T = U^T L^T P, so solve U^T w = b, L^T u = w, y = P^T u.
  const auto& packed = lu_.matrixLU();
  Eigen::VectorXd w = packed.triangularView<Eigen::Upper>().transpose().solve(b);
  Eigen::VectorXd u = packed.triangularView<Eigen::UnitLower>().transpose().solve(w);
  return lu_.permutationP().transpose() * u;
}

Eigen::MatrixXd LuFactorization::matrix_l() const {
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(lu_.rows(), lu_.cols());
  l.triangularView<Eigen::StrictlyLower>() = lu_.matrixLU();
  return l;
}

Eigen::MatrixXd LuFactorization::matrix_u() const {
  return lu_.matrixLU().triangularView<Eigen::Upper>();
}

Eigen::MatrixXd LuFactorization::permutation_p() const {
  return lu_.permutationP();
}

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return LuFactorization(a).solve(b);
}

double condition_estimate(const Eigen::MatrixXd& a, int iterations,
                          unsigned long long seed) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("condition_estimate: matrix must be square and non-empty");
  }
  if (iterations < 1) {
    throw std::invalid_argument("condition_estimate: iterations must be >= 1");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::unique_ptr<LuFactorization> lu;
  try {
    lu = std::make_unique<LuFactorization>(a);
  } catch (const SingularMatrixError&) {
    return inf;
  }
  const int n = static_cast<int>(a.rows());
  std::mt19937_64 rng(seed);

  // Largest eigenvalue of A^T A.
  Eigen::VectorXd v = random_unit_vector(n, rng);
  double lambda_max = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd u = a.transpose() * (a * v);
    lambda_max = u.norm();
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
      return inf;
    }
    v = u / lambda_max;
  }

  // Largest eigenvalue of (A^T A)^{-1} via z = A^{-1} A^{-T} w.
  Eigen::VectorXd w = random_unit_vector(n, rng);
  double mu_max = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd z = lu->solve(lu->solve_transposed(w));
    mu_max = z.norm();
    if (!(mu_max > 0.0) || !std::isfinite(mu_max)) {
      return inf;
    }
    w = z / mu_max;
  }

  const double kappa = std::sqrt(lambda_max * mu_max);
  return std::isfinite(kappa) ? kappa : inf;
}

}  // namespace sqsp

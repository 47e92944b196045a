#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace sqsp {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partial-pivoted LU of a square real matrix.  Construction fails with
// SingularMatrixError when a pivot magnitude drops below 1e-300, i.e. the
// matrix is singular to working precision.
class LuFactorization {
 public:
  explicit LuFactorization(const Eigen::MatrixXd& a);

  int rows() const { return static_cast<int>(lu_.rows()); }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  // Solves A^T y = b by transposed triangular solves on the same factors.
  Eigen::VectorXd solve_transposed(const Eigen::VectorXd& b) const;

  // Reconstruction pieces satisfying P*A = L*U.
  Eigen::MatrixXd matrix_l() const;
  Eigen::MatrixXd matrix_u() const;
  Eigen::MatrixXd permutation_p() const;

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

// kappa_2(A) ~= sigma_max / sigma_min: power iteration on A^T A for the top
// singular value, LU-backed inverse iteration for the bottom one.  Accuracy
// within a small factor is all the condition study needs.  The fixed seed
// makes repeated estimates on the same matrix identical; a singular matrix
// yields +infinity.
double condition_estimate(const Eigen::MatrixXd& a, int iterations = 100,
                          unsigned long long seed = 7);

}  // namespace sqsp

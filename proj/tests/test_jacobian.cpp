#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqsp/jacobian.hpp"
#include "sqsp/qsp_eval.hpp"
#include "sqsp/solver.hpp"
#include "sqsp/types.hpp"
#include "test_util.hpp"

using namespace sqsp;
using sqsp_test::random_phases;
using sqsp_test::uniform;

namespace {
constexpr double kPi = std::numbers::pi;

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

double median_seconds(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
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
  return median_seconds(std::move(times));
}
}  // namespace

TEST_CASE("Jacobian at the origin is twice the identity") {
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {1, 2, 7, 64}) {
      ReducedPhaseFactors zero = ReducedPhaseFactors::zeros(p, m);
      const Eigen::MatrixXd expected = 2.0 * Eigen::MatrixXd::Identity(m, m);
      CHECK((jacobian_mps_real(zero) - expected).lpNorm<Eigen::Infinity>() <
            1e-12);
      CHECK((jacobian_mps_complex(zero) - expected).lpNorm<Eigen::Infinity>() <
            1e-12);
    }
  }
}

TEST_CASE("single-phase even Jacobian is the scalar 2 cos(2 phi0)") {
  for (double phi0 : {0.0, 0.31, -1.2}) {
    ReducedPhaseFactors phi(Parity::even, Eigen::VectorXd::Constant(1, phi0));
    JacobianMatrix real = jacobian_mps_real(phi);
    JacobianMatrix complex = jacobian_mps_complex(phi);
    REQUIRE(real.rows() == 1);
    REQUIRE(real.cols() == 1);
    CHECK(real(0, 0) == doctest::Approx(2.0 * std::cos(2 * phi0)).epsilon(1e-13));
    CHECK(complex(0, 0) ==
          doctest::Approx(2.0 * std::cos(2 * phi0)).epsilon(1e-13));
  }
}

TEST_CASE("real and complex assemblies agree to roundoff") {
  std::mt19937_64 rng(141);
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {1, 3, 30, 90}) {
      ReducedPhaseFactors phi = random_phases(rng, p, m, 0.4);
      JacobianMatrix a = jacobian_mps_real(phi);
      JacobianMatrix b = jacobian_mps_complex(phi);
      CHECK((a - b).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}

TEST_CASE("sweep-assembled Jacobian matches finite differences") {
  std::mt19937_64 rng(242);
  for (Parity p : {Parity::even, Parity::odd}) {
    ReducedPhaseFactors phi = random_phases(rng, p, 30, 0.3);
    JacobianMatrix fast = jacobian_mps_real(phi);
    JacobianMatrix slow = jacobian_fd(phi);
    CHECK(relative_frobenius(fast, slow) < 1e-6);
  }
  // A larger instance stays within the same tolerance.
  ReducedPhaseFactors big = random_phases(rng, Parity::even, 200, 0.1);
  CHECK(relative_frobenius(jacobian_mps_real(big), jacobian_fd(big)) < 1e-6);
}

TEST_CASE("finite-difference oracle basics") {
  ReducedPhaseFactors zero = ReducedPhaseFactors::zeros(Parity::odd, 12);
  JacobianMatrix fd = jacobian_fd(zero);
  CHECK((fd - 2.0 * Eigen::MatrixXd::Identity(12, 12)).lpNorm<Eigen::Infinity>() <
        1e-8);
  CHECK_THROWS_AS(jacobian_fd(zero, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobian_fd(zero, -1e-6), std::invalid_argument);

  // Every column has the dimension of the coefficient vector of Phi's parity.
  std::mt19937_64 rng(343);
  ReducedPhaseFactors phi = random_phases(rng, Parity::even, 9, 0.5);
  JacobianMatrix cols = jacobian_fd(phi);
  CHECK(cols.rows() == 9);
  CHECK(cols.cols() == 9);
  CHECK(cols.allFinite());
}

TEST_CASE("derivative samples obey the quarter-turn shift identity") {
  // dg/dphi_i at x equals 2 g(x, Psi + (pi/2) e_k) where e_k shifts one of the
  // two mirrored full-sequence slots of phi_i; both mirror choices agree
  // because g is invariant under sequence reversal.
  std::mt19937_64 rng(444);
  for (Parity p : {Parity::even, Parity::odd}) {
    for (int m : {2, 5, 12}) {
      ReducedPhaseFactors phi = random_phases(rng, p, m, kPi / 4);
      std::vector<double> xs(7);
      for (double& x : xs) x = uniform(rng, -1.0, 1.0);

      // Row i holds dg/dphi_i over the node set.
      Eigen::MatrixXd real = derivative_samples_real(phi, xs);
      Eigen::MatrixXd complex = derivative_samples_complex(phi, xs);
      REQUIRE(real.rows() == m);
      REQUIRE(real.cols() == static_cast<int>(xs.size()));

      FullPhaseFactors psi = build_full(phi);
      const int d = psi.degree();
      for (int i = 0; i < m; ++i) {
        FullPhaseFactors left = shift_phase(psi, m - 1 - i, kPi / 2);
        FullPhaseFactors right = shift_phase(psi, d - (m - 1 - i), kPi / 2);
        for (size_t j = 0; j < xs.size(); ++j) {
          const double expected = 2.0 * evaluate_g(xs[j], left);
          CHECK(std::abs(2.0 * evaluate_g(xs[j], right) - expected) < 1e-12);
          CHECK(std::abs(real(i, j) - expected) < 1e-12);
          CHECK(std::abs(complex(i, j) - expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("derivative samples validate their inputs") {
  ReducedPhaseFactors phi = ReducedPhaseFactors::zeros(Parity::even, 3);
  std::vector<double> bad = {0.0, 1.5};
  CHECK_THROWS_AS(derivative_samples_real(phi, bad), std::domain_error);
  CHECK_THROWS_AS(derivative_samples_complex(phi, bad), std::domain_error);
}

TEST_CASE("assembly cost roughly quadruples when the degree doubles") {
  // Doubling d should cost ~4x (quadratic work with an O(d log d) transform
  // tail); require <= 4.5x between consecutive doublings.  Sizes are timed
  // round-robin with the per-size minimum kept, so a load spike on a shared
  // machine inflates neither side of a ratio; retries ride out anything left.
  std::mt19937_64 rng(545);
  const std::vector<int> degrees = {200, 400, 800, 1600};
  std::vector<ReducedPhaseFactors> phis;
  volatile double sink = 0.0;
  for (int d : degrees) {
    phis.push_back(random_phases(rng, Parity::even, d / 2 + 1, 0.2));
    sink = sink + jacobian_mps_real(phis.back())(0, 0);  // warm plans/pages
  }
  bool ok = false;
  std::string measured;
  for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
    std::vector<double> seconds(degrees.size(),
                                std::numeric_limits<double>::infinity());
    for (int round = 0; round < 13; ++round) {
      for (size_t si = 0; si < phis.size(); ++si) {
        const auto t0 = std::chrono::steady_clock::now();
        sink = sink + jacobian_mps_real(phis[si])(0, 0);
        const auto t1 = std::chrono::steady_clock::now();
        seconds[si] = std::min(seconds[si],
                               std::chrono::duration<double>(t1 - t0).count());
      }
    }
    ok = true;
    measured = "doubling ratios:";
    for (size_t k = 0; k + 1 < seconds.size(); ++k) {
      const double ratio = seconds[k + 1] / seconds[k];
      measured += " " + std::to_string(ratio);
      if (!(ratio <= 4.5)) ok = false;
    }
  }
  CHECK_MESSAGE(ok, measured);
}

TEST_CASE("assembly stays within 5x of one target-map evaluation") {
  std::mt19937_64 rng(646);
  const int m = 700;
  ReducedPhaseFactors phi = random_phases(rng, Parity::even, m, 0.1);
  volatile double sink = 0.0;
  bool ok = false;
  double ratio = 0.0;
  for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
    const double t_f = time_median(
        [&] { sink = sink + evaluate_F(phi).coeffs[0]; }, 5);
    const double t_j = time_median(
        [&] { sink = sink + jacobian_mps_real(phi)(0, 0); }, 5);
    ratio = t_j / t_f;
    ok = ratio <= 5.0;
  }
  INFO("jacobian/evaluate_F wall ratio ", ratio);
  CHECK(ok);
}

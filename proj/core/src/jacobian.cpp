#include "sqsp/jacobian.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sqsp/solver.hpp"

namespace sqsp {

namespace {

void check_inputs(const ReducedPhaseFactors& phi, std::span<const double> xs) {
  if (phi.reduced_size() == 0) {
    throw std::invalid_argument("derivative_samples: empty phase sequence");
  }
  for (double x : xs) {
    if (!(std::abs(x) <= 1.0)) {
      throw std::domain_error("derivative_samples: x outside [-1, 1]");
    }
  }
}

// Plans are cached for the process lifetime; creation is serialized because
// the FFTW planner is not thread-safe, while execute-on-new-arrays is.
// Batched plans (howmany > 1) let FFTW vectorize across the rows of a panel.
fftw_plan shared_dct_plan(int n, fftw_r2r_kind kind, int howmany, int stride) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(n, static_cast<int>(kind), howmany, stride);
  auto it = cache.find(key);
  if (it != cache.end()) {
    return it->second;
  }
  std::vector<double> in(static_cast<std::size_t>(howmany) * stride);
  std::vector<double> out(static_cast<std::size_t>(howmany) * stride);
  fftw_plan plan = fftw_plan_many_r2r(
      1, &n, howmany, in.data(), nullptr, 1, stride, out.data(), nullptr, 1,
      stride, &kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) {
    throw std::runtime_error("jacobian: FFTW plan creation failed");
  }
  cache.emplace(key, plan);
  return plan;
}

// Smallest integer >= m whose odd part is at most 7.  FFTW's deterministic
// (estimate-mode) plans run at a flat per-point rate across 2^a * q lengths
// with q <= 7 but are lumpy elsewhere (large prime factors or rich odd
// factorizations cost several times more per point), and the d~ = degree/2
// + 1 transform sizes routinely land on such lengths.  The recovery below
// is exact for any padded length >= d~; the padding never exceeds 25%.
int next_fft_friendly(int m) {
  for (int c = m;; ++c) {
    int r = c;
    while (r % 2 == 0) {
      r /= 2;
    }
    if (r <= 7) {
      return c;
    }
  }
}

// Shared body of the complex-kernel sweep; store(i, j, value) receives
// dg(x_j)/dphi_i so callers choose the output layout without copying.
template <typename Store>
void sweep_complex(const ReducedPhaseFactors& phi, std::span<const double> xs,
                   Store&& store) {
  using Cd = std::complex<double>;
  const int m = phi.reduced_size();
  const bool even = phi.parity == Parity::even;
  std::vector<Cd> ez(m);  // e^{i phi_k}
  for (int k = 0; k < m; ++k) {
    ez[k] = Cd(std::cos(phi.phases[k]), std::sin(phi.phases[k]));
  }
  const Cd ez0_sq = ez[0] * ez[0];  // e^{i 2 phi_0}
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    const Cd is(0.0, std::sqrt((1.0 - x) * (1.0 + x)));
    // Left row product over layers d~-1 .. 1.
    Cd l1(1.0, 0.0);
    Cd l2(0.0, 0.0);
    for (int k = m - 1; k >= 1; --k) {
      const Cd a = l1 * ez[k];
      const Cd b = l2 * std::conj(ez[k]);
      l1 = a * x + b * is;
      l2 = a * is + b * x;
    }
    // Right column: center block applied to the transposed left row.
    Cd r1;
    Cd r2;
    if (even) {
      r1 = ez0_sq * l1;
      r2 = std::conj(ez0_sq) * l2;
    } else {
      const Cd a = ez[0] * l1;
      const Cd b = std::conj(ez[0]) * l2;
      r1 = ez[0] * (x * a + is * b);
      r2 = std::conj(ez[0]) * (is * a + x * b);
    }
    for (int i = 0; i < m; ++i) {
      if (i > 0) {
        // Left absorbs W^{-1} e^{-i phi_i Z}; right gains e^{i phi_i Z} W.
        const Cd a = l1 * x - l2 * is;
        const Cd b = l2 * x - l1 * is;
        l1 = a * std::conj(ez[i]);
        l2 = b * ez[i];
        const Cd w1 = x * r1 + is * r2;
        const Cd w2 = is * r1 + x * r2;
        r1 = ez[i] * w1;
        r2 = std::conj(ez[i]) * w2;
      }
      store(i, j, 2.0 * (l1 * r1 - l2 * r2).real());
    }
  }
}

// Shared body of the SO(3) sweep; same store contract as sweep_complex.
template <typename Store>
void sweep_real(const ReducedPhaseFactors& phi, std::span<const double> xs,
                Store&& store) {
  const int m = phi.reduced_size();
  const bool even = phi.parity == Parity::even;
  std::vector<double> c2(m);
  std::vector<double> s2(m);
  for (int k = 0; k < m; ++k) {
    c2[k] = std::cos(2.0 * phi.phases[k]);
    s2[k] = std::sin(2.0 * phi.phases[k]);
  }
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    const double cx = 2.0 * x * x - 1.0;
    const double sx = 2.0 * x * s;
    // Left covector: contraction row swept down through layers d~-2 .. 1 plus
    // the innermost rotation; (0,1,0) when there is a single layer.
    double l1;
    double l2;
    double l3;
    if (m == 1) {
      l1 = 0.0;
      l2 = 1.0;
      l3 = 0.0;
    } else {
      l1 = s2[m - 1];
      l2 = c2[m - 1];
      l3 = 0.0;
      for (int k = m - 2; k >= 1; --k) {
        const double t1 = cx * l1 + sx * l3;
        const double t3 = -sx * l1 + cx * l3;
        l1 = c2[k] * t1 + s2[k] * l2;
        l2 = -s2[k] * t1 + c2[k] * l2;
        l3 = t3;
      }
      const double t1 = cx * l1 + sx * l3;
      l3 = -sx * l1 + cx * l3;
      l1 = t1;
    }
    double r1 = even ? 1.0 : x;
    double r2 = 0.0;
    double r3 = even ? 0.0 : s;
    for (int i = 0; i < m; ++i) {
      if (i > 0) {
        const double t1 = cx * l1 - sx * l3;
        const double t3 = sx * l1 + cx * l3;
        const double u1 = c2[i] * t1 - s2[i] * l2;
        l2 = s2[i] * t1 + c2[i] * l2;
        l1 = u1;
        l3 = t3;
        const double w1 = c2[i - 1] * r1 - s2[i - 1] * r2;
        const double w2 = s2[i - 1] * r1 + c2[i - 1] * r2;
        r1 = cx * w1 - sx * r3;
        r2 = w2;
        r3 = sx * w1 + cx * r3;
      }
      const double v1 = c2[i] * r1 - s2[i] * r2;
      const double v2 = s2[i] * r1 + c2[i] * r2;
      store(i, j, 2.0 * (l2 * v1 - l1 * v2));
    }
  }
}

JacobianMatrix assemble_from_sweeps(const ReducedPhaseFactors& phi,
                                    bool real_kernel) {
  const int m = phi.reduced_size();
  if (m == 0) {
    throw std::invalid_argument("jacobian: empty phase sequence");
  }
  const int n = next_fft_friendly(m);
  std::vector<double> xs(n);
  for (int j = 0; j < n; ++j) {
    xs[j] = std::cos(M_PI * (2.0 * j + 1.0) / (4.0 * n));
  }
  // The sweep stores row-major so each derivative row is already contiguous
  // for its transform; per node the row writes touch one cache line per row,
  // which stays resident across the eight nodes that fill it.
  const int stride = n + 8;  // padded to dodge set-conflicts at 4KiB strides
  std::vector<double> rows(static_cast<std::size_t>(m) * stride);
  const auto store = [&rows, stride](int i, std::size_t j, double v) {
    rows[static_cast<std::size_t>(i) * stride + j] = v;
  };
  if (real_kernel) {
    sweep_real(phi, xs, store);
  } else {
    sweep_complex(phi, xs, store);
  }
  const bool even = phi.parity == Parity::even;
  const fftw_r2r_kind kind = even ? FFTW_REDFT10 : FFTW_REDFT11;
  constexpr int kPanel = 32;
  fftw_plan batch = shared_dct_plan(n, kind, kPanel, stride);
  fftw_plan single = shared_dct_plan(n, kind, 1, stride);
  std::vector<double> bins(static_cast<std::size_t>(kPanel) * stride);
  JacobianMatrix df(m, m);
  const double inv_n = 1.0 / n;
  for (int i0 = 0; i0 < m; i0 += kPanel) {
    const int nrows = std::min(kPanel, m - i0);
    double* panel = rows.data() + static_cast<std::size_t>(i0) * stride;
    if (nrows == kPanel) {
      fftw_execute_r2r(batch, panel, bins.data());
    } else {
      for (int bi = 0; bi < nrows; ++bi) {
        const std::size_t off = static_cast<std::size_t>(bi) * stride;
        fftw_execute_r2r(single, panel + off, bins.data() + off);
      }
    }
    for (int bi = 0; bi < nrows; ++bi) {
      df.col(i0 + bi) =
          inv_n * Eigen::Map<const Eigen::VectorXd>(
                      bins.data() + static_cast<std::size_t>(bi) * stride, m);
    }
  }
  if (even) {
    df.row(0) *= 0.5;
  }
  return df;
}

}  // namespace

Eigen::MatrixXd derivative_samples_complex(const ReducedPhaseFactors& phi,
                                           std::span<const double> xs) {
  check_inputs(phi, xs);
  Eigen::MatrixXd samples(phi.reduced_size(),
                          static_cast<Eigen::Index>(xs.size()));
  sweep_complex(phi, xs, [&samples](int i, std::size_t j, double v) {
    samples(i, static_cast<Eigen::Index>(j)) = v;
  });
  return samples;
}

Eigen::MatrixXd derivative_samples_real(const ReducedPhaseFactors& phi,
                                        std::span<const double> xs) {
  check_inputs(phi, xs);
  Eigen::MatrixXd samples(phi.reduced_size(),
                          static_cast<Eigen::Index>(xs.size()));
  sweep_real(phi, xs, [&samples](int i, std::size_t j, double v) {
    samples(i, static_cast<Eigen::Index>(j)) = v;
  });
  return samples;
}

JacobianMatrix jacobian_mps_complex(const ReducedPhaseFactors& phi) {
  return assemble_from_sweeps(phi, /*real_kernel=*/false);
}

JacobianMatrix jacobian_mps_real(const ReducedPhaseFactors& phi) {
  return assemble_from_sweeps(phi, /*real_kernel=*/true);
}

JacobianMatrix jacobian_fd(const ReducedPhaseFactors& phi, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("jacobian_fd: step must be positive");
  }
  const int m = phi.reduced_size();
  if (m == 0) {
    throw std::invalid_argument("jacobian_fd: empty phase sequence");
  }
  JacobianMatrix df(m, m);
  ReducedPhaseFactors shifted = phi;
  for (int i = 0; i < m; ++i) {
    shifted.phases[i] = phi.phases[i] + h;
    const Eigen::VectorXd plus = evaluate_F(shifted).coeffs;
    shifted.phases[i] = phi.phases[i] - h;
    const Eigen::VectorXd minus = evaluate_F(shifted).coeffs;
    shifted.phases[i] = phi.phases[i];
    df.col(i) = (plus - minus) / (2.0 * h);
  }
  return df;
}

}  // namespace sqsp

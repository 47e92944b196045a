#include "sqsp/qsp_eval.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqsp {

namespace {

void check_domain(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error("qsp_eval: x outside [-1, 1]");
  }
}

Su2Matrix rz_su2(double phi) {
  const std::complex<double> e(std::cos(phi), std::sin(phi));
  Su2Matrix r;
  r << e, 0.0, 0.0, std::conj(e);
  return r;
}

// g = Im<0|U|0> with the first row of U carried as two complex scalars; trig
// tables for the full sequence are precomputed by the caller.
double g_complex_row(double x, const double* cp, const double* sp, int d) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double r1r = cp[0];
  double r1i = sp[0];
  double r2r = 0.0;
  double r2i = 0.0;
  for (int j = 1; j <= d; ++j) {
    const double t1r = r1r * x - r2i * s;
    const double t1i = r1i * x + r2r * s;
    const double t2r = r2r * x - r1i * s;
    const double t2i = r2i * x + r1r * s;
    r1r = t1r * cp[j] - t1i * sp[j];
    r1i = t1r * sp[j] + t1i * cp[j];
    r2r = t2r * cp[j] + t2i * sp[j];
    r2i = t2i * cp[j] - t2r * sp[j];
  }
  return r1i;
}

// Real recurrence with cos/sin(2*phi_k) tables of length m precomputed by the
// caller; even selects the (1,0,0)-style base, odd the x-weighted base.
double g_real_so3(double x, const double* c2, const double* s2, int m,
                  Parity parity) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double v1;
  double v2;
  double v3;
  if (parity == Parity::even) {
    v1 = c2[0];
    v2 = s2[0];
    v3 = 0.0;
  } else {
    v1 = x * c2[0];
    v2 = x * s2[0];
    v3 = s;
  }
  if (m == 1) {
    return v2;
  }
  const double cx = 2.0 * x * x - 1.0;
  const double sx = 2.0 * x * s;
  for (int k = 1; k <= m - 2; ++k) {
    const double t1 = cx * v1 - sx * v3;
    const double t3 = sx * v1 + cx * v3;
    v1 = c2[k] * t1 - s2[k] * v2;
    v2 = s2[k] * t1 + c2[k] * v2;
    v3 = t3;
  }
  const double t1 = cx * v1 - sx * v3;
  return s2[m - 1] * t1 + c2[m - 1] * v2;
}

}  // namespace

double So3State::norm() const {
  return std::sqrt(a * a + g * g + alpha * alpha);
}

Su2Matrix w_matrix(double x) {
  check_domain(x);
  const std::complex<double> is(0.0, std::sqrt((1.0 - x) * (1.0 + x)));
  Su2Matrix w;
  w << x, is, is, x;
  return w;
}

Su2Matrix evaluate_u(double x, const FullPhaseFactors& psi) {
  check_domain(x);
  if (psi.psi.size() == 0) {
    throw std::invalid_argument("evaluate_u: empty phase sequence");
  }
  const Su2Matrix w = w_matrix(x);
  Su2Matrix u = rz_su2(psi.psi[0]);
  const int d = psi.degree();
  for (int j = 1; j <= d; ++j) {
    u = u * w * rz_su2(psi.psi[j]);
  }
  return u;
}

double evaluate_g(double x, const FullPhaseFactors& psi) {
  check_domain(x);
  const int d = psi.degree();
  if (d < 0) {
    throw std::invalid_argument("evaluate_g: empty phase sequence");
  }
  std::vector<double> cp(d + 1);
  std::vector<double> sp(d + 1);
  for (int j = 0; j <= d; ++j) {
    cp[j] = std::cos(psi.psi[j]);
    sp[j] = std::sin(psi.psi[j]);
  }
  return g_complex_row(x, cp.data(), sp.data(), d);
}

double evaluate_g_complex(double x, const ReducedPhaseFactors& phi) {
  return evaluate_g(x, build_full(phi));
}

Eigen::Matrix3d so3_rz(double phi) {
  const double c = std::cos(2.0 * phi);
  const double s = std::sin(2.0 * phi);
  Eigen::Matrix3d r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Eigen::Matrix3d so3_rx(double x) {
  check_domain(x);
  const double cx = 2.0 * x * x - 1.0;
  const double sx = 2.0 * x * std::sqrt((1.0 - x) * (1.0 + x));
  Eigen::Matrix3d r;
  r << cx, 0.0, -sx, 0.0, 1.0, 0.0, sx, 0.0, cx;
  return r;
}

So3State so3_initial_state(Parity parity, double phi0, double x) {
  check_domain(x);
  const double c = std::cos(2.0 * phi0);
  const double s = std::sin(2.0 * phi0);
  if (parity == Parity::even) {
    return {c, s, 0.0};
  }
  return {x * c, x * s, std::sqrt((1.0 - x) * (1.0 + x))};
}

So3State so3_step(const So3State& v, double phi, double x) {
  check_domain(x);
  const double cx = 2.0 * x * x - 1.0;
  const double sx = 2.0 * x * std::sqrt((1.0 - x) * (1.0 + x));
  const double c = std::cos(2.0 * phi);
  const double s = std::sin(2.0 * phi);
  const double t1 = cx * v.a - sx * v.alpha;
  const double t3 = sx * v.a + cx * v.alpha;
  return {c * t1 - s * v.g, s * t1 + c * v.g, t3};
}

double evaluate_g_real(double x, const ReducedPhaseFactors& phi) {
  check_domain(x);
  const int m = phi.reduced_size();
  if (m == 0) {
    throw std::invalid_argument("evaluate_g_real: empty phase sequence");
  }
  std::vector<double> c2(m);
  std::vector<double> s2(m);
  for (int k = 0; k < m; ++k) {
    c2[k] = std::cos(2.0 * phi.phases[k]);
    s2[k] = std::sin(2.0 * phi.phases[k]);
  }
  return g_real_so3(x, c2.data(), s2.data(), m, phi.parity);
}

Eigen::VectorXd sample_g(const ReducedPhaseFactors& phi,
                         std::span<const double> xs, EvalKernel kernel) {
  const int m = phi.reduced_size();
  if (m == 0) {
    throw std::invalid_argument("sample_g: empty phase sequence");
  }
  for (double x : xs) {
    check_domain(x);
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  if (kernel == EvalKernel::real_so3) {
    std::vector<double> c2(m);
    std::vector<double> s2(m);
    for (int k = 0; k < m; ++k) {
      c2[k] = std::cos(2.0 * phi.phases[k]);
      s2[k] = std::sin(2.0 * phi.phases[k]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] =
          g_real_so3(xs[i], c2.data(), s2.data(), m, phi.parity);
    }
    return out;
  }
  const FullPhaseFactors full = build_full(phi);
  const int d = full.degree();
  std::vector<double> cp(d + 1);
  std::vector<double> sp(d + 1);
  for (int j = 0; j <= d; ++j) {
    cp[j] = std::cos(full.psi[j]);
    sp[j] = std::sin(full.psi[j]);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] =
        g_complex_row(xs[i], cp.data(), sp.data(), d);
  }
  return out;
}

}  // namespace sqsp

#include "sqsp/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqsp {

ReducedPhaseFactors::ReducedPhaseFactors(Parity p, Eigen::VectorXd v)
    : parity(p), phases(std::move(v)) {
  if (phases.size() < 1) {
    throw std::invalid_argument("ReducedPhaseFactors: phase vector must be non-empty");
  }
}

ReducedPhaseFactors ReducedPhaseFactors::zeros(Parity p, int reduced_size) {
  if (reduced_size < 1) {
    throw std::invalid_argument("ReducedPhaseFactors: reduced size must be >= 1");
  }
  return ReducedPhaseFactors(p, Eigen::VectorXd::Zero(reduced_size));
}

FullPhaseFactors::FullPhaseFactors(Eigen::VectorXd v, bool symmetric_flag)
    : psi(std::move(v)), symmetric(symmetric_flag) {
  if (psi.size() < 1) {
    throw std::invalid_argument("FullPhaseFactors: phase vector must be non-empty");
  }
}

ChebyshevCoeffVector::ChebyshevCoeffVector(Parity p, Eigen::VectorXd c)
    : parity(p), coeffs(std::move(c)) {
  if (coeffs.size() < 1) {
    throw std::invalid_argument("ChebyshevCoeffVector: coefficient vector must be non-empty");
  }
}

ChebyshevCoeffVector ChebyshevCoeffVector::zeros(Parity p, int size) {
  if (size < 1) {
    throw std::invalid_argument("ChebyshevCoeffVector: size must be >= 1");
  }
  return ChebyshevCoeffVector(p, Eigen::VectorXd::Zero(size));
}

FullPhaseFactors build_full(const ReducedPhaseFactors& phi) {
  const int m = phi.reduced_size();
  if (m < 1) {
    throw std::invalid_argument("build_full: empty reduced phase vector");
  }
  const int d = phi.degree();
  Eigen::VectorXd psi(d + 1);
  if (phi.parity == Parity::even) {
    // (phi_{m-1},...,phi_1, 2*phi_0, phi_1,...,phi_{m-1}), length 2m-1
    psi[m - 1] = 2.0 * phi.phases[0];
    for (int k = 1; k < m; ++k) {
      const double v = phi.phases[k];
      psi[m - 1 - k] = v;
      psi[m - 1 + k] = v;
    }
  } else {
    // (phi_{m-1},...,phi_1, phi_0, phi_0, phi_1,...,phi_{m-1}), length 2m
    for (int k = 0; k < m; ++k) {
      const double v = phi.phases[k];
      psi[m - 1 - k] = v;
      psi[m + k] = v;
    }
  }
  return FullPhaseFactors(std::move(psi), true);
}

FullPhaseFactors shift_phase(const FullPhaseFactors& psi, int k, double delta) {
  const int d = psi.degree();
  if (k < 0 || k > d) {
    throw std::out_of_range("shift_phase: index out of range");
  }
  FullPhaseFactors out = psi;
  out.psi[k] += delta;
  out.symmetric = psi.symmetric && (k == d - k);
  return out;
}

ReducedPhaseFactors canonicalize_center_phase(const ReducedPhaseFactors& phi) {
  // Shifting phi_0 by pi multiplies the QSP product by (-1)^2 = 1 (odd parity:
  // both center slots pick up -I) or shifts the doubled center phase by 2*pi
  // (even parity), so g is exactly invariant; reduce phi_0 into [-pi/2, pi/2).
  constexpr double pi = std::numbers::pi;
  ReducedPhaseFactors out = phi;
  double v = out.phases[0];
  v -= pi * std::floor(v / pi + 0.5);
  out.phases[0] = v;
  return out;
}

}  // namespace sqsp

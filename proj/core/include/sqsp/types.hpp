#pragma once

#include <Eigen/Dense>

namespace sqsp {

// Parity of the encoded polynomial's degree d.
enum class Parity { even, odd };

constexpr int parity_bit(Parity p) { return p == Parity::odd ? 1 : 0; }

inline Parity parity_of_degree(int degree) {
  return degree % 2 != 0 ? Parity::odd : Parity::even;
}

// The independent half Phi of a symmetric phase-factor sequence.  The induced
// full sequence has degree d = 2*d~ - 2 + parity, where d~ = phases.size().
struct ReducedPhaseFactors {
  Parity parity = Parity::even;
  Eigen::VectorXd phases;

  ReducedPhaseFactors() = default;
  ReducedPhaseFactors(Parity p, Eigen::VectorXd v);

  static ReducedPhaseFactors zeros(Parity p, int reduced_size);

  int reduced_size() const { return static_cast<int>(phases.size()); }
  int degree() const { return 2 * reduced_size() - 2 + parity_bit(parity); }
};

// A full phase-factor sequence Psi of length degree+1.  symmetric means
// psi[i] == psi[d-i] bit-for-bit (mirrored entries are copies, not recomputed).
struct FullPhaseFactors {
  Eigen::VectorXd psi;
  bool symmetric = false;

  FullPhaseFactors() = default;
  explicit FullPhaseFactors(Eigen::VectorXd v, bool symmetric_flag = false);

  int degree() const { return static_cast<int>(psi.size()) - 1; }
};

// Coefficients c of a definite-parity Chebyshev series:
//   even: f(x) = sum_j c[j] T_{2j}(x),  odd: f(x) = sum_j c[j] T_{2j+1}(x).
struct ChebyshevCoeffVector {
  Parity parity = Parity::even;
  Eigen::VectorXd coeffs;

  ChebyshevCoeffVector() = default;
  ChebyshevCoeffVector(Parity p, Eigen::VectorXd c);

  static ChebyshevCoeffVector zeros(Parity p, int size);

  int size() const { return static_cast<int>(coeffs.size()); }
  int degree() const { return 2 * (size() - 1) + parity_bit(parity); }
  double l1_norm() const { return coeffs.lpNorm<1>(); }
};

// Mirrors Phi into the symmetric full sequence:
//   even: (phi_{m-1},...,phi_1, 2*phi_0, phi_1,...,phi_{m-1})
//   odd:  (phi_{m-1},...,phi_1, phi_0, phi_0, phi_1,...,phi_{m-1})
FullPhaseFactors build_full(const ReducedPhaseFactors& phi);

// Copy of psi with psi[k] += delta.  The symmetric flag survives only when the
// shifted entry is its own mirror (k == d-k).
FullPhaseFactors shift_phase(const FullPhaseFactors& psi, int k, double delta);

// Reporting-only reduction of the center phase: shifts phi_0 by multiples of
// pi, which leaves g(x, Phi) exactly invariant for both parities.  Off-center
// entries are reported raw.
ReducedPhaseFactors canonicalize_center_phase(const ReducedPhaseFactors& phi);

}  // namespace sqsp

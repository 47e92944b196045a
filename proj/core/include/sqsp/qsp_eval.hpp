#pragma once

#include <complex>
#include <span>

#include "sqsp/types.hpp"

namespace sqsp {

using Su2Matrix = Eigen::Matrix2cd;

// Point on the unit sphere tracked by the real-arithmetic recurrence:
// a = Re<0|U|0>, g = Im<0|U|0>, alpha = sqrt(1-x^2) * (second polynomial).
struct So3State {
  double a = 0.0;
  double g = 0.0;
  double alpha = 0.0;

  double norm() const;
};

// W(x) = [[x, i*sqrt(1-x^2)], [i*sqrt(1-x^2), x]]; |x| <= 1 required.
Su2Matrix w_matrix(double x);

// U(x, Psi) = e^{i psi_0 Z} * prod_{j=1..d} [ W(x) e^{i psi_j Z} ],
// evaluated left to right as 2x2 products.
Su2Matrix evaluate_u(double x, const FullPhaseFactors& psi);

// g = Im<0|U(x,Psi)|0> for an arbitrary (possibly non-symmetric) sequence.
// This is the only evaluation path defined for non-symmetric Psi.
double evaluate_g(double x, const FullPhaseFactors& psi);

// g via the complex path on the mirrored full sequence of Phi.
double evaluate_g_complex(double x, const ReducedPhaseFactors& phi);

// Rotation by 2*phi about the third axis.
Eigen::Matrix3d so3_rz(double phi);

// Rotation by 2*arccos(x) mixing the first/third components:
// entries 2x^2-1 and 2x*sqrt(1-x^2); |x| <= 1 required.
Eigen::Matrix3d so3_rx(double x);

// Base state of the real recurrence: even (cos 2phi0, sin 2phi0, 0),
// odd (x cos 2phi0, x sin 2phi0, sqrt(1-x^2)).
So3State so3_initial_state(Parity parity, double phi0, double x);

// One recurrence step V <- Rz(2*phi) * Rx(2*arccos x) * V.
So3State so3_step(const So3State& v, double phi, double x);

// g via the real recurrence: base state, steps for phi_1..phi_{m-2}, then a
// final Rx followed by the contraction (sin 2phi_{m-1}, cos 2phi_{m-1}, 0).
// For m = 1 the g-component of the base state is returned directly.
// Agrees with evaluate_g_complex to ~1e-13.
double evaluate_g_real(double x, const ReducedPhaseFactors& phi);

enum class EvalKernel { real_so3, complex_su2 };

// Batch evaluation of g over a node set with the per-Phi trig tables hoisted
// out of the node loop.  Nodes are independent; results are deterministic.
Eigen::VectorXd sample_g(const ReducedPhaseFactors& phi,
                         std::span<const double> xs,
                         EvalKernel kernel = EvalKernel::real_so3);

}  // namespace sqsp

#pragma once

#include <span>

#include "sqsp/types.hpp"

namespace sqsp {

// Dense d~ x d~ real matrix; column i = dF/dphi_i.  At Phi = 0 it equals 2I.
using JacobianMatrix = Eigen::MatrixXd;

// Derivative samples S(i, j) = dg(x_j, Phi)/dphi_i at arbitrary nodes xs.
// One left/right pair of partial products per node, updated in place as i
// advances, so a full row set costs O(d~) per node instead of O(d~^2).
// Each sample equals 2*g(x, Psi + (pi/2) e_{d-i}) on the mirrored sequence.
Eigen::MatrixXd derivative_samples_complex(const ReducedPhaseFactors& phi,
                                           std::span<const double> xs);

// Same values via the SO(3) covector/vector sweep; agrees with the complex
// sweep to ~1e-13.
Eigen::MatrixXd derivative_samples_real(const ReducedPhaseFactors& phi,
                                        std::span<const double> xs);

// DF(Phi) assembled from sweep samples on the node set
// x_j = cos(pi(2j+1)/(4n)), where n is the smallest integer >= d~ whose odd
// part is at most 7.  The parity-pure degree-d rows are exactly determined
// by any n >= d~ such nodes, and each row reduces to one length-n cosine
// transform whose bins past d~-1 vanish; padding keeps the transform length
// FFT-friendly for every d~.  Total cost O(d^2 log d); wall time stays
// within a small multiple of one evaluate_F.
JacobianMatrix jacobian_mps_complex(const ReducedPhaseFactors& phi);
JacobianMatrix jacobian_mps_real(const ReducedPhaseFactors& phi);

// Central-difference oracle: column i = (F(Phi + h e_i) - F(Phi - h e_i))/2h.
JacobianMatrix jacobian_fd(const ReducedPhaseFactors& phi, double h = 1e-6);

}  // namespace sqsp

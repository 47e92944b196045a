#pragma once

#include <span>
#include <vector>

#include "sqsp/types.hpp"

namespace sqsp {

// Equispaced-angle interpolation nodes x_j = cos(2*pi*j/(2d+1)), j = 0..d.
// Strictly decreasing in j with x_0 = 1.
struct SampleGrid {
  explicit SampleGrid(int degree);

  int degree = 0;
  std::vector<double> nodes;
};

// Recovers the parity-selected Chebyshev coefficients of a degree-<=d,
// parity-matching polynomial from its values on SampleGrid(d).  The samples
// are mirrored to length 2d+1 (g_{2d+1-j} = g_j), transformed with the odd
// DFT, and the real parts of the parity bins are scaled by 2/(2d+1), with the
// l = 0 bin halved.  The sample count must be d+1 with d matching the parity.
ChebyshevCoeffVector coefficients_from_samples(std::span<const double> samples,
                                               Parity parity);

// Clenshaw evaluation of the definite-parity series; |x| <= 1 required.
double evaluate_series(const ChebyshevCoeffVector& c, double x);

// Max of |f| over the dense Chebyshev grid x_k = cos(k*pi/(grid_points-1)).
// grid_points = 0 selects the default max(2048, 8*degree)+1, which keeps the
// divisor even so that x = 0 is an exact grid node (cosine-type targets attain
// their sup-norm there; missing it under-measures the norm and breaks
// rescaling in the nearly-fully-coherent regime).  Explicit values must
// satisfy grid_points >= max(2, 4*degree).
double infinity_norm(const ChebyshevCoeffVector& c, int grid_points = 0);

}  // namespace sqsp

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sqsp {

// DFT of a real vector of odd length n: X_l = sum_j v_j exp(-2*pi*i*j*l/n).
// The coefficient pipeline only ever needs odd n = 2d+1, so even lengths are
// rejected to catch caller bugs.  Implemented as Bluestein's chirp-z
// re-expression over a power-of-two cyclic convolution, which keeps odd
// (including prime) lengths at O(n log n).  Plans are immutable after
// construction; transform() allocates its own scratch and is safe to call
// concurrently on one shared plan.
class OddLengthDft {
 public:
  explicit OddLengthDft(int n);

  int size() const { return n_; }

  void transform(std::span<const double> in,
                 std::span<std::complex<double>> out) const;

 private:
  int n_ = 0;
  int m_ = 0;  // convolution length, power of two >= 2n-1
  std::vector<std::complex<double>> chirp_;       // w_j = exp(-i*pi*j^2/n)
  std::vector<std::complex<double>> kernel_fft_;  // FFT of the wrapped conjugate chirp
  std::vector<std::complex<double>> twiddle_;     // exp(-2*pi*i*k/m), k < m/2
};

// One-shot convenience wrapper.
std::vector<std::complex<double>> dft_odd_length(std::span<const double> v);

// Process-wide plan cache keyed by length (plans are reused across the solver
// iterations that transform the same grid size repeatedly).
const OddLengthDft& shared_odd_dft_plan(int n);

}  // namespace sqsp

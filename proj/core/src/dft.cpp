#include "sqsp/dft.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sqsp {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place iterative radix-2 FFT.  twiddle holds exp(-2*pi*i*k/m) for
// k < m/2; the inverse transform conjugates them and scales by 1/m.
void fft_pow2(std::span<std::complex<double>> a,
              std::span<const std::complex<double>> twiddle, bool inverse) {
  const std::size_t m = a.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = m / len;
    for (std::size_t base = 0; base < m; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddle[k * step];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = a[base + k];
        const std::complex<double> v = a[base + k + half] * w;
        a[base + k] = u + v;
        a[base + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(m);
    for (auto& z : a) z *= scale;
  }
}

}  // namespace

OddLengthDft::OddLengthDft(int n) : n_(n) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("OddLengthDft: length must be odd and positive");
  }
  if (n == 1) return;

  int m = 1;
  while (m < 2 * n - 1) m <<= 1;
  m_ = m;

  // exp(-i*pi*j^2/n) has period 2n in j^2; reducing j^2 mod 2n in integers
  // keeps the phase argument small and accurate for large n.
  chirp_.resize(n);
  for (int j = 0; j < n; ++j) {
    const std::int64_t q = (static_cast<std::int64_t>(j) * j) % (2 * n);
    const double angle = -kPi * static_cast<double>(q) / n;
    chirp_[j] = {std::cos(angle), std::sin(angle)};
  }

  twiddle_.resize(m / 2);
  for (int k = 0; k < m / 2; ++k) {
    const double angle = -2.0 * kPi * k / m;
    twiddle_[k] = {std::cos(angle), std::sin(angle)};
  }

  // Wrapped convolution kernel b_k = conj(w_k) for |k| <= n-1 (b is even).
  kernel_fft_.assign(m, {0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    const std::complex<double> b = std::conj(chirp_[k]);
    kernel_fft_[k] = b;
    if (k > 0) kernel_fft_[m - k] = b;
  }
  fft_pow2(kernel_fft_, twiddle_, /*inverse=*/false);
}

void OddLengthDft::transform(std::span<const double> in,
                             std::span<std::complex<double>> out) const {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw std::invalid_argument("OddLengthDft::transform: size mismatch");
  }
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  std::vector<std::complex<double>> work(m_, {0.0, 0.0});
  for (int j = 0; j < n_; ++j) work[j] = in[j] * chirp_[j];
  fft_pow2(work, twiddle_, /*inverse=*/false);
  for (int k = 0; k < m_; ++k) work[k] *= kernel_fft_[k];
  fft_pow2(work, twiddle_, /*inverse=*/true);
  for (int l = 0; l < n_; ++l) out[l] = chirp_[l] * work[l];
}

std::vector<std::complex<double>> dft_odd_length(std::span<const double> v) {
  const OddLengthDft plan(static_cast<int>(v.size()));
  std::vector<std::complex<double>> out(v.size());
  plan.transform(v, out);
  return out;
}

const OddLengthDft& shared_odd_dft_plan(int n) {
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<OddLengthDft>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<OddLengthDft>(n);
  return *slot;
}

}  // namespace sqsp

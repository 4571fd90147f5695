#pragma once

#include "sphsamp/sphere_core.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace sphsamp {

/// Unnormalized discrete Fourier transforms of arbitrary length.
///
///   forward:  X_k = sum_j x_j exp(-2 pi i j k / n)
///   backward: x_j = sum_k X_k exp(+2 pi i j k / n)
///
/// Frequency m is stored in slot (m mod n). Not thread-safe: keep one
/// instance per thread (plans are cached per length).
class Dft {
 public:
  Dft() { fft_.SetFlag(Eigen::FFT<double>::Unscaled); }

  void forward(const std::vector<Complex>& in, std::vector<Complex>& out) {
    if (in.size() == 1) out = in;  // kissfft does not handle length 1
    else fft_.fwd(out, in);
  }
  void backward(const std::vector<Complex>& in, std::vector<Complex>& out) {
    if (in.size() == 1) out = in;
    else fft_.inv(out, in);
  }

 private:
  Eigen::FFT<double> fft_;
};

/// Slot of signed frequency m in a length-n spectrum.
inline int freq_slot(int m, int n) noexcept { return ((m % n) + n) % n; }

/// (-1)^k for any integer k.
inline double parity(int k) noexcept { return (k & 1) ? -1.0 : 1.0; }

/// i^k for any integer k.
inline Complex ipow(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace sphsamp

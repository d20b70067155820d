#pragma once

#include <memory>
#include <vector>

#include "qtsolve/complex_adjoint.hpp"

namespace qtsolve {

/// Thin FFTW wrapper with a process-wide plan cache (one plan pair per size,
/// planning is serialized; execution is safe concurrently on distinct
/// buffers).  Transforms are unnormalized:
///   dft_minus(v)[k] = sum_j v[j] exp(-2 pi p j k / n)
///   dft_plus(v)[k]  = sum_j v[j] exp(+2 pi p j k / n)
/// dft_plus is the transform of the quaternion Fourier matrix convention
/// (exponent +p); dft_minus(dft_plus(v)) = n * v.
class Fft {
 public:
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  static std::shared_ptr<const Fft> plan(std::size_t n);

  std::size_t size() const { return n_; }

  void dft_minus(const C01* in, C01* out) const;
  void dft_plus(const C01* in, C01* out) const;

  std::vector<C01> dft_minus(const std::vector<C01>& in) const;
  std::vector<C01> dft_plus(const std::vector<C01>& in) const;

 private:
  explicit Fft(std::size_t n);

  std::size_t n_;
  void* plan_minus_ = nullptr;  // fftw_plan
  void* plan_plus_ = nullptr;
};

}  // namespace qtsolve

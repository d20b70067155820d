#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "qtsolve/fft.hpp"
#include "qtsolve/quaternion.hpp"
#include "qtsolve/symbols.hpp"
#include "qtsolve/toeplitz.hpp"

namespace qtsolve {

/// Quaternion circulant operator stored by its first column; each row is the
/// previous row rotated one to the right.
class QCirculant {
 public:
  explicit QCirculant(std::vector<Quaternion> column);

  std::size_t size() const { return static_cast<std::size_t>(col_.size()); }
  const std::vector<Quaternion>& column() const { return col_; }

  QVector apply(const QVector& x) const;

  QMatrixDense densify(std::size_t cap = 2048) const;

 private:
  std::vector<Quaternion> col_;
  std::shared_ptr<const Fft> fft_;
  std::vector<C01> spec_phi1_;  // dft_minus of the column splits (convolution)
  std::vector<C01> spec_phi2_;
};

/// Strang's circulant preconditioner c(T): copies the central diagonals of T
/// and wraps them; for even n the middle slot is zero.
QCirculant strang(const HermitianQToeplitz& t);

/// Thrown when a 2x2 eigen-block is numerically singular.
class SingularBlockError : public std::runtime_error {
 public:
  SingularBlockError(std::size_t frequency, double det_magnitude);
  std::size_t frequency() const { return frequency_; }
  double det_magnitude() const { return det_magnitude_; }

 private:
  std::size_t frequency_;
  double det_magnitude_;
};

/// FFT block diagonalization of a quaternion circulant into n 2x2 blocks in
/// Q_(0,1): with d1 = dft_plus(phi1(col)), d2 = dft_plus(phi2(col)) and the
/// conjugate-partner index s~ = (n-s) mod n,
///   H_s = [[d1(s), -d2(s)], [conj(d2(s~)), conj(d1(s~))]].
/// For Strang preconditioners of symbol-built Toeplitz operators,
/// sigma(H_s) = sigma(G[f_m](2 pi s / n)) with m = floor((n-1)/2), the number
/// of off-diagonal coefficients the Strang column carries.
class BlockDiagFactor {
 public:
  explicit BlockDiagFactor(const QCirculant& c);

  std::size_t size() const { return n_; }

  GBlock block(std::size_t s) const;

  bool blocks_hermitian(double tol = 1e-10) const;

  /// C^{-1} r through forward transforms, n independent 2x2 solves, inverse
  /// transforms.  Throws SingularBlockError naming the offending frequency.
  QVector solve(const QVector& r) const;

  /// The right spectrum with multiplicity: the 2n block eigenvalues collapse
  /// into n coincident pairs.  Requires Hermitian blocks.
  std::vector<double> spectrum(double hermitian_tol = 1e-8) const;

 private:
  std::size_t partner(std::size_t s) const { return (n_ - s) % n_; }

  std::size_t n_ = 0;
  std::vector<C01> d1_;
  std::vector<C01> d2_;
  std::shared_ptr<const Fft> fft_;
};

}  // namespace qtsolve

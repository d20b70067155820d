#pragma once

#include <memory>
#include <vector>

#include "qtsolve/fft.hpp"
#include "qtsolve/quaternion.hpp"
#include "qtsolve/symbols.hpp"

namespace qtsolve {

/// Hermitian quaternion Toeplitz operator stored by its first column
/// t_0..t_{n-1} (t_0 real): entry (s, l) = t_{s-l} for s >= l and
/// conj(t_{l-s}) otherwise.  Never densified for large n; apply() runs in
/// O(n log n) through 2n-point circulant embedding of the phi1/phi2 parts.
class HermitianQToeplitz {
 public:
  explicit HermitianQToeplitz(std::vector<Quaternion> column);

  static HermitianQToeplitz from_symbol(const SymbolModel& model, std::size_t n);

  std::size_t size() const { return n_; }
  const std::vector<Quaternion>& column() const { return col_; }

  /// Fast matvec; matches the dense triple-loop product to rounding.
  QVector apply(const QVector& x) const;

  /// Exact dense materialization for small n (oracle path).
  QMatrixDense densify(std::size_t cap = 2048) const;

 private:
  std::vector<C01> embed_apply(const std::vector<C01>& spectrum_col,
                               const std::vector<C01>& x) const;

  std::size_t n_ = 0;
  std::vector<Quaternion> col_;
  std::shared_ptr<const Fft> fft_;      // 2n-point plans
  std::vector<C01> embedded_phi1_;      // dft_minus of the embedded phi1 column
  std::vector<C01> embedded_phi2_;
};

}  // namespace qtsolve

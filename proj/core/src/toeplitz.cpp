#include "qtsolve/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

namespace qtsolve {

HermitianQToeplitz::HermitianQToeplitz(std::vector<Quaternion> column)
    : n_(column.size()), col_(std::move(column)) {
  if (n_ == 0) throw std::invalid_argument("HermitianQToeplitz: empty column");
  const Quaternion t0 = col_[0];
  const double imag = std::abs(t0.a1) + std::abs(t0.a2) + std::abs(t0.a3);
  if (imag > 1e-10 * std::max(1.0, t0.abs()))
    throw std::invalid_argument("HermitianQToeplitz: t0 must be real");
  col_[0] = Quaternion(t0.a0);

  // Embedding column of the 2n circulant wrapping a Toeplitz with column c
  // and row r: (c_0 .. c_{n-1}, 0, r_{n-1} .. r_1).  For this operator the
  // phi1 part has row conj(phi1(t_s)) and the phi2 part has row -phi2(t_s).
  const std::size_t m = 2 * n_;
  fft_ = Fft::plan(m);
  std::vector<C01> e1(m, C01(0.0, 0.0)), e2(m, C01(0.0, 0.0));
  for (std::size_t s = 0; s < n_; ++s) {
    e1[s] = phi1(col_[s]);
    e2[s] = phi2(col_[s]);
  }
  for (std::size_t s = 1; s < n_; ++s) {
    e1[m - s] = std::conj(phi1(col_[s]));
    e2[m - s] = -phi2(col_[s]);
  }
  embedded_phi1_ = fft_->dft_minus(e1);
  embedded_phi2_ = fft_->dft_minus(e2);
}

HermitianQToeplitz HermitianQToeplitz::from_symbol(const SymbolModel& model, std::size_t n) {
  return HermitianQToeplitz(model.coefficients(n));
}

std::vector<C01> HermitianQToeplitz::embed_apply(const std::vector<C01>& spectrum_col,
                                                 const std::vector<C01>& x) const {
  const std::size_t m = 2 * n_;
  std::vector<C01> padded(m, C01(0.0, 0.0));
  std::copy(x.begin(), x.end(), padded.begin());
  std::vector<C01> hat = fft_->dft_minus(padded);
  for (std::size_t s = 0; s < m; ++s) hat[s] *= spectrum_col[s];
  std::vector<C01> conv = fft_->dft_plus(hat);
  std::vector<C01> out(n_);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t s = 0; s < n_; ++s) out[s] = conv[s] * scale;
  return out;
}

QVector HermitianQToeplitz::apply(const QVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("HermitianQToeplitz::apply: length mismatch");
  const CSplitVector xs = split(x);
  const CSplitVector ys =
      csplit_qmatvec([this](const std::vector<C01>& v) { return embed_apply(embedded_phi1_, v); },
                     [this](const std::vector<C01>& v) { return embed_apply(embedded_phi2_, v); },
                     xs);
  return recombine(ys);
}

QMatrixDense HermitianQToeplitz::densify(std::size_t cap) const {
  if (n_ > cap) throw std::invalid_argument("HermitianQToeplitz::densify: size above cap");
  QMatrixDense out(n_, n_);
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t l = 0; l < n_; ++l)
      out(s, l) = s >= l ? col_[s - l] : col_[l - s].conj();
  return out;
}

}  // namespace qtsolve

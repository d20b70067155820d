#include "qtsolve/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qtsolve {

QCirculant::QCirculant(std::vector<Quaternion> column) : col_(std::move(column)) {
  if (col_.empty()) throw std::invalid_argument("QCirculant: empty column");
  const std::size_t n = col_.size();
  fft_ = Fft::plan(n);
  std::vector<C01> v1(n), v2(n);
  for (std::size_t s = 0; s < n; ++s) {
    v1[s] = phi1(col_[s]);
    v2[s] = phi2(col_[s]);
  }
  spec_phi1_ = fft_->dft_minus(v1);
  spec_phi2_ = fft_->dft_minus(v2);
}

QVector QCirculant::apply(const QVector& x) const {
  const std::size_t n = size();
  if (x.size() != n) throw std::invalid_argument("QCirculant::apply: length mismatch");
  const auto convolve = [this, n](const std::vector<C01>& spec, const std::vector<C01>& v) {
    std::vector<C01> hat = fft_->dft_minus(v);
    for (std::size_t s = 0; s < n; ++s) hat[s] *= spec[s];
    std::vector<C01> out = fft_->dft_plus(hat);
    const double scale = 1.0 / static_cast<double>(n);
    for (C01& c : out) c *= scale;
    return out;
  };
  const CSplitVector xs = split(x);
  const CSplitVector ys =
      csplit_qmatvec([&](const std::vector<C01>& v) { return convolve(spec_phi1_, v); },
                     [&](const std::vector<C01>& v) { return convolve(spec_phi2_, v); }, xs);
  return recombine(ys);
}

QMatrixDense QCirculant::densify(std::size_t cap) const {
  const std::size_t n = size();
  if (n > cap) throw std::invalid_argument("QCirculant::densify: size above cap");
  QMatrixDense out(n, n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t l = 0; l < n; ++l) out(s, l) = col_[(s + n - l) % n];
  return out;
}

QCirculant strang(const HermitianQToeplitz& t) {
  const std::size_t n = t.size();
  const std::vector<Quaternion>& col = t.column();
  const std::size_t half = (n - 1) / 2;
  std::vector<Quaternion> v;
  v.reserve(n);
  for (std::size_t s = 0; s <= half; ++s) v.push_back(col[s]);
  if (n % 2 == 0) v.emplace_back();
  for (std::size_t s = half; s >= 1; --s) v.push_back(col[s].conj());
  return QCirculant(std::move(v));
}

SingularBlockError::SingularBlockError(std::size_t frequency, double det_magnitude)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "singular circulant eigen-block at frequency " << frequency
            << " (|det| = " << det_magnitude << ")";
        return msg.str();
      }()),
      frequency_(frequency),
      det_magnitude_(det_magnitude) {}

BlockDiagFactor::BlockDiagFactor(const QCirculant& c) : n_(c.size()) {
  fft_ = Fft::plan(n_);
  std::vector<C01> v1(n_), v2(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    v1[s] = phi1(c.column()[s]);
    v2[s] = phi2(c.column()[s]);
  }
  d1_ = fft_->dft_plus(v1);
  d2_ = fft_->dft_plus(v2);
}

GBlock BlockDiagFactor::block(std::size_t s) const {
  if (s >= n_) throw std::out_of_range("BlockDiagFactor::block: frequency out of range");
  const std::size_t st = partner(s);
  return {d1_[s], -d2_[s], std::conj(d2_[st]), std::conj(d1_[st])};
}

bool BlockDiagFactor::blocks_hermitian(double tol) const {
  for (std::size_t s = 0; s < n_; ++s)
    if (!block(s).is_hermitian(tol)) return false;
  return true;
}

QVector BlockDiagFactor::solve(const QVector& r) const {
  if (r.size() != n_) throw std::invalid_argument("BlockDiagFactor::solve: length mismatch");
  const CSplitVector rs = split(r);
  std::vector<C01> conj2(n_);
  for (std::size_t s = 0; s < n_; ++s) conj2[s] = std::conj(rs.part2[s]);
  const std::vector<C01> u = fft_->dft_plus(rs.part1);
  const std::vector<C01> v = fft_->dft_plus(conj2);

  std::vector<C01> a(n_), b(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    const std::size_t st = partner(s);
    const C01 h11 = d1_[s];
    const C01 h12 = -d2_[s];
    const C01 h21 = std::conj(d2_[st]);
    const C01 h22 = std::conj(d1_[st]);
    const C01 det = h11 * h22 - h12 * h21;
    const double fro2 = std::norm(h11) + std::norm(h12) + std::norm(h21) + std::norm(h22);
    if (std::abs(det) <= 1e-14 * fro2 || fro2 == 0.0)
      throw SingularBlockError(s, std::abs(det));
    a[s] = (h22 * u[s] - h12 * v[s]) / det;
    b[s] = (h11 * v[s] - h21 * u[s]) / det;
  }

  std::vector<C01> z1 = fft_->dft_minus(a);
  std::vector<C01> zb = fft_->dft_minus(b);
  const double scale = 1.0 / static_cast<double>(n_);
  CSplitVector out;
  out.part1.resize(n_);
  out.part2.resize(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    out.part1[s] = z1[s] * scale;
    out.part2[s] = std::conj(zb[s] * scale);
  }
  return recombine(out);
}

std::vector<double> BlockDiagFactor::spectrum(double hermitian_tol) const {
  std::vector<double> all;
  all.reserve(2 * n_);
  for (std::size_t s = 0; s < n_; ++s) {
    const GBlock h = block(s);
    if (!h.is_hermitian(hermitian_tol)) {
      std::ostringstream msg;
      msg << "BlockDiagFactor::spectrum: block " << s << " is not Hermitian within tolerance";
      throw std::invalid_argument(msg.str());
    }
    const auto [lo, hi] = h.eigenvalues();
    all.push_back(lo);
    all.push_back(hi);
  }
  std::sort(all.begin(), all.end());
  std::vector<double> out(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    const double a = all[2 * s];
    const double b = all[2 * s + 1];
    if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
      throw std::runtime_error("BlockDiagFactor::spectrum: eigenvalue pairing violation");
    out[s] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace qtsolve

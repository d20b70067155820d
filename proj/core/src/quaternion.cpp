#include "qtsolve/quaternion.hpp"

#include <algorithm>

namespace qtsolve {

PolarForm polar(const Quaternion& x) {
  if (x.is_zero()) throw std::domain_error("polar: zero input has no polar form");
  PolarForm out;
  out.modulus = x.abs();
  const double imag_norm = std::sqrt(x.a1 * x.a1 + x.a2 * x.a2 + x.a3 * x.a3);
  if (imag_norm == 0.0) {
    out.axis = Quaternion::p();
    out.angle = x.a0 > 0.0 ? 0.0 : 4.0 * std::atan(1.0);
  } else {
    out.axis = Quaternion(0.0, x.a1 / imag_norm, x.a2 / imag_norm, x.a3 / imag_norm);
    out.angle = std::atan2(imag_norm, x.a0);
  }
  return out;
}

Quaternion unit_exp(const Quaternion& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return Quaternion(c) + axis * s;
}

Quaternion qpow(const Quaternion& x, std::size_t s) {
  if (s == 0) return Quaternion(1.0);
  const PolarForm pf = polar(x);
  return std::pow(pf.modulus, static_cast<double>(s)) *
         unit_exp(pf.axis, static_cast<double>(s) * pf.angle);
}

Quaternion inner_product(const QVector& x, const QVector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("inner_product: length mismatch");
  Quaternion acc;
  for (std::size_t s = 0; s < x.size(); ++s) acc += y[s].conj() * x[s];
  return acc;
}

double norm2(const QVector& x) {
  double acc = 0.0;
  for (const Quaternion& v : x) acc += v.norm_sq();
  return std::sqrt(acc);
}

QMatrixDense QMatrixDense::identity(std::size_t n) {
  QMatrixDense out(n, n);
  for (std::size_t s = 0; s < n; ++s) out(s, s) = Quaternion(1.0);
  return out;
}

QVector QMatrixDense::matvec(const QVector& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("QMatrixDense::matvec: dimension mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Quaternion acc;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

QMatrixDense QMatrixDense::multiply(const QMatrixDense& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("QMatrixDense::multiply: dimension mismatch");
  QMatrixDense out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Quaternion& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  return out;
}

QMatrixDense QMatrixDense::adjoint() const {
  QMatrixDense out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

bool QMatrixDense::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  double scale = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      scale = std::max(scale, (*this)(r, c).abs());
  const double bound = tol * std::max(1.0, scale);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (((*this)(r, c) - (*this)(c, r).conj()).abs() > bound) return false;
  return true;
}

}  // namespace qtsolve

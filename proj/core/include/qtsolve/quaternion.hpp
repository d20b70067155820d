#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qtsolve {

/// Quaternion scalar a0 + a1*p + a2*q + a3*r over the orthonormal imaginary
/// triple (p, q, r) with p^2 = q^2 = r^2 = -1, pq = -qp = r, qr = -rq = p,
/// rp = -pr = q.  Any orthonormal triple is isomorphic to this table, so the
/// canonical one is fixed here.
struct Quaternion {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double s0, double s1 = 0.0, double s2 = 0.0, double s3 = 0.0)
      : a0(s0), a1(s1), a2(s2), a3(s3) {}

  static constexpr Quaternion p() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion q() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion r() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion conj() const { return {a0, -a1, -a2, -a3}; }

  constexpr double norm_sq() const { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }
  double abs() const { return std::sqrt(norm_sq()); }

  constexpr bool is_zero() const { return a0 == 0.0 && a1 == 0.0 && a2 == 0.0 && a3 == 0.0; }

  /// x^{-1} = conj(x) / |x|^2
  Quaternion inverse() const {
    const double n2 = norm_sq();
    if (n2 == 0.0) throw std::domain_error("Quaternion::inverse: zero input");
    return {a0 / n2, -a1 / n2, -a2 / n2, -a3 / n2};
  }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    a0 += o.a0; a1 += o.a1; a2 += o.a2; a3 += o.a3;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    a0 -= o.a0; a1 -= o.a1; a2 -= o.a2; a3 -= o.a3;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a0 *= s; a1 *= s; a2 *= s; a3 *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) { return *this *= (1.0 / s); }

  constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.a0, -a.a1, -a.a2, -a.a3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

/// Hamilton product; non-commutative.
constexpr Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  return {x.a0 * y.a0 - x.a1 * y.a1 - x.a2 * y.a2 - x.a3 * y.a3,
          x.a0 * y.a1 + x.a1 * y.a0 + x.a2 * y.a3 - x.a3 * y.a2,
          x.a0 * y.a2 - x.a1 * y.a3 + x.a2 * y.a0 + x.a3 * y.a1,
          x.a0 * y.a3 + x.a1 * y.a2 - x.a2 * y.a1 + x.a3 * y.a0};
}

/// Polar decomposition x = modulus * (cos(angle) + axis * sin(angle)) with
/// axis a pure unit quaternion and angle in [0, pi].  Real inputs get the
/// default axis p and angle 0 (x > 0) or pi (x < 0).
struct PolarForm {
  double modulus = 0.0;
  Quaternion axis;
  double angle = 0.0;
};

PolarForm polar(const Quaternion& x);

/// cos(angle) + axis * sin(angle) for a pure unit axis.
Quaternion unit_exp(const Quaternion& axis, double angle);

/// Integer power through the polar form.
Quaternion qpow(const Quaternion& x, std::size_t s);

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

using QVector = std::vector<Quaternion>;

/// <x, y> := y* x = sum_s conj(y(s)) x(s)
Quaternion inner_product(const QVector& x, const QVector& y);

double norm2(const QVector& x);

// ---------------------------------------------------------------------------
// Dense matrices (row-major); the exact arithmetic oracle for fast kernels.
// ---------------------------------------------------------------------------

class QMatrixDense {
 public:
  QMatrixDense() = default;
  QMatrixDense(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrixDense identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Exact triple-loop product in quaternion arithmetic.
  QVector matvec(const QVector& x) const;

  QMatrixDense multiply(const QMatrixDense& other) const;

  /// Conjugate transpose A*.
  QMatrixDense adjoint() const;

  bool is_hermitian(double tol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

}  // namespace qtsolve

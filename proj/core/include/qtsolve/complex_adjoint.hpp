#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qtsolve/quaternion.hpp"

namespace qtsolve {

/// Element of Q_(0,1) = {x + y*p}.  Q_(0,1) is a field isomorphic to the
/// complex field (p plays the role of the imaginary unit), so values are held
/// directly as std::complex<double>.
using C01 = std::complex<double>;

inline C01 phi1(const Quaternion& x) { return {x.a0, x.a1}; }
inline C01 phi2(const Quaternion& x) { return {x.a2, x.a3}; }

/// part1 + part2 * q
inline Quaternion recombine(C01 part1, C01 part2) {
  return {part1.real(), part1.imag(), part2.real(), part2.imag()};
}

struct CSplitVector {
  std::vector<C01> part1;
  std::vector<C01> part2;

  std::size_t size() const { return part1.size(); }
};

CSplitVector split(const QVector& x);
QVector recombine(const CSplitVector& x);

struct CSplitMatrix {
  Eigen::MatrixXcd part1;
  Eigen::MatrixXcd part2;
};

CSplitMatrix split(const QMatrixDense& a);
QMatrixDense recombine(const CSplitMatrix& a);

/// M(A) = [[phi1(A), -phi2(A)], [conj(phi2(A)), conj(phi1(A))]], 2n x 2n.
/// Multiplicative: M(AB) = M(A) M(B); Hermitian A gives Hermitian M(A) whose
/// eigenvalues occur in coincident pairs.
Eigen::MatrixXcd adjoint_matrix(const QMatrixDense& a);

/// V(x) = [phi1(x); conj(phi2(x))], fixed so that V(Ax) = M(A) V(x).
Eigen::VectorXcd adjoint_vector(const QVector& x);

/// Inverse of V: z = [z1; z2] -> z1 + conj(z2) q.  Rejects odd-length input.
QVector adjoint_vector_inverse(const Eigen::VectorXcd& z);

/// Quaternion product out of four commutative ones: for A = A1 + A2 q and
/// x = x1 + x2 q (all parts Q_(0,1)-valued),
///   A x = (A1 x1 - A2 conj(x2)) + (A1 x2 + A2 conj(x1)) q,
/// which follows from q c = conj(c) q for c in Q_(0,1).  apply1/apply2 realize
/// A1 and A2 on complex vectors.
template <typename Apply1, typename Apply2>
CSplitVector csplit_qmatvec(Apply1&& apply1, Apply2&& apply2, const CSplitVector& x) {
  std::vector<C01> conj2(x.part2.size());
  for (std::size_t s = 0; s < x.part2.size(); ++s) conj2[s] = std::conj(x.part2[s]);
  std::vector<C01> conj1(x.part1.size());
  for (std::size_t s = 0; s < x.part1.size(); ++s) conj1[s] = std::conj(x.part1[s]);

  const std::vector<C01> a1x1 = apply1(x.part1);
  const std::vector<C01> a2c2 = apply2(conj2);
  const std::vector<C01> a1x2 = apply1(x.part2);
  const std::vector<C01> a2c1 = apply2(conj1);

  CSplitVector out;
  out.part1.resize(a1x1.size());
  out.part2.resize(a1x1.size());
  for (std::size_t s = 0; s < a1x1.size(); ++s) {
    out.part1[s] = a1x1[s] - a2c2[s];
    out.part2[s] = a1x2[s] + a2c1[s];
  }
  return out;
}

/// Dense realization of the rule above.
CSplitVector csplit_qmatvec(const CSplitMatrix& a, const CSplitVector& x);

}  // namespace qtsolve

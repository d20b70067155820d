#include "qtsolve/complex_adjoint.hpp"

#include <stdexcept>

namespace qtsolve {

CSplitVector split(const QVector& x) {
  CSplitVector out;
  out.part1.resize(x.size());
  out.part2.resize(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    out.part1[s] = phi1(x[s]);
    out.part2[s] = phi2(x[s]);
  }
  return out;
}

QVector recombine(const CSplitVector& x) {
  if (x.part1.size() != x.part2.size())
    throw std::invalid_argument("recombine: part shapes disagree");
  QVector out(x.part1.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = recombine(x.part1[s], x.part2[s]);
  return out;
}

CSplitMatrix split(const QMatrixDense& a) {
  CSplitMatrix out;
  out.part1.resize(a.rows(), a.cols());
  out.part2.resize(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out.part1(r, c) = phi1(a(r, c));
      out.part2(r, c) = phi2(a(r, c));
    }
  return out;
}

QMatrixDense recombine(const CSplitMatrix& a) {
  if (a.part1.rows() != a.part2.rows() || a.part1.cols() != a.part2.cols())
    throw std::invalid_argument("recombine: part shapes disagree");
  QMatrixDense out(static_cast<std::size_t>(a.part1.rows()),
                   static_cast<std::size_t>(a.part1.cols()));
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out(r, c) = recombine(a.part1(r, c), a.part2(r, c));
  return out;
}

Eigen::MatrixXcd adjoint_matrix(const QMatrixDense& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("adjoint_matrix: square input required");
  const auto n = static_cast<Eigen::Index>(a.rows());
  const CSplitMatrix parts = split(a);
  Eigen::MatrixXcd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = parts.part1;
  out.topRightCorner(n, n) = -parts.part2;
  out.bottomLeftCorner(n, n) = parts.part2.conjugate();
  out.bottomRightCorner(n, n) = parts.part1.conjugate();
  return out;
}

Eigen::VectorXcd adjoint_vector(const QVector& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::VectorXcd out(2 * n);
  for (Eigen::Index s = 0; s < n; ++s) {
    out[s] = phi1(x[static_cast<std::size_t>(s)]);
    out[n + s] = std::conj(phi2(x[static_cast<std::size_t>(s)]));
  }
  return out;
}

QVector adjoint_vector_inverse(const Eigen::VectorXcd& z) {
  if (z.size() % 2 != 0)
    throw std::invalid_argument("adjoint_vector_inverse: odd-length input");
  const Eigen::Index n = z.size() / 2;
  QVector out(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s)
    out[static_cast<std::size_t>(s)] = recombine(z[s], std::conj(z[n + s]));
  return out;
}

CSplitVector csplit_qmatvec(const CSplitMatrix& a, const CSplitVector& x) {
  if (static_cast<std::size_t>(a.part1.cols()) != x.size())
    throw std::invalid_argument("csplit_qmatvec: shape mismatch");
  const auto apply = [](const Eigen::MatrixXcd& m, const std::vector<C01>& v) {
    Eigen::Map<const Eigen::VectorXcd> vm(v.data(), static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXcd res = m * vm;
    return std::vector<C01>(res.data(), res.data() + res.size());
  };
  return csplit_qmatvec([&](const std::vector<C01>& v) { return apply(a.part1, v); },
                        [&](const std::vector<C01>& v) { return apply(a.part2, v); }, x);
}

}  // namespace qtsolve

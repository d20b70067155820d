#include "qtsolve/spectra.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <nlohmann/json.hpp>

#include "qtsolve/circulant.hpp"
#include "qtsolve/complex_adjoint.hpp"
#include "qtsolve/toeplitz.hpp"

namespace qtsolve {

namespace {

constexpr double kPi = std::numbers::pi;

// Collapse the coincident eigenvalue pairs of M(A) into the n right
// eigenvalues.
std::vector<double> collapse_pairs(std::vector<double> sorted) {
  std::vector<double> out(sorted.size() / 2);
  for (std::size_t s = 0; s < out.size(); ++s) {
    const double a = sorted[2 * s];
    const double b = sorted[2 * s + 1];
    if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
      throw std::runtime_error("dense_spectrum: eigenvalue pairing violation");
    out[s] = 0.5 * (a + b);
  }
  return out;
}

Eigen::MatrixXcd hermitian_eigendecomposition(Eigen::MatrixXcd h, std::vector<double>& values) {
  const auto n = static_cast<lapack_int>(h.rows());
  values.assign(static_cast<std::size_t>(n), 0.0);
  const lapack_int info =
      LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', n, h.data(), n, values.data());
  if (info != 0) throw std::runtime_error("zheev failed with info " + std::to_string(info));
  return h;  // eigenvectors
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::MatrixXcd work = h;
  const auto n = static_cast<lapack_int>(work.rows());
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  const lapack_int info =
      LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, values.data());
  if (info != 0) throw std::runtime_error("zheev failed with info " + std::to_string(info));
  return values;
}

SpectrumReport dense_spectrum(const QMatrixDense& a, double hermitian_tol, std::size_t cap) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_spectrum: square input required");
  if (a.rows() > cap) throw std::invalid_argument("dense_spectrum: size above dense cap");
  if (!a.is_hermitian(hermitian_tol))
    throw std::invalid_argument("dense_spectrum: input not Hermitian within tolerance");
  SpectrumReport out;
  out.n = a.rows();
  out.operator_kind = "dense";
  out.eigenvalues = collapse_pairs(hermitian_eigenvalues(adjoint_matrix(a)));
  return out;
}

SzegoMoment szego_moment_check(const SymbolModel& model, std::size_t n,
                               const std::function<double(double)>& f, std::size_t dense_cap) {
  const SpectrumReport spec = dense_spectrum(
      HermitianQToeplitz::from_symbol(model, n).densify(dense_cap), 1e-10, dense_cap);

  SzegoMoment out;
  for (const double lambda : spec.eigenvalues) out.lhs += f(lambda);
  out.lhs /= static_cast<double>(n);

  constexpr std::size_t kQuad = 8192;
  const double h = 2.0 * kPi / kQuad;
  double acc = 0.0;
  for (std::size_t j = 0; j <= kQuad; ++j) {
    const double x = -kPi + h * static_cast<double>(j);
    const auto [fcheck, fhat] = model.extremal(x);
    const double w = (j == 0 || j == kQuad) ? 0.5 : 1.0;
    acc += w * (f(fhat) + f(fcheck));
  }
  out.rhs = acc * h / (4.0 * kPi);
  out.relative_gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
  return out;
}

ClusteringReport clustering_report(const SymbolModel& model, std::size_t n, double eps,
                                   std::size_t dense_cap) {
  if (n > dense_cap) throw std::invalid_argument("clustering_report: size above dense cap");
  const HermitianQToeplitz t = HermitianQToeplitz::from_symbol(model, n);
  const Eigen::MatrixXcd mt = adjoint_matrix(t.densify(dense_cap));
  const Eigen::MatrixXcd mc = adjoint_matrix(strang(t).densify(dense_cap));

  std::vector<double> cw;
  const Eigen::MatrixXcd cv = hermitian_eigendecomposition(mc, cw);
  for (const double w : cw)
    if (w <= 0.0)
      throw std::domain_error("clustering_report: preconditioner is not positive definite");

  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(cw.size()));
  for (Eigen::Index s = 0; s < inv_sqrt.size(); ++s)
    inv_sqrt[s] = 1.0 / std::sqrt(cw[static_cast<std::size_t>(s)]);
  const Eigen::MatrixXcd pinv_half = cv * inv_sqrt.asDiagonal() * cv.adjoint();

  Eigen::MatrixXcd sym = pinv_half * mt * pinv_half;
  sym = 0.5 * (sym + sym.adjoint()).eval();
  const std::vector<double> lambdas = collapse_pairs(hermitian_eigenvalues(sym));

  ClusteringReport out;
  out.n = n;
  out.epsilon = eps;
  out.min_eigenvalue = lambdas.front();
  for (const double lambda : lambdas)
    if (std::abs(lambda - 1.0) > eps) ++out.outside_count;
  return out;
}

void write_spectrum_csv(const SpectrumReport& report, std::ostream& out) {
  out << "# qtsolve spectrum v1 n=" << report.n << " model=" << report.model_name
      << " operator=" << report.operator_kind << "\n";
  out.precision(17);
  for (const double lambda : report.eigenvalues) out << lambda << "\n";
}

void write_spectrum_json(const SpectrumReport& report, std::ostream& out) {
  nlohmann::json doc;
  doc["schema"] = "qtsolve-spectrum-v1";
  doc["n"] = report.n;
  doc["model"] = report.model_name;
  doc["operator"] = report.operator_kind;
  doc["eigenvalues"] = report.eigenvalues;
  out << doc.dump(2) << "\n";
}

}  // namespace qtsolve

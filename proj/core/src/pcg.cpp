#include "qtsolve/pcg.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "qtsolve/circulant.hpp"
#include "qtsolve/toeplitz.hpp"

namespace qtsolve {

namespace {

// Step scalars of PCG on Hermitian operators are real up to rounding; a
// visible imaginary part signals a broken operator.
double real_step_scalar(const Quaternion& value) {
  const double re = std::abs(value.a0);
  const double im =
      std::sqrt(value.a1 * value.a1 + value.a2 * value.a2 + value.a3 * value.a3);
  if (im > 1e-10 * re && im > 1e-300) throw NonRealScalarError(im / std::max(re, 1e-300));
  return value.a0;
}

void axpy(QVector& y, double alpha, const QVector& x) {
  for (std::size_t s = 0; s < y.size(); ++s) y[s] += alpha * x[s];
}

}  // namespace

PcgBreakdownError::PcgBreakdownError(double curvature)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "PCG breakdown: <Ap, p> = " << curvature << " <= 0 (operator not HPD)";
        return msg.str();
      }()),
      curvature_(curvature) {}

NonRealScalarError::NonRealScalarError(double imag_ratio)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "PCG step scalar has imaginary magnitude ratio " << imag_ratio
            << " (operator not Hermitian)";
        return msg.str();
      }()),
      imag_ratio_(imag_ratio) {}

std::pair<QVector, SolveReport> pcg_solve(const LinearOperator& apply_a,
                                          const LinearOperator& apply_pinv, const QVector& b,
                                          const SolveConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n = b.size();
  const std::size_t max_iter = cfg.max_iter != 0 ? cfg.max_iter : 10 * n;

  SolveReport report;
  QVector x(n);
  QVector r = b;
  const double r0_norm = norm2(r);
  const double threshold =
      cfg.reference == ResidualReference::initial_residual ? cfg.tol * r0_norm : cfg.tol;
  if (cfg.record_history) report.residual_history.push_back(r0_norm);

  const auto finish = [&](bool converged) {
    report.converged = converged;
    const QVector residual_check = [&] {
      QVector ax = apply_a(x);
      QVector res(n);
      for (std::size_t s = 0; s < n; ++s) res[s] = b[s] - ax[s];
      return res;
    }();
    report.final_error = norm2(residual_check);
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    return std::make_pair(std::move(x), std::move(report));
  };

  if (r0_norm <= threshold) return finish(true);

  QVector z = apply_pinv(r);
  QVector p = z;
  double rho = real_step_scalar(inner_product(z, r));

  for (std::size_t k = 1; k <= max_iter; ++k) {
    const QVector ap = apply_a(p);
    const double curvature = real_step_scalar(inner_product(ap, p));
    if (curvature <= 0.0) throw PcgBreakdownError(curvature);
    const double alpha = rho / curvature;

    axpy(x, alpha, p);
    if (cfg.refresh_every != 0 && k % cfg.refresh_every == 0) {
      const QVector ax = apply_a(x);
      for (std::size_t s = 0; s < n; ++s) r[s] = b[s] - ax[s];
    } else {
      axpy(r, -alpha, ap);
    }

    const double rn = norm2(r);
    if (cfg.record_history) report.residual_history.push_back(rn);
    report.iterations = k;
    if (rn <= threshold) return finish(true);

    z = apply_pinv(r);
    const double rho_next = real_step_scalar(inner_product(z, r));
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t s = 0; s < n; ++s) p[s] = z[s] + beta * p[s];
  }
  return finish(false);
}

std::pair<QVector, SolveReport> solve_toeplitz(const SymbolModel& model, std::size_t n,
                                               const QVector& b, PreconditionerKind kind,
                                               const SolveConfig& cfg, bool skip_hpd_check) {
  if (!skip_hpd_check && model.hpd_test() != SymbolModel::Definiteness::definite)
    throw std::invalid_argument("solve_toeplitz: symbol is not positive definite");
  const HermitianQToeplitz t = HermitianQToeplitz::from_symbol(model, n);
  const LinearOperator apply_a = [&t](const QVector& v) { return t.apply(v); };
  if (kind == PreconditionerKind::none)
    return pcg_solve(apply_a, [](const QVector& v) { return v; }, b, cfg);
  const BlockDiagFactor factor(strang(t));
  return pcg_solve(apply_a, [&factor](const QVector& v) { return factor.solve(v); }, b, cfg);
}

}  // namespace qtsolve

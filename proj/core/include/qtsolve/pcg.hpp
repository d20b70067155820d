#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtsolve/quaternion.hpp"
#include "qtsolve/symbols.hpp"

namespace qtsolve {

/// What the relative tolerance is measured against.  The residual itself is
/// always the true-system 2-norm ||b - A u||.
enum class ResidualReference {
  initial_residual,  // stop when ||r_k|| <= tol * ||r_0||
  absolute,          // stop when ||r_k|| <= tol
};

struct SolveConfig {
  double tol = 1e-7;
  ResidualReference reference = ResidualReference::initial_residual;
  std::size_t max_iter = 0;        // 0 -> 10 n
  bool record_history = true;
  std::size_t refresh_every = 50;  // recompute r = b - A x this often
};

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // ||r_0||, ||r_1||, ...
  double final_error = 0.0;              // ||b - A u|| recomputed from scratch
  double wall_time_ms = 0.0;
};

/// <Ap, p> <= 0: the operator is not HPD.
class PcgBreakdownError : public std::runtime_error {
 public:
  explicit PcgBreakdownError(double curvature);
  double curvature() const { return curvature_; }

 private:
  double curvature_;
};

/// A step scalar came out non-real beyond tolerance: the operator pair is not
/// Hermitian.
class NonRealScalarError : public std::runtime_error {
 public:
  explicit NonRealScalarError(double imag_ratio);
  double imag_ratio() const { return imag_ratio_; }

 private:
  double imag_ratio_;
};

using LinearOperator = std::function<QVector(const QVector&)>;

/// Preconditioned conjugate gradients for HPD quaternion systems with zero
/// initial guess.  Step scalars are quaternion inner products <x,y> = y* x;
/// they must be real up to rounding (|Im| < 1e-10 |Re|) and their real parts
/// drive the recurrences.  Non-convergence within max_iter is reported, not
/// thrown.
std::pair<QVector, SolveReport> pcg_solve(const LinearOperator& apply_a,
                                          const LinearOperator& apply_pinv, const QVector& b,
                                          const SolveConfig& cfg = {});

enum class PreconditionerKind { none, strang };

/// Wires the fast Toeplitz matvec and the Strang factor solve into pcg_solve.
/// Unless `skip_hpd_check`, the model must grid-test definite.
std::pair<QVector, SolveReport> solve_toeplitz(const SymbolModel& model, std::size_t n,
                                               const QVector& b, PreconditionerKind kind,
                                               const SolveConfig& cfg = {},
                                               bool skip_hpd_check = false);

}  // namespace qtsolve

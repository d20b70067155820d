#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qtsolve/quaternion.hpp"
#include "qtsolve/symbols.hpp"

namespace qtsolve {

struct SpectrumReport {
  std::vector<double> eigenvalues;  // sorted ascending, one per right eigenvalue
  std::size_t n = 0;
  std::string operator_kind;
  std::string model_name;
};

/// Eigenvalues of a Hermitian complex matrix, ascending (LAPACK zheev).
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h);

/// Right spectrum of a Hermitian quaternion matrix through M(A): the 2n
/// eigenvalues occur in coincident pairs which collapse into n values; a
/// pairing gap beyond 1e-8 * max(1, |lambda|) signals a bug upstream and
/// throws.
SpectrumReport dense_spectrum(const QMatrixDense& a, double hermitian_tol = 1e-10,
                              std::size_t cap = 2048);

struct SzegoMoment {
  double lhs = 0.0;  // (1/n) sum F(lambda_s(T_n))
  double rhs = 0.0;  // (1/4pi) int F(fhat) + F(fcheck)
  double relative_gap = 0.0;
};

/// Moment comparison of the spectral distribution against the symbol, with
/// the right side integrated by an 8192-point trapezoid rule.
SzegoMoment szego_moment_check(const SymbolModel& model, std::size_t n,
                               const std::function<double(double)>& f,
                               std::size_t dense_cap = 2048);

struct ClusteringReport {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t outside_count = 0;  // eigenvalues of c(T)^{-1} T outside [1-eps, 1+eps]
  double min_eigenvalue = 0.0;
};

/// Spectrum of the Strang-preconditioned operator via the Hermitian form
/// M(c(T))^{-1/2} M(T) M(c(T))^{-1/2}.
ClusteringReport clustering_report(const SymbolModel& model, std::size_t n, double eps,
                                   std::size_t dense_cap = 2048);

void write_spectrum_csv(const SpectrumReport& report, std::ostream& out);
void write_spectrum_json(const SpectrumReport& report, std::ostream& out);

}  // namespace qtsolve

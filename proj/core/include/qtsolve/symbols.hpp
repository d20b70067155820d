#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtsolve/complex_adjoint.hpp"
#include "qtsolve/quaternion.hpp"

namespace qtsolve {

/// Value of the 2x2 block symbol
///   G[f](x) = [[phi1(f)(x), phi2(f)(x)], [conj(phi2(f)(x)), phi1(f)(-x)]],
/// Hermitian for every x; its eigenvalues are (fcheck(x), fhat(x)).  The sign
/// of the off-diagonal pair is a diag(+-1) similarity convention; this is the
/// Hermitian representative, and the eigenvalues do not depend on the choice.
struct GBlock {
  C01 m11, m12, m21, m22;

  bool is_hermitian(double tol) const;

  /// (lower, upper) eigenvalues of the Hermitian block, closed form.
  std::pair<double, double> eigenvalues() const;
};

/// Generating-function model: covariance sequence eta(s) (t_s = eta(s),
/// t_{-s} = conj(eta(s))) and/or closed-form phi1/phi2 evaluators on
/// [-pi, pi].  phi1(f) is real-valued and phi2(f) odd for every valid model.
class SymbolModel {
 public:
  enum class Definiteness { definite, semidefinite, indefinite };

  static constexpr std::size_t kDefaultGrid = 4096;

  /// f == value (value real): eta(0) = value, all other lags zero.
  static SymbolModel constant(double value);

  /// Covariance of x(t) = beta x(t-1) + e(t): eta(s) = 4 d^2 beta^s / (1-|beta|^2).
  /// Requires |beta| < 1.
  static SymbolModel ar1(const Quaternion& beta, double delta);

  /// Covariance of x(t) = beta e(t-1) + e(t):
  /// eta(0) = 4 d^2 (|beta|^2+1), eta(1) = 4 d^2 beta, eta(s>=2) = 0.
  /// Any beta is accepted; the closed forms never need |beta| < 1.
  static SymbolModel ma1(const Quaternion& beta, double delta);

  /// Finitely supported covariance sequence (eta(s) = 0 for s >= eta.size()).
  static SymbolModel from_covariance(std::vector<Quaternion> eta, std::string name = "covariance");

  /// Closed forms only; must satisfy the structure requirements (phi1 real
  /// a.e., phi2 odd a.e.), checked on a sample grid, otherwise rejected with
  /// a diagnostic.  Coefficients fall back to trapezoid quadrature and are
  /// flagged approximate.
  static SymbolModel from_closed_form(std::function<C01(double)> phi1_f,
                                      std::function<C01(double)> phi2_f,
                                      std::string name = "closed-form");

  const std::string& name() const { return name_; }
  bool has_eta() const { return static_cast<bool>(eta_); }

  /// Covariance at lag s; requires has_eta().
  Quaternion eta(std::size_t s) const;

  /// First column t_0..t_{count-1}.  Uses the covariance sequence when
  /// available, otherwise trapezoid quadrature on a uniform grid of
  /// >= 8*count points (see coefficients_approximate()).
  std::vector<Quaternion> coefficients(std::size_t count) const;

  /// True when coefficients() has no exact covariance route.
  bool coefficients_approximate() const { return !has_eta(); }

  C01 phi1(double x) const;
  C01 phi2(double x) const;

  /// Partial sums f_m: phi1(f_m)(x) = eta(0) + sum_{s<=m} (phi1(eta(s)) e^{psx}
  /// + conj(phi1(eta(s))) e^{-psx}), phi2(f_m)(x) = sum_{s<=m} phi2(eta(s))
  /// (e^{-psx} - e^{psx}).  Requires has_eta().
  C01 phi1_partial(double x, std::size_t order) const;
  C01 phi2_partial(double x, std::size_t order) const;

  GBlock g_block(double x) const;
  GBlock g_block_partial(double x, std::size_t order) const;

  /// (fcheck(x), fhat(x)): eigenvalues of G[f](x), closed form.
  std::pair<double, double> extremal(double x) const;

  double min_fcheck(std::size_t grid_points = kDefaultGrid) const;
  double max_fhat(std::size_t grid_points = kDefaultGrid) const;

  /// Checks the HPD conditions |phi2(x)|^2 <= phi1(x) phi1(-x), phi1 >= 0 on
  /// the grid, with strictness on a positive fraction required for
  /// `definite`.  Grids below 64 points are rejected.
  Definiteness hpd_test(std::size_t grid_points = kDefaultGrid) const;

 private:
  SymbolModel() = default;

  std::string name_;
  std::function<Quaternion(std::size_t)> eta_;
  std::function<C01(double)> phi1_;
  std::function<C01(double)> phi2_;
};

}  // namespace qtsolve

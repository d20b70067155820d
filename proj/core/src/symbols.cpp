#include "qtsolve/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qtsolve/fft.hpp"

namespace qtsolve {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_point(std::size_t j, std::size_t count) {
  return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(count);
}

// Rejects closed forms violating the structure requirements (phi1 real,
// phi2 odd) before they can feed Hermitian Toeplitz construction.
void check_structure(const std::function<C01(double)>& p1, const std::function<C01(double)>& p2,
                     const std::string& name) {
  constexpr std::size_t kProbe = 512;
  double scale = 1.0;
  double worst_imag = 0.0, worst_odd = 0.0;
  double at_imag = 0.0, at_odd = 0.0;
  for (std::size_t j = 0; j <= kProbe; ++j) {
    const double x = grid_point(j, kProbe);
    const C01 v1 = p1(x);
    const C01 v2 = p2(x);
    scale = std::max({scale, std::abs(v1), std::abs(v2)});
    if (std::abs(v1.imag()) > worst_imag) {
      worst_imag = std::abs(v1.imag());
      at_imag = x;
    }
    const double odd = std::abs(v2 + p2(-x));
    if (odd > worst_odd) {
      worst_odd = odd;
      at_odd = x;
    }
  }
  const double bound = 1e-10 * scale;
  if (worst_imag > bound || worst_odd > bound) {
    std::ostringstream msg;
    msg << "SymbolModel '" << name << "' violates the generating-function structure: "
        << "max |Im phi1| = " << worst_imag << " at x = " << at_imag
        << ", max |phi2(x)+phi2(-x)| = " << worst_odd << " at x = " << at_odd
        << " (allowed " << bound << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

bool GBlock::is_hermitian(double tol) const {
  const double scale = std::max({1.0, std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
  return std::abs(m11.imag()) <= tol * scale && std::abs(m22.imag()) <= tol * scale &&
         std::abs(m12 - std::conj(m21)) <= tol * scale;
}

std::pair<double, double> GBlock::eigenvalues() const {
  const double a = m11.real();
  const double d = m22.real();
  const double mid = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m12));
  return {mid - disc, mid + disc};
}

SymbolModel SymbolModel::constant(double value) {
  SymbolModel m;
  m.name_ = "constant";
  m.eta_ = [value](std::size_t s) { return s == 0 ? Quaternion(value) : Quaternion(); };
  m.phi1_ = [value](double) { return C01(value, 0.0); };
  m.phi2_ = [](double) { return C01(0.0, 0.0); };
  return m;
}

SymbolModel SymbolModel::ar1(const Quaternion& beta, double delta) {
  const double rho = beta.abs();
  if (rho >= 1.0 || rho == 0.0)
    throw std::domain_error("SymbolModel::ar1: |beta| must lie in (0,1)");
  const PolarForm pf = polar(beta);
  const double theta0 = pf.angle;
  const double u = pf.axis.a1;
  const C01 wq(pf.axis.a3, -pf.axis.a2);  // (beta3 - beta2 p)/|beta_I|, zero for real beta
  const double c = 4.0 * delta * delta / (1.0 - rho * rho);

  SymbolModel m;
  m.name_ = "ar1";
  m.eta_ = [beta, c](std::size_t s) { return c * qpow(beta, s); };
  const auto denom = [rho](double phase) {
    const double a = 1.0 - rho * std::cos(phase);
    const double b = rho * std::sin(phase);
    return a * a + b * b;
  };
  m.phi1_ = [c, u, rho, theta0, denom](double x) {
    const double tp = x + theta0;
    const double tm = x - theta0;
    const double val = c * (-1.0 + (1.0 + u) * (1.0 - rho * std::cos(tp)) / denom(tp) +
                            (1.0 - u) * (1.0 - rho * std::cos(tm)) / denom(tm));
    return C01(val, 0.0);
  };
  m.phi2_ = [c, wq, rho, theta0, denom](double x) {
    const double tp = x + theta0;
    const double tm = x - theta0;
    return c * wq *
           ((1.0 - rho * std::cos(tm)) / denom(tm) - (1.0 - rho * std::cos(tp)) / denom(tp));
  };
  return m;
}

SymbolModel SymbolModel::ma1(const Quaternion& beta, double delta) {
  const double d2 = delta * delta;
  const double b2 = beta.norm_sq();

  SymbolModel m;
  m.name_ = "ma1";
  m.eta_ = [beta, d2, b2](std::size_t s) -> Quaternion {
    if (s == 0) return Quaternion(4.0 * d2 * (b2 + 1.0));
    if (s == 1) return 4.0 * d2 * beta;
    return {};
  };
  m.phi1_ = [beta, d2, b2](double x) {
    return C01(4.0 * d2 * (b2 + 1.0) +
                   8.0 * d2 * (beta.a0 * std::cos(x) - beta.a1 * std::sin(x)),
               0.0);
  };
  m.phi2_ = [beta, d2](double x) { return 8.0 * d2 * C01(beta.a3, -beta.a2) * std::sin(x); };
  return m;
}

SymbolModel SymbolModel::from_covariance(std::vector<Quaternion> eta, std::string name) {
  if (eta.empty()) throw std::invalid_argument("from_covariance: empty sequence");
  if (std::abs(eta[0].a1) + std::abs(eta[0].a2) + std::abs(eta[0].a3) >
      1e-12 * std::max(1.0, eta[0].abs()))
    throw std::invalid_argument("from_covariance: eta(0) must be real");
  eta[0] = Quaternion(eta[0].a0);

  SymbolModel m;
  m.name_ = std::move(name);
  auto seq = std::make_shared<std::vector<Quaternion>>(std::move(eta));
  m.eta_ = [seq](std::size_t s) { return s < seq->size() ? (*seq)[s] : Quaternion(); };
  m.phi1_ = [seq](double x) {
    C01 acc((*seq)[0].a0, 0.0);
    for (std::size_t s = 1; s < seq->size(); ++s) {
      const C01 p1 = qtsolve::phi1((*seq)[s]);
      const C01 e(std::cos(s * x), std::sin(s * x));
      acc += p1 * e + std::conj(p1 * e);
    }
    return acc;
  };
  m.phi2_ = [seq](double x) {
    C01 acc(0.0, 0.0);
    for (std::size_t s = 1; s < seq->size(); ++s) {
      const C01 p2 = qtsolve::phi2((*seq)[s]);
      const C01 e(std::cos(s * x), std::sin(s * x));
      acc += p2 * (std::conj(e) - e);
    }
    return acc;
  };
  return m;
}

SymbolModel SymbolModel::from_closed_form(std::function<C01(double)> phi1_f,
                                          std::function<C01(double)> phi2_f, std::string name) {
  if (!phi1_f || !phi2_f)
    throw std::invalid_argument("from_closed_form: both evaluators required");
  check_structure(phi1_f, phi2_f, name);
  SymbolModel m;
  m.name_ = std::move(name);
  m.phi1_ = std::move(phi1_f);
  m.phi2_ = std::move(phi2_f);
  return m;
}

Quaternion SymbolModel::eta(std::size_t s) const {
  if (!eta_) throw std::logic_error("SymbolModel::eta: model has no covariance sequence");
  return eta_(s);
}

std::vector<Quaternion> SymbolModel::coefficients(std::size_t count) const {
  if (count == 0) return {};
  if (eta_) {
    std::vector<Quaternion> out(count);
    for (std::size_t s = 0; s < count; ++s) out[s] = eta_(s);
    return out;
  }
  // Quadrature fallback: t_s = (1/2pi) int f(x) exp(-p s x) dx, evaluated by
  // the trapezoid rule on a uniform grid (periodic integrand, so this is the
  // plain average), realized as two DFTs of the sampled parts.
  const std::size_t grid = std::max<std::size_t>(8 * count, 64);
  std::vector<C01> v1(grid), v2(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
    if (x > kPi) x -= 2.0 * kPi;
    v1[j] = phi1_(x);
    v2[j] = phi2_(x);
  }
  const auto fft = Fft::plan(grid);
  const std::vector<C01> c1 = fft->dft_minus(v1);
  const std::vector<C01> c2 = fft->dft_plus(v2);
  std::vector<Quaternion> out(count);
  const double scale = 1.0 / static_cast<double>(grid);
  for (std::size_t s = 0; s < count; ++s)
    out[s] = recombine(scale * c1[s], scale * c2[s]);
  out[0] = Quaternion(out[0].a0);
  return out;
}

C01 SymbolModel::phi1(double x) const { return phi1_(x); }
C01 SymbolModel::phi2(double x) const { return phi2_(x); }

C01 SymbolModel::phi1_partial(double x, std::size_t order) const {
  if (!eta_) throw std::logic_error("phi1_partial: model has no covariance sequence");
  C01 acc(eta_(0).a0, 0.0);
  for (std::size_t s = 1; s <= order; ++s) {
    const C01 p1 = qtsolve::phi1(eta_(s));
    const C01 e(std::cos(s * x), std::sin(s * x));
    acc += p1 * e + std::conj(p1 * e);
  }
  return acc;
}

C01 SymbolModel::phi2_partial(double x, std::size_t order) const {
  if (!eta_) throw std::logic_error("phi2_partial: model has no covariance sequence");
  C01 acc(0.0, 0.0);
  for (std::size_t s = 1; s <= order; ++s) {
    const C01 p2 = qtsolve::phi2(eta_(s));
    const C01 e(std::cos(s * x), std::sin(s * x));
    acc += p2 * (std::conj(e) - e);
  }
  return acc;
}

GBlock SymbolModel::g_block(double x) const {
  const C01 p2 = phi2_(x);
  return {phi1_(x), p2, std::conj(p2), phi1_(-x)};
}

GBlock SymbolModel::g_block_partial(double x, std::size_t order) const {
  const C01 p2 = phi2_partial(x, order);
  return {phi1_partial(x, order), p2, std::conj(p2), phi1_partial(-x, order)};
}

std::pair<double, double> SymbolModel::extremal(double x) const {
  return g_block(x).eigenvalues();
}

double SymbolModel::min_fcheck(std::size_t grid_points) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= grid_points; ++j)
    best = std::min(best, extremal(grid_point(j, grid_points)).first);
  return best;
}

double SymbolModel::max_fhat(std::size_t grid_points) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= grid_points; ++j)
    best = std::max(best, extremal(grid_point(j, grid_points)).second);
  return best;
}

SymbolModel::Definiteness SymbolModel::hpd_test(std::size_t grid_points) const {
  if (grid_points < 64)
    throw std::invalid_argument("hpd_test: grid too coarse (< 64 points)");
  double scale = 1.0;
  for (std::size_t j = 0; j <= grid_points; ++j) {
    const double x = grid_point(j, grid_points);
    scale = std::max({scale, std::abs(phi1_(x)), std::abs(phi2_(x))});
  }
  const double slack = 1e-12 * scale * scale;
  bool strict_somewhere = false;
  for (std::size_t j = 0; j <= grid_points; ++j) {
    const double x = grid_point(j, grid_points);
    const double lhs = std::norm(phi2_(x));
    const double rhs = phi1_(x).real() * phi1_(-x).real();
    if (lhs > rhs + slack || phi1_(x).real() < -slack)
      return Definiteness::indefinite;
    if (lhs < rhs - slack) strict_somewhere = true;
  }
  return strict_somewhere ? Definiteness::definite : Definiteness::semidefinite;
}

}  // namespace qtsolve

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qtsolve/quaternion.hpp"
#include "qtsolve/symbols.hpp"
#include "qtsolve/toeplitz.hpp"

namespace qtsolve {

enum class ProcessKind { ar1, ma1 };

/// Stationary quaternion signal model.  ar1: x(t) = beta x(t-1) + e(t) with
/// |beta| < 1; ma1: x(t) = beta e(t-1) + e(t), any beta (the estimation
/// experiments use |beta| >= 1 as well; the MA closed forms never require
/// |beta| < 1).  e(t) has four independent N(0, delta^2) components.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::ar1;
  Quaternion beta;
  double delta = 1.0;
  std::uint64_t seed = 0;
};

/// Closed-form covariance eta(s) = E[x(t) conj(x(t-s))].
Quaternion covariance(const ProcessSpec& spec, std::size_t lag);

/// The generating-function model of the process.
SymbolModel symbol_of(const ProcessSpec& spec);

/// Deterministic sample path of the given length; ar1 discards a burn-in of
/// max(1000, 10/(1-|beta|)) steps first.
QVector synthesize(const ProcessSpec& spec, std::size_t count);

struct EstimatedSystem {
  std::size_t n = 0;
  std::size_t sample_count = 0;
  std::vector<Quaternion> eta_hat;   // lags 0..n
  std::vector<Quaternion> column;    // lags 0..n-1, eta_hat(0) symmetrized
  QVector rhs;                       // w~ = (conj eta_hat(1), ..., conj eta_hat(n))
  double eta0_imag_residue = 0.0;    // |imag part| dropped from eta_hat(0)
};

/// Correlation windowing: eta~(s) = (1/M) sum_{l=s+1..M} x_l conj(x_{l-s}).
/// Requires M > n.
EstimatedSystem estimate_correlation(const QVector& samples, std::size_t n);

/// Exact-covariance prediction system T_n alpha = w with
/// w = (conj eta(1), ..., conj eta(n)).
std::pair<HermitianQToeplitz, QVector> prediction_system(const ProcessSpec& spec, std::size_t n);

// Sample-path files: one quaternion per record as (a0, a1, a2, a3); CSV text
// or little-endian 64-bit floats in binary mode.
void save_path_csv(const QVector& samples, const std::string& path);
QVector load_path_csv(const std::string& path);
void save_path_binary(const QVector& samples, const std::string& path);
QVector load_path_binary(const std::string& path);

/// splitmix64 stream; the seeding primitive for everything stochastic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// Quaternion Gaussian noise: four independent N(0, delta^2) components drawn
/// via Box-Muller from a splitmix64 stream (portable across standard
/// libraries, unlike std::normal_distribution).
class QuaternionGaussian {
 public:
  explicit QuaternionGaussian(std::uint64_t seed) : rng_(seed) {}
  Quaternion next(double delta);

 private:
  double normal();

  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qtsolve

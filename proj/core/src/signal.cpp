#include "qtsolve/signal.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qtsolve {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double QuaternionGaussian::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0, 1] keeps the log finite.
  const double u1 =
      (static_cast<double>(rng_.next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng_.next() >> 11) * 0x1.0p-53;
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

Quaternion QuaternionGaussian::next(double delta) {
  const double g0 = normal();
  const double g1 = normal();
  const double g2 = normal();
  const double g3 = normal();
  return {delta * g0, delta * g1, delta * g2, delta * g3};
}

Quaternion covariance(const ProcessSpec& spec, std::size_t lag) {
  const double d2 = spec.delta * spec.delta;
  if (spec.kind == ProcessKind::ar1) {
    const double rho = spec.beta.abs();
    if (rho >= 1.0) throw std::domain_error("covariance: ar1 requires |beta| < 1");
    return (4.0 * d2 / (1.0 - rho * rho)) * qpow(spec.beta, lag);
  }
  if (lag == 0) return Quaternion(4.0 * d2 * (spec.beta.norm_sq() + 1.0));
  if (lag == 1) return 4.0 * d2 * spec.beta;
  return {};
}

SymbolModel symbol_of(const ProcessSpec& spec) {
  return spec.kind == ProcessKind::ar1 ? SymbolModel::ar1(spec.beta, spec.delta)
                                       : SymbolModel::ma1(spec.beta, spec.delta);
}

QVector synthesize(const ProcessSpec& spec, std::size_t count) {
  if (count == 0) throw std::invalid_argument("synthesize: count must be positive");
  QuaternionGaussian noise(spec.seed);
  QVector out;
  out.reserve(count);
  if (spec.kind == ProcessKind::ar1) {
    const double rho = spec.beta.abs();
    if (rho >= 1.0) throw std::domain_error("synthesize: ar1 requires |beta| < 1");
    const std::size_t burn_in =
        std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(10.0 / (1.0 - rho))));
    Quaternion x;
    for (std::size_t t = 0; t < burn_in + count; ++t) {
      x = spec.beta * x + noise.next(spec.delta);
      if (t >= burn_in) out.push_back(x);
    }
  } else {
    Quaternion prev = noise.next(spec.delta);
    for (std::size_t t = 0; t < count; ++t) {
      const Quaternion e = noise.next(spec.delta);
      out.push_back(spec.beta * prev + e);
      prev = e;
    }
  }
  return out;
}

EstimatedSystem estimate_correlation(const QVector& samples, std::size_t n) {
  const std::size_t m = samples.size();
  if (m <= n) throw std::invalid_argument("estimate_correlation: need more samples than lags");
  EstimatedSystem out;
  out.n = n;
  out.sample_count = m;
  out.eta_hat.resize(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    Quaternion acc;
    for (std::size_t l = s; l < m; ++l) acc += samples[l] * samples[l - s].conj();
    out.eta_hat[s] = acc / static_cast<double>(m);
  }
  const Quaternion eta0 = out.eta_hat[0];
  out.eta0_imag_residue =
      std::sqrt(eta0.a1 * eta0.a1 + eta0.a2 * eta0.a2 + eta0.a3 * eta0.a3);
  out.eta_hat[0] = Quaternion(eta0.a0);

  out.column.assign(out.eta_hat.begin(), out.eta_hat.begin() + static_cast<long>(n));
  out.rhs.resize(n);
  for (std::size_t s = 1; s <= n; ++s) out.rhs[s - 1] = out.eta_hat[s].conj();
  return out;
}

std::pair<HermitianQToeplitz, QVector> prediction_system(const ProcessSpec& spec, std::size_t n) {
  std::vector<Quaternion> col(n);
  for (std::size_t s = 0; s < n; ++s) col[s] = covariance(spec, s);
  QVector w(n);
  for (std::size_t s = 1; s <= n; ++s) w[s - 1] = covariance(spec, s).conj();
  return {HermitianQToeplitz(std::move(col)), std::move(w)};
}

void save_path_csv(const QVector& samples, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("save_path_csv: cannot open " + path);
  file.precision(17);
  for (const Quaternion& x : samples)
    file << x.a0 << ',' << x.a1 << ',' << x.a2 << ',' << x.a3 << '\n';
  if (!file) throw std::runtime_error("save_path_csv: write failed for " + path);
}

QVector load_path_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_path_csv: cannot open " + path);
  QVector out;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Quaternion x;
    char comma = ',';
    if (!(row >> x.a0 >> comma >> x.a1 >> comma >> x.a2 >> comma >> x.a3))
      throw std::runtime_error("load_path_csv: malformed row: " + line);
    out.push_back(x);
  }
  return out;
}

namespace {
static_assert(std::endian::native == std::endian::little,
              "binary sample paths are little-endian");
}

void save_path_binary(const QVector& samples, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("save_path_binary: cannot open " + path);
  for (const Quaternion& x : samples) {
    const double vals[4] = {x.a0, x.a1, x.a2, x.a3};
    file.write(reinterpret_cast<const char*>(vals), sizeof(vals));
  }
  if (!file) throw std::runtime_error("save_path_binary: write failed for " + path);
}

QVector load_path_binary(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("load_path_binary: cannot open " + path);
  QVector out;
  double vals[4];
  while (file.read(reinterpret_cast<char*>(vals), sizeof(vals)))
    out.emplace_back(vals[0], vals[1], vals[2], vals[3]);
  if (file.gcount() != 0)
    throw std::runtime_error("load_path_binary: truncated record in " + path);
  return out;
}

}  // namespace qtsolve

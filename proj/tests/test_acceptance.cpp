// Acceptance suite: every release criterion as one test, each printing a
// [CRITERION k] PASS/FAIL line.  Tolerances are pinned in the assertions.

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <random>

#include "qtsolve/circulant.hpp"
#include "qtsolve/complex_adjoint.hpp"
#include "qtsolve/experiment.hpp"
#include "qtsolve/pcg.hpp"
#include "qtsolve/signal.hpp"
#include "qtsolve/spectra.hpp"
#include "qtsolve/toeplitz.hpp"

using namespace qtsolve;

namespace {

constexpr double kPi = std::numbers::pi;

void report(int criterion, const std::string& what) {
  std::cout << "[CRITERION " << criterion << "] "
            << (::testing::Test::HasFailure() ? "FAIL" : "PASS") << " - " << what << "\n";
}

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

QVector random_vector(std::size_t n, std::mt19937_64& rng) {
  QVector out(n);
  for (Quaternion& x : out) x = random_quaternion(rng);
  return out;
}

QMatrixDense random_matrix(std::size_t n, std::mt19937_64& rng) {
  QMatrixDense out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = random_quaternion(rng);
  return out;
}

std::vector<Quaternion> random_toeplitz_column(std::size_t n, std::mt19937_64& rng) {
  std::vector<Quaternion> col(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  col[0] = Quaternion(dist(rng) + 2.0);
  for (std::size_t s = 1; s < n; ++s) col[s] = random_quaternion(rng);
  return col;
}

std::vector<Quaternion> random_hermitian_circulant_column(std::size_t n, std::mt19937_64& rng,
                                                          double diag) {
  std::vector<Quaternion> v(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  v[0] = Quaternion(dist(rng) + diag);
  for (std::size_t s = 1; s <= (n - 1) / 2; ++s) {
    v[s] = random_quaternion(rng);
    v[n - s] = v[s].conj();
  }
  if (n % 2 == 0) v[n / 2] = Quaternion(dist(rng));
  return v;
}

struct TableRow {
  std::size_t pcg_c = 0;
  std::size_t pcg_i = 0;
};

// Group run_solve/run_estimate output by cell coordinates.
std::map<std::tuple<std::size_t, std::size_t, std::size_t>, TableRow> group_rows(
    const std::vector<ReportRow>& rows, const ExperimentConfig& config) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, TableRow> out;
  for (const ReportRow& row : rows) {
    std::size_t beta_index = config.betas.size();
    for (std::size_t b = 0; b < config.betas.size(); ++b)
      if (config.betas[b] == row.beta) beta_index = b;
    const std::size_t m = row.m == "exact" ? 0 : std::stoull(row.m);
    auto& cell = out[{beta_index, m, row.n}];
    if (row.solver == "PCG-C")
      cell.pcg_c = row.iters;
    else
      cell.pcg_i = row.iters;
  }
  return out;
}

const SymbolModel kArModel = SymbolModel::ar1(Quaternion{0.45, -0.01, 0.3, -0.35}, 1.0);
const SymbolModel kMaModel = SymbolModel::ma1(Quaternion{-0.08, 0.21, -0.8, -0.79}, 1.0);

}  // namespace

TEST(Acceptance, Criterion1Table1) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentConfig config = preset("table1");
  const std::vector<ReportRow> rows = run_solve(config);
  const double elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Published iteration counts: PCG-C is 3 in every cell; PCG-I per beta and n.
  const std::size_t expected_i[3][4] = {{41, 41, 41, 41}, {48, 48, 48, 48}, {57, 60, 60, 60}};
  const auto cells = group_rows(rows, config);
  ASSERT_EQ(cells.size(), 12u);
  for (const auto& [key, cell] : cells) {
    const auto [beta_index, m, n] = key;
    EXPECT_EQ(cell.pcg_c, 3u) << "beta " << beta_index << " n " << n;
    const std::size_t n_index = static_cast<std::size_t>(std::log2(n)) - 8;
    const std::size_t expected = expected_i[beta_index][n_index];
    EXPECT_LE(cell.pcg_i, expected + 2) << "beta " << beta_index << " n " << n;
    EXPECT_GE(cell.pcg_i + 2, expected) << "beta " << beta_index << " n " << n;
  }
  for (const ReportRow& row : rows) {
    EXPECT_TRUE(row.converged);
    if (row.solver == "PCG-C") {
      EXPECT_LE(row.error, 1e-12);
    }
  }
  EXPECT_LE(elapsed_s, 10.0);
  report(1, "Table 1 reproduction (PCG-C = 3 exactly, PCG-I within +-2, error <= 1e-12, <= 10 s)");
}

TEST(Acceptance, Criterion2Table3) {
  const ExperimentConfig config = preset("table3");
  const std::vector<ReportRow> rows = run_solve(config);
  const std::size_t expected_i[3] = {119, 83, 54};
  const auto cells = group_rows(rows, config);
  ASSERT_EQ(cells.size(), 12u);
  for (const auto& [key, cell] : cells) {
    const auto [beta_index, m, n] = key;
    EXPECT_EQ(cell.pcg_c, 2u) << "beta " << beta_index << " n " << n;
    EXPECT_LE(cell.pcg_i, expected_i[beta_index] + 2) << "beta " << beta_index << " n " << n;
    EXPECT_GE(cell.pcg_i + 2, expected_i[beta_index]) << "beta " << beta_index << " n " << n;
  }
  for (const ReportRow& row : rows) {
    if (row.solver == "PCG-C") {
      EXPECT_LE(row.error, 1e-11);
    }
  }
  report(2, "Table 3 reproduction (PCG-C = 2 exactly, PCG-I within +-2, error <= 1e-11)");
}

TEST(Acceptance, Criterion3Tables2And4) {
  // Published PCG-C counts per beta, in (m, n) order m in {4,8,16} x n in
  // {2^9, 2^10, 2^11}.  The RNG streams behind the published cells are
  // unknown, so acceptance is trend-level: strictly fewer PCG-C than PCG-I
  // iterations and PCG-C within [0.5x, 2x] of the published value per cell.
  const std::size_t table2[3][9] = {{27, 29, 41, 17, 19, 20, 13, 14, 14},
                                    {18, 19, 20, 14, 14, 15, 14, 15, 15},
                                    {28, 28, 42, 18, 20, 21, 14, 15, 15}};
  const std::size_t table4[3][9] = {{36, 33, 46, 19, 18, 19, 13, 14, 14},
                                    {29, 37, 38, 17, 18, 22, 14, 15, 14},
                                    {25, 32, 46, 19, 19, 19, 13, 14, 15}};
  for (const auto& [name, expected] :
       {std::pair{"table2", &table2}, std::pair{"table4", &table4}}) {
    const ExperimentConfig config = preset(name);
    const std::vector<ReportRow> rows = run_estimate(config);
    for (const ReportRow& row : rows) EXPECT_TRUE(row.converged) << name;
    const auto cells = group_rows(rows, config);
    ASSERT_EQ(cells.size(), 27u);
    for (const auto& [key, cell] : cells) {
      const auto [beta_index, m, n] = key;
      const std::size_t m_index = m == 4 ? 0 : m == 8 ? 1 : 2;
      const std::size_t n_index = static_cast<std::size_t>(std::log2(n)) - 9;
      const std::size_t published = (*expected)[beta_index][3 * m_index + n_index];
      EXPECT_LT(cell.pcg_c, cell.pcg_i)
          << name << " beta " << beta_index << " m " << m << " n " << n;
      EXPECT_GE(cell.pcg_c * 2, published)
          << name << " beta " << beta_index << " m " << m << " n " << n;
      EXPECT_LE(cell.pcg_c, published * 2)
          << name << " beta " << beta_index << " m " << m << " n " << n;
    }
  }
  report(3, "Tables 2/4 trend (PCG-C < PCG-I, PCG-C within [0.5x, 2x] of published, converged)");
}

TEST(Acceptance, Criterion4StrangSpectrumIdentity) {
  for (const SymbolModel* model : {&kArModel, &kMaModel}) {
    for (const std::size_t n : {8u, 16u, 33u, 64u}) {
      const HermitianQToeplitz t = HermitianQToeplitz::from_symbol(*model, n);
      const QCirculant c = strang(t);
      const std::vector<double> fast = BlockDiagFactor{c}.spectrum();
      const std::vector<double> dense = dense_spectrum(c.densify()).eigenvalues;
      ASSERT_EQ(fast.size(), dense.size());
      for (std::size_t s = 0; s < fast.size(); ++s)
        EXPECT_NEAR(fast[s], dense[s], 1e-9) << model->name() << " n=" << n;

      // Independent union of G[f_m](2 pi s / n) eigenvalues; m is the number
      // of off-diagonal coefficients the Strang column carries.
      const std::size_t order = (n - 1) / 2;
      std::vector<double> expected;
      for (std::size_t s = 0; s <= n / 2; ++s) {
        const double x = 2.0 * kPi * static_cast<double>(s) / static_cast<double>(n);
        const auto [lo, hi] = model->g_block_partial(x, order).eigenvalues();
        if (s == 0 || (n % 2 == 0 && s == n / 2)) {
          expected.push_back(0.5 * (lo + hi));
        } else {
          expected.push_back(lo);
          expected.push_back(hi);
        }
      }
      std::sort(expected.begin(), expected.end());
      ASSERT_EQ(expected.size(), fast.size());
      for (std::size_t s = 0; s < fast.size(); ++s)
        EXPECT_NEAR(fast[s], expected[s], 1e-9) << model->name() << " n=" << n;
    }
  }
  report(4, "Strang spectrum identity (fast factor vs dense M(.) vs G-block union, 1e-9)");
}

TEST(Acceptance, Criterion5EigenvalueSandwich) {
  for (const SymbolModel* model : {&kArModel, &kMaModel}) {
    const double lo = model->min_fcheck(4096);
    const double hi = model->max_fhat(4096);
    for (const std::size_t n : {8u, 33u, 64u, 128u, 256u}) {
      const SpectrumReport spec =
          dense_spectrum(HermitianQToeplitz::from_symbol(*model, n).densify());
      EXPECT_GE(spec.eigenvalues.front(), lo) << model->name() << " n=" << n;
      EXPECT_LE(spec.eigenvalues.back(), hi) << model->name() << " n=" << n;
    }
  }
  report(5, "Eigenvalue sandwich min fcheck <= spectrum <= max fhat (n <= 256, 4096-point grid)");
}

TEST(Acceptance, Criterion6SzegoMoments) {
  for (const SymbolModel* model : {&kArModel, &kMaModel}) {
    const double t0 = model->eta(0).a0;
    double previous_gap = std::numeric_limits<double>::infinity();
    for (const std::size_t n : {64u, 256u, 1024u}) {
      const SzegoMoment first = szego_moment_check(*model, n, [](double x) { return x; });
      EXPECT_NEAR(first.lhs, t0, 1e-10 * std::max(1.0, std::abs(t0)))
          << model->name() << " n=" << n;
      const SzegoMoment second = szego_moment_check(*model, n, [](double x) { return x * x; });
      EXPECT_LT(second.relative_gap, previous_gap) << model->name() << " n=" << n;
      previous_gap = second.relative_gap;
      if (n == 1024) {
        EXPECT_LT(second.relative_gap, 0.05) << model->name();
      }
    }
  }
  report(6, "Szego moments (F=x matches t0 at 1e-10; F=x^2 gap < 5% at n=1024 and decreasing)");
}

TEST(Acceptance, Criterion7Clustering) {
  const SymbolModel model = SymbolModel::ma1(Quaternion(0.5), 1.0);
  const double bound = 2.0 * model.min_fcheck(4096) / (3.0 * model.max_fhat(4096));
  std::size_t count_at_64 = 0;
  double previous_fraction = std::numeric_limits<double>::infinity();
  for (const std::size_t n : {64u, 128u, 256u}) {
    const ClusteringReport cl = clustering_report(model, n, 0.1);
    const double fraction = static_cast<double>(cl.outside_count) / static_cast<double>(n);
    EXPECT_LE(fraction, previous_fraction) << "n=" << n;
    previous_fraction = fraction;
    if (n == 64)
      count_at_64 = cl.outside_count;
    else
      EXPECT_LE(cl.outside_count, count_at_64) << "n=" << n;
    EXPECT_GE(cl.min_eigenvalue, bound) << "n=" << n;
  }
  report(7, "Preconditioned-spectrum clustering (outside fraction non-increasing, bounded; "
            "min eig >= 2 fcheck_min / (3 fhat_max))");
}

TEST(Acceptance, Criterion8OracleEquivalence) {
  auto rng = make_rng(814);

  // Fast Toeplitz matvec against the dense triple loop, n <= 64.
  for (const std::size_t n : {1u, 2u, 5u, 16u, 33u, 64u}) {
    const HermitianQToeplitz t{random_toeplitz_column(n, rng)};
    const QVector x = random_vector(n, rng);
    const QVector fast = t.apply(x);
    const QVector dense = t.densify().matvec(x);
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      num += (fast[s] - dense[s]).norm_sq();
      den += dense[s].norm_sq();
    }
    EXPECT_LE(std::sqrt(num), 1e-11 * std::max(1.0, std::sqrt(den))) << "n=" << n;
  }

  // Fast circulant solve against a dense LU on M(C), n <= 256.
  for (const std::size_t n : {4u, 33u, 256u}) {
    const QCirculant c{random_hermitian_circulant_column(n, rng, 6.0)};
    const QVector r = random_vector(n, rng);
    const QVector fast = BlockDiagFactor{c}.solve(r);
    const Eigen::MatrixXcd mc = adjoint_matrix(c.densify());
    const QVector oracle =
        adjoint_vector_inverse(mc.fullPivLu().solve(adjoint_vector(r)).eval());
    double gap = 0.0;
    for (std::size_t s = 0; s < n; ++s) gap = std::max(gap, (fast[s] - oracle[s]).abs());
    EXPECT_LE(gap, 1e-10) << "n=" << n;
  }

  // Adjoint homomorphism M(AB) = M(A) M(B), n <= 8.
  for (const std::size_t n : {2u, 5u, 8u}) {
    const QMatrixDense a = random_matrix(n, rng), b = random_matrix(n, rng);
    const Eigen::MatrixXcd lhs = adjoint_matrix(a.multiply(b));
    const Eigen::MatrixXcd rhs = adjoint_matrix(a) * adjoint_matrix(b);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, lhs.norm())) << "n=" << n;
  }

  // Algebra laws on 1e4 random triples.
  for (int trial = 0; trial < 10000; ++trial) {
    const Quaternion x = random_quaternion(rng), y = random_quaternion(rng),
                     z = random_quaternion(rng);
    const Quaternion assoc_gap = (x * y) * z - x * (y * z);
    EXPECT_LE(assoc_gap.abs(), 1e-13 * std::max(1.0, ((x * y) * z).abs()));
    const Quaternion conj_gap = (x * y).conj() - y.conj() * x.conj();
    EXPECT_LE(conj_gap.abs(), 1e-13 * std::max(1.0, (x * y).abs()));
    EXPECT_NEAR((x * y).abs(), x.abs() * y.abs(), 1e-13 * std::max(1.0, x.abs() * y.abs()));
  }
  report(8, "Oracle equivalence (fast vs dense kernels, adjoint homomorphism, algebra laws)");
}

TEST(Acceptance, Criterion9FiniteTermination) {
  auto rng = make_rng(909);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 32);
    // Random HPD with spectrum in [1, 3]: A = I + 2 G*G / lmax.
    const QMatrixDense g = random_matrix(n, rng);
    QMatrixDense h = g.adjoint().multiply(g);
    const std::vector<double> w = hermitian_eigenvalues(adjoint_matrix(h));
    const double lmax = w.back();
    QMatrixDense a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = h(r, c) * (2.0 / lmax);
        if (r == c) a(r, c) += Quaternion(1.0);
      }
    const QVector b = random_vector(n, rng);
    SolveConfig cfg;
    cfg.tol = 1e-13;
    const auto [x, solve_report] =
        pcg_solve([&a](const QVector& v) { return a.matvec(v); },
                  [](const QVector& v) { return v; }, b, cfg);
    EXPECT_TRUE(solve_report.converged) << "n=" << n;
    EXPECT_LE(solve_report.iterations, n) << "n=" << n;
  }
  report(9, "Finite termination (random HPD systems, n <= 32, tol 1e-13, <= n iterations)");
}

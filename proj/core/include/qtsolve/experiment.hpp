#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtsolve/pcg.hpp"
#include "qtsolve/signal.hpp"
#include "qtsolve/spectra.hpp"

namespace qtsolve {

/// One experiment run: a grid of (beta, n[, m]) cells solved by the chosen
/// preconditioner(s).  Presets table1..table4 carry the published parameter
/// grids.
struct ExperimentConfig {
  std::string model = "ar1";  // ar1 | ma1
  std::vector<std::array<double, 4>> betas;
  double delta = 1.0;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> m_values;  // estimate runs; M = m n + 1
  std::string precond = "both";       // strang | none | both
  double tol = 1e-7;
  bool absolute_stop = false;  // table presets stop on ||r|| <= tol directly
  std::uint64_t seed = 1234;
  std::string out_path;  // empty -> stdout
  std::string format = "csv";
  std::vector<double> eps_values = {0.1};  // spectrum clustering radii
  std::size_t dense_cap = 2048;
  std::size_t max_iter = 0;
};

ExperimentConfig preset(const std::string& name);

/// Flat key=value config file; '#' starts a comment, repeated keys extend the
/// list-valued ones (beta, n, m, eps).  Flags override file values.
void apply_config_file(ExperimentConfig& config, const std::string& path);

struct ReportRow {
  std::string model;
  std::array<double, 4> beta{};
  double delta = 1.0;
  std::size_t n = 0;
  std::string m = "exact";
  std::string solver;  // PCG-C | PCG-I
  std::size_t iters = 0;
  double time_ms = 0.0;
  double error = 0.0;  // ||b - T u||, recomputed; NaN for failed cells
  std::uint64_t seed = 0;
  bool converged = false;
  std::string note;  // failure diagnostics
};

/// Exact-covariance table runs (systems built from closed-form eta).
std::vector<ReportRow> run_solve(const ExperimentConfig& config);

/// Estimated runs: synthesize -> correlation windowing -> solve both systems.
/// Per-cell failures (rank deficiency, singular preconditioner blocks) are
/// reported in the row and the run continues.
std::vector<ReportRow> run_estimate(const ExperimentConfig& config);

struct SpectrumCell {
  std::string model;
  std::array<double, 4> beta{};
  std::size_t n = 0;
  SpectrumReport spectrum;
  double min_fcheck = 0.0;
  double max_fhat = 0.0;
  SzegoMoment moment_identity;  // F = lambda
  SzegoMoment moment_square;    // F = lambda^2
  std::vector<ClusteringReport> clustering;
};

std::vector<SpectrumCell> run_spectrum(const ExperimentConfig& config);

void write_rows_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void write_rows_json(const std::vector<ReportRow>& rows, std::ostream& out);
void write_spectrum_cells_json(const std::vector<SpectrumCell>& cells, std::ostream& out);

/// 0 when every cell converged, 2 otherwise.
int exit_code(const std::vector<ReportRow>& rows);

/// Worker pool width: QTSOLVE_THREADS when set, hardware concurrency
/// otherwise.
std::size_t thread_cap();

/// Per-cell seed derived from the base seed and the cell coordinates, so the
/// pool schedule never changes results.
std::uint64_t cell_seed(std::uint64_t base, ProcessKind kind, std::size_t beta_index,
                        std::size_t n, std::size_t m);

}  // namespace qtsolve

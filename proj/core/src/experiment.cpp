#include "qtsolve/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qtsolve/circulant.hpp"
#include "qtsolve/toeplitz.hpp"

namespace qtsolve {

namespace {

ProcessKind parse_kind(const std::string& model) {
  if (model == "ar1") return ProcessKind::ar1;
  if (model == "ma1") return ProcessKind::ma1;
  throw std::invalid_argument("unknown model '" + model + "' (expected ar1 or ma1)");
}

Quaternion to_quaternion(const std::array<double, 4>& b) { return {b[0], b[1], b[2], b[3]}; }

SolveConfig solver_config(const ExperimentConfig& config) {
  SolveConfig out;
  out.tol = config.tol;
  out.reference = config.absolute_stop ? ResidualReference::absolute
                                       : ResidualReference::initial_residual;
  out.max_iter = config.max_iter;
  out.record_history = false;
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct SolverSelection {
  bool strang = false;
  bool plain = false;
};

SolverSelection parse_precond(const std::string& precond) {
  if (precond == "strang") return {true, false};
  if (precond == "none") return {false, true};
  if (precond == "both") return {true, true};
  throw std::invalid_argument("unknown preconditioner '" + precond +
                              "' (expected strang, none or both)");
}

ReportRow base_row(const ExperimentConfig& config, const std::array<double, 4>& beta,
                   std::size_t n) {
  ReportRow row;
  row.model = config.model;
  row.beta = beta;
  row.delta = config.delta;
  row.n = n;
  row.seed = config.seed;
  return row;
}

// Solve one assembled system with both requested solvers.
void solve_cell(const HermitianQToeplitz& t, const QVector& rhs, const SolveConfig& cfg,
                const SolverSelection& solvers, const ReportRow& prototype,
                std::vector<ReportRow>& out_rows, std::size_t slot) {
  const LinearOperator apply_a = [&t](const QVector& v) { return t.apply(v); };
  std::size_t cursor = slot;
  if (solvers.strang) {
    ReportRow row = prototype;
    row.solver = "PCG-C";
    try {
      const BlockDiagFactor factor{strang(t)};
      auto [solution, report] =
          pcg_solve(apply_a, [&factor](const QVector& v) { return factor.solve(v); }, rhs, cfg);
      (void)solution;
      row.iters = report.iterations;
      row.time_ms = report.wall_time_ms;
      row.error = report.final_error;
      row.converged = report.converged;
    } catch (const std::exception& ex) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.converged = false;
      row.note = ex.what();
    }
    out_rows[cursor++] = std::move(row);
  }
  if (solvers.plain) {
    ReportRow row = prototype;
    row.solver = "PCG-I";
    try {
      auto [solution, report] =
          pcg_solve(apply_a, [](const QVector& v) { return v; }, rhs, cfg);
      (void)solution;
      row.iters = report.iterations;
      row.time_ms = report.wall_time_ms;
      row.error = report.final_error;
      row.converged = report.converged;
    } catch (const std::exception& ex) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.converged = false;
      row.note = ex.what();
    }
    out_rows[cursor++] = std::move(row);
  }
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig config;
  config.absolute_stop = true;
  if (name == "table1") {
    config.model = "ar1";
    config.betas = {{0.45, -0.01, 0.3, -0.35}, {-0.07, 0.41, 0.29, 0.45},
                    {0.15, -0.46, 0.34, 0.43}};
    config.n_values = {256, 512, 1024, 2048};
  } else if (name == "table2") {
    config.model = "ar1";
    config.betas = {{0.1, 0.0, -0.3, -0.4}, {0.3, 0.4, 0.0, 0.4}, {0.3, 0.4, 0.4, 0.0}};
    config.n_values = {512, 1024, 2048};
    config.m_values = {4, 8, 16};
  } else if (name == "table3") {
    config.model = "ma1";
    config.betas = {{-0.08, 0.21, -0.8, -0.79}, {-0.2, 0.18, -1.19, -0.07},
                    {-0.52, -0.32, -0.01, -1.23}};
    config.n_values = {256, 512, 1024, 2048};
  } else if (name == "table4") {
    config.model = "ma1";
    config.betas = {{0.9, 0.9, 0.5, 1.3}, {-1.9, -0.6, 0.3, 0.0}, {-2.0, -0.6, -0.4, -0.1}};
    config.n_values = {512, 1024, 2048};
    config.m_values = {4, 8, 16};
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected table1..table4)");
  }
  return config;
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  std::size_t line_no = 0;
  bool betas_from_file = false, n_from_file = false, m_from_file = false, eps_from_file = false;
  while (std::getline(file, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "model") {
        config.model = value;
      } else if (key == "beta") {
        std::array<double, 4> b{};
        std::istringstream in(value);
        char comma = ',';
        if (!(in >> b[0] >> comma >> b[1] >> comma >> b[2] >> comma >> b[3]))
          throw std::runtime_error("beta needs four comma-separated reals");
        if (!betas_from_file) {
          config.betas.clear();
          betas_from_file = true;
        }
        config.betas.push_back(b);
      } else if (key == "delta") {
        config.delta = std::stod(value);
      } else if (key == "n") {
        if (!n_from_file) {
          config.n_values.clear();
          n_from_file = true;
        }
        config.n_values.push_back(std::stoull(value));
      } else if (key == "m") {
        if (!m_from_file) {
          config.m_values.clear();
          m_from_file = true;
        }
        config.m_values.push_back(std::stoull(value));
      } else if (key == "eps") {
        if (!eps_from_file) {
          config.eps_values.clear();
          eps_from_file = true;
        }
        config.eps_values.push_back(std::stod(value));
      } else if (key == "tol") {
        config.tol = std::stod(value);
      } else if (key == "stop") {
        if (value == "absolute")
          config.absolute_stop = true;
        else if (value == "relative")
          config.absolute_stop = false;
        else
          throw std::runtime_error("stop must be absolute or relative");
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "precond") {
        config.precond = value;
      } else if (key == "out") {
        config.out_path = value;
      } else if (key == "format") {
        config.format = value;
      } else if (key == "dense_cap") {
        config.dense_cap = std::stoull(value);
      } else if (key == "max_iter") {
        config.max_iter = std::stoull(value);
      } else {
        throw std::runtime_error("unknown key '" + key + "'");
      }
    } catch (const std::exception& ex) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
}

std::vector<ReportRow> run_solve(const ExperimentConfig& config) {
  const ProcessKind kind = parse_kind(config.model);
  const SolverSelection solvers = parse_precond(config.precond);
  const SolveConfig cfg = solver_config(config);
  const std::size_t per_cell = (solvers.strang ? 1u : 0u) + (solvers.plain ? 1u : 0u);

  struct Cell {
    std::array<double, 4> beta;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (const auto& beta : config.betas)
    for (const std::size_t n : config.n_values) cells.push_back({beta, n});

  std::vector<ReportRow> rows(cells.size() * per_cell);
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    ProcessSpec spec{kind, to_quaternion(cell.beta), config.delta, config.seed};
    auto [t, w] = prediction_system(spec, cell.n);
    ReportRow prototype = base_row(config, cell.beta, cell.n);
    prototype.m = "exact";
    solve_cell(t, w, cfg, solvers, prototype, rows, i * per_cell);
  });
  return rows;
}

std::vector<ReportRow> run_estimate(const ExperimentConfig& config) {
  const ProcessKind kind = parse_kind(config.model);
  const SolverSelection solvers = parse_precond(config.precond);
  const SolveConfig cfg = solver_config(config);
  const std::size_t per_cell = (solvers.strang ? 1u : 0u) + (solvers.plain ? 1u : 0u);
  if (config.m_values.empty())
    throw std::invalid_argument("run_estimate: m list must not be empty");

  struct Cell {
    std::size_t beta_index;
    std::size_t m;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (std::size_t b = 0; b < config.betas.size(); ++b)
    for (const std::size_t m : config.m_values)
      for (const std::size_t n : config.n_values) cells.push_back({b, m, n});

  std::vector<ReportRow> rows(cells.size() * per_cell);
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    const std::array<double, 4>& beta = config.betas[cell.beta_index];
    const std::uint64_t seed =
        cell_seed(config.seed, kind, cell.beta_index, cell.n, cell.m);
    ReportRow prototype = base_row(config, beta, cell.n);
    prototype.m = std::to_string(cell.m);
    prototype.seed = seed;

    try {
      const ProcessSpec spec{kind, to_quaternion(beta), config.delta, seed};
      const std::size_t samples = cell.m * cell.n + 1;
      const EstimatedSystem est = estimate_correlation(synthesize(spec, samples), cell.n);
      if (est.column.empty() || est.column[0].a0 <= 0.0)
        throw std::runtime_error("estimated system is rank deficient (zero signal energy)");
      const HermitianQToeplitz t{est.column};
      solve_cell(t, est.rhs, cfg, solvers, prototype, rows, i * per_cell);
    } catch (const std::exception& ex) {
      // Assembly itself failed; report every requested solver slot.
      std::size_t cursor = i * per_cell;
      for (const char* tag : {"PCG-C", "PCG-I"}) {
        if ((tag[4] == 'C' && !solvers.strang) || (tag[4] == 'I' && !solvers.plain)) continue;
        ReportRow row = prototype;
        row.solver = tag;
        row.error = std::numeric_limits<double>::quiet_NaN();
        row.converged = false;
        row.note = ex.what();
        rows[cursor++] = std::move(row);
      }
    }
  });
  return rows;
}

std::vector<SpectrumCell> run_spectrum(const ExperimentConfig& config) {
  const ProcessKind kind = parse_kind(config.model);
  struct Cell {
    std::size_t beta_index;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (std::size_t b = 0; b < config.betas.size(); ++b)
    for (const std::size_t n : config.n_values) cells.push_back({b, n});

  std::vector<SpectrumCell> out(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    const std::array<double, 4>& beta = config.betas[cell.beta_index];
    const ProcessSpec spec{kind, to_quaternion(beta), config.delta, config.seed};
    const SymbolModel model = symbol_of(spec);

    SpectrumCell result;
    result.model = config.model;
    result.beta = beta;
    result.n = cell.n;
    result.spectrum = dense_spectrum(
        HermitianQToeplitz::from_symbol(model, cell.n).densify(config.dense_cap), 1e-10,
        config.dense_cap);
    result.spectrum.model_name = config.model;
    result.spectrum.operator_kind = "toeplitz";
    result.min_fcheck = model.min_fcheck();
    result.max_fhat = model.max_fhat();
    result.moment_identity =
        szego_moment_check(model, cell.n, [](double x) { return x; }, config.dense_cap);
    result.moment_square =
        szego_moment_check(model, cell.n, [](double x) { return x * x; }, config.dense_cap);
    for (const double eps : config.eps_values)
      result.clustering.push_back(clustering_report(model, cell.n, eps, config.dense_cap));
    out[i] = std::move(result);
  });
  return out;
}

void write_rows_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "# qtsolve report v1\n";
  out << "model,beta0,beta1,beta2,beta3,delta,n,m,solver,iters,time_ms,error,seed\n";
  out.precision(17);
  for (const ReportRow& row : rows) {
    out << row.model << ',' << row.beta[0] << ',' << row.beta[1] << ',' << row.beta[2] << ','
        << row.beta[3] << ',' << row.delta << ',' << row.n << ',' << row.m << ',' << row.solver
        << ',' << row.iters << ',' << row.time_ms << ',' << row.error << ',' << row.seed << '\n';
  }
}

void write_rows_json(const std::vector<ReportRow>& rows, std::ostream& out) {
  nlohmann::json doc;
  doc["schema"] = "qtsolve-report-v1";
  doc["rows"] = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    nlohmann::json j;
    j["model"] = row.model;
    j["beta"] = row.beta;
    j["delta"] = row.delta;
    j["n"] = row.n;
    j["m"] = row.m;
    j["solver"] = row.solver;
    j["iters"] = row.iters;
    j["time_ms"] = row.time_ms;
    if (std::isfinite(row.error))
      j["error"] = row.error;
    else
      j["error"] = nullptr;
    j["seed"] = row.seed;
    j["converged"] = row.converged;
    if (!row.note.empty()) j["note"] = row.note;
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << "\n";
}

void write_spectrum_cells_json(const std::vector<SpectrumCell>& cells, std::ostream& out) {
  nlohmann::json doc;
  doc["schema"] = "qtsolve-spectrum-report-v1";
  doc["cells"] = nlohmann::json::array();
  for (const SpectrumCell& cell : cells) {
    nlohmann::json j;
    j["model"] = cell.model;
    j["beta"] = cell.beta;
    j["n"] = cell.n;
    j["eigenvalues"] = cell.spectrum.eigenvalues;
    j["min_fcheck"] = cell.min_fcheck;
    j["max_fhat"] = cell.max_fhat;
    j["szego_lambda"] = {{"lhs", cell.moment_identity.lhs},
                         {"rhs", cell.moment_identity.rhs},
                         {"gap", cell.moment_identity.relative_gap}};
    j["szego_lambda_sq"] = {{"lhs", cell.moment_square.lhs},
                            {"rhs", cell.moment_square.rhs},
                            {"gap", cell.moment_square.relative_gap}};
    j["clustering"] = nlohmann::json::array();
    for (const ClusteringReport& c : cell.clustering)
      j["clustering"].push_back({{"eps", c.epsilon},
                                 {"outside_count", c.outside_count},
                                 {"min_eigenvalue", c.min_eigenvalue}});
    doc["cells"].push_back(std::move(j));
  }
  out << doc.dump(2) << "\n";
}

int exit_code(const std::vector<ReportRow>& rows) {
  for (const ReportRow& row : rows)
    if (!row.converged) return 2;
  return 0;
}

std::size_t thread_cap() {
  if (const char* env = std::getenv("QTSOLVE_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::uint64_t cell_seed(std::uint64_t base, ProcessKind kind, std::size_t beta_index,
                        std::size_t n, std::size_t m) {
  SplitMix64 sm(base);
  std::uint64_t h = sm.next();
  h = SplitMix64(h ^ (static_cast<std::uint64_t>(kind) + 1)).next();
  h = SplitMix64(h ^ (static_cast<std::uint64_t>(beta_index) + 0x100)).next();
  h = SplitMix64(h ^ static_cast<std::uint64_t>(n)).next();
  h = SplitMix64(h ^ (static_cast<std::uint64_t>(m) << 32)).next();
  return h;
}

}  // namespace qtsolve

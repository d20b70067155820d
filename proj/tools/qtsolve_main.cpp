// qtsolve: experiment runner for Strang-preconditioned quaternion Toeplitz
// solves.  Subcommands: solve (exact-covariance systems), estimate
// (correlation-windowed systems from synthesized sample paths), spectrum
// (dense spectra plus distribution and clustering summaries).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtsolve/experiment.hpp"

namespace {

using qtsolve::ExperimentConfig;

struct CliOptions {
  std::string preset;
  std::string config_file;
  std::vector<std::string> betas;
  std::string model;
  double delta = 0.0;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> m_values;
  double tol = 0.0;
  std::string stop;
  std::uint64_t seed = 0;
  std::string precond;
  std::string out_path;
  std::string format;
  std::vector<double> eps_values;
  std::size_t dense_cap = 0;
  std::size_t max_iter = 0;
};

std::array<double, 4> parse_beta(const std::string& text) {
  std::array<double, 4> out{};
  std::istringstream in(text);
  char comma = ',';
  if (!(in >> out[0] >> comma >> out[1] >> comma >> out[2] >> comma >> out[3]))
    throw CLI::ValidationError("--beta expects four comma-separated reals, got '" + text + "'");
  return out;
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--preset", opt.preset, "Parameter preset: table1, table2, table3 or table4");
  cmd->add_option("--config", opt.config_file, "Flat key=value config file");
  cmd->add_option("--model", opt.model, "Process model: ar1 or ma1");
  cmd->add_option("--beta", opt.betas, "Quaternion parameter as a,b,c,d (repeatable)");
  cmd->add_option("--delta", opt.delta, "Noise scale");
  cmd->add_option("--n", opt.n_values, "System sizes")->delimiter(',');
  cmd->add_option("--m", opt.m_values, "Sample multipliers, M = m*n + 1")->delimiter(',');
  cmd->add_option("--tol", opt.tol, "Stopping tolerance (default 1e-7)");
  cmd->add_option("--stop", opt.stop, "Residual reference: relative or absolute");
  cmd->add_option("--seed", opt.seed, "Base RNG seed");
  cmd->add_option("--precond", opt.precond, "Preconditioner: strang, none or both");
  cmd->add_option("--out", opt.out_path, "Output file (default stdout)");
  cmd->add_option("--format", opt.format, "Output format: csv or json");
  cmd->add_option("--eps", opt.eps_values, "Clustering radii for spectrum runs")->delimiter(',');
  cmd->add_option("--dense-cap", opt.dense_cap, "Dense-oracle size cap");
  cmd->add_option("--max-iter", opt.max_iter, "Iteration cap (default 10n)");
}

ExperimentConfig assemble(const CLI::App* cmd, const CliOptions& opt) {
  ExperimentConfig config;
  if (!opt.preset.empty()) config = qtsolve::preset(opt.preset);
  if (!opt.config_file.empty()) qtsolve::apply_config_file(config, opt.config_file);

  if (cmd->count("--model") != 0U) config.model = opt.model;
  if (cmd->count("--beta") != 0U) {
    config.betas.clear();
    for (const std::string& text : opt.betas) config.betas.push_back(parse_beta(text));
  }
  if (cmd->count("--delta") != 0U) config.delta = opt.delta;
  if (cmd->count("--n") != 0U) config.n_values = opt.n_values;
  if (cmd->count("--m") != 0U) config.m_values = opt.m_values;
  if (cmd->count("--tol") != 0U) config.tol = opt.tol;
  if (cmd->count("--stop") != 0U) {
    if (opt.stop == "absolute")
      config.absolute_stop = true;
    else if (opt.stop == "relative")
      config.absolute_stop = false;
    else
      throw CLI::ValidationError("--stop expects relative or absolute");
  }
  if (cmd->count("--seed") != 0U) config.seed = opt.seed;
  if (cmd->count("--precond") != 0U) config.precond = opt.precond;
  if (cmd->count("--out") != 0U) config.out_path = opt.out_path;
  if (cmd->count("--format") != 0U) config.format = opt.format;
  if (cmd->count("--eps") != 0U) config.eps_values = opt.eps_values;
  if (cmd->count("--dense-cap") != 0U) config.dense_cap = opt.dense_cap;
  if (cmd->count("--max-iter") != 0U) config.max_iter = opt.max_iter;

  if (config.betas.empty())
    throw CLI::ValidationError("no beta given (use --beta, --config or --preset)");
  if (config.n_values.empty())
    throw CLI::ValidationError("no n given (use --n, --config or --preset)");
  if (config.format != "csv" && config.format != "json")
    throw CLI::ValidationError("--format expects csv or json");
  return config;
}

int emit_rows(const std::vector<qtsolve::ReportRow>& rows, const ExperimentConfig& config) {
  const auto write = [&](std::ostream& out) {
    if (config.format == "json")
      qtsolve::write_rows_json(rows, out);
    else
      qtsolve::write_rows_csv(rows, out);
  };
  if (config.out_path.empty()) {
    write(std::cout);
  } else {
    std::ofstream file(config.out_path);
    if (!file) throw std::runtime_error("cannot open output file " + config.out_path);
    write(file);
  }
  for (const qtsolve::ReportRow& row : rows)
    if (!row.note.empty())
      std::cerr << "cell " << row.model << " n=" << row.n << " m=" << row.m << " "
                << row.solver << ": " << row.note << "\n";
  return qtsolve::exit_code(rows);
}

std::string spectrum_cell_path(const std::string& base, const qtsolve::SpectrumCell& cell,
                               bool single) {
  if (single) return base;
  const std::filesystem::path p(base);
  std::filesystem::path out = p.parent_path() / p.stem();
  std::ostringstream suffix;
  suffix << "_" << cell.model << "_n" << cell.n;
  out += suffix.str();
  out += p.extension();
  return out.string();
}

int run_spectrum_command(const ExperimentConfig& config) {
  const std::vector<qtsolve::SpectrumCell> cells = qtsolve::run_spectrum(config);
  if (config.format == "json") {
    if (config.out_path.empty()) {
      qtsolve::write_spectrum_cells_json(cells, std::cout);
    } else {
      std::ofstream file(config.out_path);
      if (!file) throw std::runtime_error("cannot open output file " + config.out_path);
      qtsolve::write_spectrum_cells_json(cells, file);
    }
    return 0;
  }
  for (const qtsolve::SpectrumCell& cell : cells) {
    if (config.out_path.empty()) {
      qtsolve::write_spectrum_csv(cell.spectrum, std::cout);
    } else {
      const std::string path = spectrum_cell_path(config.out_path, cell, cells.size() == 1);
      std::ofstream file(path);
      if (!file) throw std::runtime_error("cannot open output file " + path);
      qtsolve::write_spectrum_csv(cell.spectrum, file);
    }
    std::cout << "model=" << cell.model << " n=" << cell.n
              << " lambda_min=" << cell.spectrum.eigenvalues.front()
              << " lambda_max=" << cell.spectrum.eigenvalues.back()
              << " min_fcheck=" << cell.min_fcheck << " max_fhat=" << cell.max_fhat
              << " szego_l1_gap=" << cell.moment_identity.relative_gap
              << " szego_l2_gap=" << cell.moment_square.relative_gap;
    for (const qtsolve::ClusteringReport& c : cell.clustering)
      std::cout << " outside(eps=" << c.epsilon << ")=" << c.outside_count
                << " min_precond_eig=" << c.min_eigenvalue;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strang-preconditioned CG solver and spectral toolkit for Hermitian "
               "quaternion Toeplitz systems"};
  app.require_subcommand(1);

  CliOptions solve_opt, spectrum_opt, estimate_opt;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve exact-covariance prediction systems");
  add_common_options(solve_cmd, solve_opt);
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Dense spectrum, distribution and clustering reports");
  add_common_options(spectrum_cmd, spectrum_opt);
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "Solve correlation-windowed estimated systems");
  add_common_options(estimate_cmd, estimate_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      const ExperimentConfig config = assemble(solve_cmd, solve_opt);
      return emit_rows(qtsolve::run_solve(config), config);
    }
    if (estimate_cmd->parsed()) {
      const ExperimentConfig config = assemble(estimate_cmd, estimate_opt);
      return emit_rows(qtsolve::run_estimate(config), config);
    }
    if (spectrum_cmd->parsed()) return run_spectrum_command(assemble(spectrum_cmd, spectrum_opt));
  } catch (const std::exception& ex) {
    std::cerr << "qtsolve: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

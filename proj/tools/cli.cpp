// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "simt/bench.hpp"
#include "simt/device.hpp"
#include "simt/error.hpp"
#include "simt/executor.hpp"
#include "simt/generators.hpp"
#include "simt/matrix_market.hpp"
#include "simt/solvers.hpp"
#include "simt/terminology.hpp"

namespace simt::cli {

namespace {

struct SourceArgs {
  std::optional<std::size_t> poisson;
  std::optional<std::size_t> convdiff;
  std::optional<std::string> mm;
  std::optional<std::size_t> gemm;
};

struct SolveArgs {
  SourceArgs source;
  std::string method = "cg";
  double tol = 1e-6;
  std::size_t max_iter = 0;
  std::size_t restart = 30;
  std::string precision = "f64";
  unsigned workers = 0;
  std::uint64_t seed = 42;
  std::uint32_t block = 256;
  bool residuals = false;
};

struct BenchArgs {
  SourceArgs source;
  std::string methods = "cg";
  std::optional<std::string> workers;
  std::size_t reps = 3;
  std::string precision = "f64";
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::size_t max_iter = 0;
  std::size_t restart = 30;
  bool no_reference = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_matrix_sources(CLI::App* cmd, SourceArgs& src, bool with_gemm) {
  auto* group = cmd->add_option_group("matrix source");
  group->add_option("--poisson", src.poisson, "2D Poisson 5-point matrix on a K x K grid")
      ->check(CLI::PositiveNumber);
  group->add_option("--convdiff", src.convdiff,
                    "nonsymmetric convection-diffusion matrix on a K x K grid")
      ->check(CLI::PositiveNumber);
  group->add_option("--mm", src.mm, "Matrix Market coordinate file");
  if (with_gemm) {
    group->add_option("--gemm", src.gemm, "dense N x N matrix multiply")
        ->check(CLI::PositiveNumber);
  }
  group->require_option(1);
}

struct System {
  std::string id;
  CsrMatrix<double> a;
};

System load_system(const SourceArgs& src) {
  if (src.poisson) return {"poisson-" + std::to_string(*src.poisson), gen_poisson(*src.poisson)};
  if (src.convdiff) {
    return {"convdiff-" + std::to_string(*src.convdiff), gen_convection_diffusion(*src.convdiff)};
  }
  return {std::filesystem::path(*src.mm).filename().string(), load_matrix_market(*src.mm)};
}

ElemKind precision_or_throw(const std::string& text) {
  const auto kind = parse_precision(text);
  if (!kind) throw InputError("unknown precision '" + text + "' (expected f32 or f64)");
  return *kind;
}

Method method_or_throw(const std::string& text) {
  const auto method = parse_method(text);
  if (!method) {
    throw InputError("unknown method '" + text +
                     "' (expected jacobi, gauss-seidel, cg, gmres, bicgstab)");
  }
  return *method;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<unsigned> parse_workers(const std::string& text) {
  std::vector<unsigned> counts;
  for (const auto& part : split(text)) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || value == 0) {
      throw InputError("invalid worker count '" + part + "'");
    }
    counts.push_back(value);
  }
  if (counts.empty()) throw InputError("workers list must not be empty");
  return counts;
}

void print_report(std::ostream& err, const SolverReport& r, unsigned workers, bool residuals) {
  err << "method       " << to_string(r.method) << '\n'
      << "precision    " << to_string(r.kind) << '\n'
      << "n            " << r.n << '\n'
      << "workers      " << workers << '\n'
      << "grid         " << r.grid_blocks << " blocks x " << r.threads_per_block
      << " threads\n"
      << "converged    " << (r.converged ? "yes" : "no") << '\n'
      << "iterations   " << r.iterations << " (max " << r.max_iter << ")\n"
      << "residual     " << std::scientific << std::setprecision(6) << r.final_residual() << '\n'
      << "step timings (seconds):\n";
  for (std::size_t i = 0; i < kFlowSteps; ++i) {
    err << "  " << (i + 1) << ' ' << std::left << std::setw(14)
        << describe(static_cast<FlowStep>(i)) << std::right << r.step_seconds[i] << '\n';
  }
  if (residuals) {
    err << "residual history:\n";
    for (std::size_t k = 0; k < r.residual_history.size(); ++k) {
      err << "  " << k << ' ' << r.residual_history[k] << '\n';
    }
  }
  err << std::defaultfloat;
}

int do_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  SolverConfig cfg;
  cfg.method = method_or_throw(args.method);
  cfg.kind = precision_or_throw(args.precision);
  cfg.tol = args.tol;
  cfg.max_iter = args.max_iter;
  cfg.restart = args.restart;
  cfg.block_size = args.block;
  if (!(cfg.tol > 0.0)) throw InputError("--tol must be positive");
  if (cfg.restart == 0) throw InputError("--restart must be at least 1");

  const System sys = load_system(args.source);
  const std::vector<double> b = random_vector(sys.a.n_rows, args.seed);
  const unsigned workers = args.workers != 0 ? args.workers : default_worker_count();

  Device device;
  Executor exec(device, ExecutorOptions{workers});
  const SolveResult result = solve(exec, sys.a, b, cfg);
  const SolverReport& r = result.report;

  print_report(err, r, workers, args.residuals);

  out << "workload,method,n,kind,workers,converged,iterations,final_residual";
  for (std::size_t i = 0; i < kFlowSteps; ++i) out << ",t_" << describe(static_cast<FlowStep>(i));
  out << '\n';
  out << sys.id << ',' << to_string(r.method) << ',' << r.n << ',' << to_string(r.kind) << ','
      << workers << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << ','
      << std::setprecision(17) << r.final_residual();
  out << std::setprecision(9);
  for (const double s : r.step_seconds) out << ',' << s;
  out << '\n' << std::defaultfloat << std::setprecision(6);
  return r.converged ? kOk : kNotConverged;
}

int do_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  opts.workers = parse_workers(args.workers.value_or(std::to_string(default_worker_count())));
  opts.repetitions = args.reps;
  opts.kind = precision_or_throw(args.precision);
  opts.seed = args.seed;
  opts.include_reference = !args.no_reference;
  if (opts.repetitions == 0) throw InputError("--reps must be at least 1");

  std::vector<BenchRecord> rows;
  if (args.source.gemm) {
    rows = bench_gemm(*args.source.gemm, opts);
  } else {
    std::vector<Method> methods;
    for (const auto& name : split(args.methods)) methods.push_back(method_or_throw(name));
    if (methods.empty()) throw InputError("--methods must name at least one method");
    const System sys = load_system(args.source);
    const std::vector<double> b = random_vector(sys.a.n_rows, args.seed);
    SolverConfig cfg;
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;
    cfg.restart = args.restart;
    rows = bench_solvers(sys.id, sys.a, b, methods, cfg, opts);
  }
  write_bench_csv(out, rows);

  err << "host: " << std::thread::hardware_concurrency() << " hardware threads\n";
  for (const auto& row : rows) {
    if (row.workers != 0) continue;
    const auto sim = std::find_if(rows.begin(), rows.end(), [&](const BenchRecord& r) {
      return r.method == row.method && r.workers != 0;
    });
    if (sim != rows.end()) {
      err << row.method << ": sequential reference " << row.wall_seconds << " s, simulator p="
          << sim->workers << " " << sim->wall_seconds << " s\n";
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SIMT execution-model simulator and iterative solver harness", "simt"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve A x = b on the simulated device");
  add_matrix_sources(solve_cmd, solve_args.source, false);
  solve_cmd->add_option("--method", solve_args.method,
                        "jacobi | gauss-seidel | cg | gmres | bicgstab")
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve_args.tol, "relative residual tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "iteration cap (0: 10 n)")
      ->capture_default_str();
  solve_cmd->add_option("--restart", solve_args.restart, "GMRES restart length")
      ->capture_default_str();
  solve_cmd->add_option("--precision", solve_args.precision, "f32 | f64")->capture_default_str();
  solve_cmd->add_option("--workers", solve_args.workers, "simulated cores")
      ->envname("SIMT_WORKERS")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve_args.seed, "seed for the right-hand side")
      ->capture_default_str();
  solve_cmd->add_option("--block", solve_args.block, "threads per block")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  solve_cmd->add_flag("--residuals", solve_args.residuals, "print the residual history");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "parallel scaling benchmark, CSV on stdout");
  add_matrix_sources(bench_cmd, bench_args.source, true);
  bench_cmd->add_option("--methods", bench_args.methods, "comma-separated solver methods")
      ->capture_default_str();
  bench_cmd->add_option("--method", bench_args.methods, "alias of --methods");
  bench_cmd->add_option("--workers", bench_args.workers, "comma-separated worker counts")
      ->envname("SIMT_WORKERS");
  bench_cmd->add_option("--reps", bench_args.reps, "repetitions per measurement (median)")
      ->capture_default_str();
  bench_cmd->add_option("--precision", bench_args.precision, "f32 | f64")->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "seed for generated data")
      ->capture_default_str();
  bench_cmd->add_option("--tol", bench_args.tol, "solver tolerance")->capture_default_str();
  bench_cmd->add_option("--max-iter", bench_args.max_iter, "solver iteration cap (0: 10 n)");
  bench_cmd->add_option("--restart", bench_args.restart, "GMRES restart length")
      ->capture_default_str();
  bench_cmd->add_flag("--no-reference", bench_args.no_reference,
                      "skip the sequential reference rows");

  std::string term;
  auto* term_cmd = app.add_subcommand("term", "translate between CUDA and OpenCL terms");
  term_cmd->add_option("term", term, "term to translate")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == solve_cmd) return do_solve(solve_args, out, err);
    if (active == bench_cmd) return do_bench(bench_args, out, err);
    out << terminology_lookup(term) << '\n';
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kInputError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::Breakdown ? kNotConverged : kInputError;
  }
}

}  // namespace simt::cli

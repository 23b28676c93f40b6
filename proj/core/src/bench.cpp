// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>

#include "simt/device.hpp"
#include "simt/error.hpp"
#include "simt/executor.hpp"
#include "simt/generators.hpp"
#include "simt/kernels.hpp"
#include "simt/reference.hpp"

namespace simt {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMinSeconds = 1e-9;

void check_options(const BenchOptions& opts) {
  if (opts.workers.empty()) {
    throw Error(ErrorCode::InvalidArgument, "workers list must not be empty");
  }
  if (std::find(opts.workers.begin(), opts.workers.end(), 0u) != opts.workers.end()) {
    throw Error(ErrorCode::InvalidArgument, "worker counts must be positive");
  }
  if (opts.repetitions == 0) {
    throw Error(ErrorCode::InvalidArgument, "repetitions must be at least 1");
  }
}

// Worker counts to measure: the requested ones plus p = 1 for the ratio.
std::vector<unsigned> measured_counts(const std::vector<unsigned>& requested) {
  std::vector<unsigned> counts = requested;
  counts.push_back(1);
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  return counts;
}

// Simulator rows in the requested order, preceded by the reference row.
std::vector<BenchRecord> assemble(const BenchRecord& proto, const BenchOptions& opts,
                                  const std::map<unsigned, double>& times,
                                  double reference_seconds) {
  std::vector<BenchRecord> rows;
  if (opts.include_reference) {
    BenchRecord ref = proto;
    ref.workers = 0;
    ref.wall_seconds = reference_seconds;
    ref.speedup = 1.0;
    rows.push_back(ref);
  }
  const double base = times.at(1);
  for (const unsigned p : opts.workers) {
    BenchRecord row = proto;
    row.workers = p;
    row.wall_seconds = times.at(p);
    row.speedup = base / row.wall_seconds;
    rows.push_back(row);
  }
  return rows;
}

template <typename T>
std::vector<BenchRecord> gemm_typed(std::size_t n, const BenchOptions& opts) {
  const auto to_t = [](const std::vector<double>& v) { return std::vector<T>(v.begin(), v.end()); };
  const DenseMatrix<T> a(n, n, to_t(random_vector(n * n, opts.seed)));
  const DenseMatrix<T> b(n, n, to_t(random_vector(n * n, opts.seed + 1)));
  DenseMatrix<T> c(n, n);

  Device device;
  Executor exec(device, ExecutorOptions{1});
  const DeviceMatrix da{n, n, device.alloc(n * n, kind_of<T>())};
  const DeviceMatrix db{n, n, device.alloc(n * n, kind_of<T>())};
  const DeviceMatrix dc{n, n, device.alloc(n * n, kind_of<T>())};

  std::map<unsigned, double> times;
  for (const unsigned p : measured_counts(opts.workers)) {
    exec.set_worker_count(p);
    std::vector<double> samples;
    for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
      const auto start = Clock::now();
      device.copy_host_to_device(std::span<const T>(a.data), da.buf);
      device.copy_host_to_device(std::span<const T>(b.data), db.buf);
      device.copy_host_to_device(std::span<const T>(c.data), dc.buf);
      kernels::gemm(exec, 1.0, da, db, 0.0, dc);
      device.copy_device_to_host(dc.buf, std::span<T>(c.data));
      samples.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    times[p] = std::max(kMinSeconds, median(samples));
  }
  device.free(da.buf);
  device.free(db.buf);
  device.free(dc.buf);

  double reference_seconds = kMinSeconds;
  if (opts.include_reference) {
    std::vector<double> samples;
    for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
      DenseMatrix<T> out(n, n);
      const auto start = Clock::now();
      reference::gemm<T>(T(1), a, b, T(0), out);
      samples.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    reference_seconds = std::max(kMinSeconds, median(samples));
  }

  BenchRecord proto;
  proto.workload = "gemm-" + std::to_string(n);
  proto.method = "gemm";
  proto.n = n;
  proto.kind = kind_of<T>();
  return assemble(proto, opts, times, reference_seconds);
}

}  // namespace

double median(std::vector<double> samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::InvalidArgument, "median of no samples");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

std::vector<BenchRecord> bench_gemm(std::size_t n, const BenchOptions& opts) {
  check_options(opts);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "gemm size must be positive");
  return dispatch_precision(opts.kind, [&](auto tag) {
    return gemm_typed<decltype(tag)>(n, opts);
  });
}

std::vector<BenchRecord> bench_solvers(const std::string& workload, const CsrMatrix<double>& a,
                                       std::span<const double> b,
                                       std::span<const Method> methods, SolverConfig base,
                                       const BenchOptions& opts) {
  check_options(opts);
  base.kind = opts.kind;
  Device device;
  Executor exec(device, ExecutorOptions{1});
  std::vector<BenchRecord> rows;
  for (const Method method : methods) {
    SolverConfig cfg = base;
    cfg.method = method;
    std::map<unsigned, double> times;
    for (const unsigned p : measured_counts(opts.workers)) {
      exec.set_worker_count(p);
      std::vector<double> samples;
      for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
        samples.push_back(solve(exec, a, b, cfg).report.device_seconds());
      }
      times[p] = std::max(kMinSeconds, median(samples));
    }
    double reference_seconds = kMinSeconds;
    if (opts.include_reference) {
      std::vector<double> samples;
      for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
        samples.push_back(reference::solve(a, b, cfg).report.seconds(FlowStep::Execute));
      }
      reference_seconds = std::max(kMinSeconds, median(samples));
    }
    BenchRecord proto;
    proto.workload = workload;
    proto.method = std::string(to_string(method));
    proto.n = a.n_rows;
    proto.kind = opts.kind;
    auto part = assemble(proto, opts, times, reference_seconds);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kBenchCsvHeader << '\n';
  char seconds[32];
  char ratio[32];
  for (const BenchRecord& r : records) {
    std::string workload = r.workload;
    std::replace(workload.begin(), workload.end(), ',', '_');
    std::snprintf(seconds, sizeof seconds, "%.9g", r.wall_seconds);
    std::snprintf(ratio, sizeof ratio, "%.6g", r.speedup);
    out << workload << ',' << r.method << ',' << r.n << ',' << to_string(r.kind) << ','
        << r.workers << ',' << seconds << ',' << ratio << '\n';
  }
}

}  // namespace simt

// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/executor.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace simt {

namespace {

std::string dims(const Dim3& d) {
  return "(" + std::to_string(d.x) + "," + std::to_string(d.y) + "," + std::to_string(d.z) + ")";
}

}  // namespace

LaunchConfig linear_config(std::size_t n, std::uint32_t block_size) {
  if (block_size == 0) {
    throw Error(ErrorCode::InvalidLaunch, "block size must be positive");
  }
  const std::size_t blocks = std::max<std::size_t>(1, (n + block_size - 1) / block_size);
  if (blocks > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::InvalidLaunch, "grid too large for a 1D launch");
  }
  LaunchConfig cfg;
  cfg.grid = Dim3{static_cast<std::uint32_t>(blocks), 1, 1};
  cfg.block = Dim3{block_size, 1, 1};
  return cfg;
}

std::uint64_t global_linear_id(const ThreadCtx& ctx) noexcept {
  const auto& b = ctx.block_idx;
  const auto& g = ctx.grid_dim;
  const auto& t = ctx.thread_idx;
  const auto& bd = ctx.block_dim;
  const std::uint64_t block_linear =
      (std::uint64_t{b.z} * g.y + b.y) * std::uint64_t{g.x} + b.x;
  const std::uint64_t thread_linear =
      (std::uint64_t{t.z} * bd.y + t.y) * std::uint64_t{bd.x} + t.x;
  return block_linear * bd.volume() + thread_linear;
}

void SharedScratch::prepare(std::size_t len, ElemKind kind, detail::SharedRaceLog* log) {
  const std::size_t bytes = len * width(kind);
  const std::size_t words = (bytes + sizeof(double) - 1) / sizeof(double);
  storage_.assign(words, 0.0);
  len_ = len;
  kind_ = kind;
  log_ = log;
}

double KernelArgs::scalar(std::size_t i) const {
  const Slot& slot = at(i);
  if (const auto* d = std::get_if<double>(&slot)) return *d;
  if (const auto* n = std::get_if<index_t>(&slot)) return static_cast<double>(*n);
  throw Error(ErrorCode::InvalidArgument, "kernel argument " + std::to_string(i) +
                                              " is not a scalar");
}

index_t KernelArgs::integer(std::size_t i) const {
  const auto* n = std::get_if<index_t>(&at(i));
  if (n == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "kernel argument " + std::to_string(i) +
                                                " is not an integer");
  }
  return *n;
}

Executor::Executor(Device& device, ExecutorOptions options)
    : device_(device),
      pool_(options.workers),
      shared_limit_(options.shared_memory_bytes),
      race_check_(options.race_check) {}

void Executor::set_worker_count(unsigned workers) {
  std::lock_guard lock(launch_mu_);
  pool_.resize(workers);
}

void Executor::validate(const Kernel& kernel, const LaunchConfig& cfg) const {
  if (kernel.phases.empty()) {
    throw Error(ErrorCode::InvalidLaunch, "kernel '" + kernel.name + "' has no phases");
  }
  for (const auto& phase : kernel.phases) {
    if (!phase) {
      throw Error(ErrorCode::InvalidLaunch, "kernel '" + kernel.name + "' has an empty phase");
    }
  }
  const auto positive = [](const Dim3& d) { return d.x >= 1 && d.y >= 1 && d.z >= 1; };
  if (!positive(cfg.grid) || !positive(cfg.block)) {
    throw Error(ErrorCode::InvalidLaunch, "launch extents must be >= 1, got grid " +
                                              dims(cfg.grid) + " block " + dims(cfg.block));
  }
  if (cfg.block.volume() > kMaxThreadsPerBlock) {
    throw Error(ErrorCode::BlockTooLarge,
                "block " + dims(cfg.block) + " has " + std::to_string(cfg.block.volume()) +
                    " threads; the limit is " + std::to_string(kMaxThreadsPerBlock));
  }
  // grid volume times block volume must fit a 64-bit linear id
  if (cfg.grid.volume() > std::numeric_limits<std::uint64_t>::max() / cfg.block.volume()) {
    throw Error(ErrorCode::InvalidLaunch, "launch domain overflows 64-bit thread ids");
  }
  const std::size_t shared_bytes = cfg.shared_elems * width(cfg.kind);
  if (cfg.shared_elems != 0 &&
      (shared_bytes / cfg.shared_elems != width(cfg.kind) || shared_bytes > shared_limit_)) {
    throw Error(ErrorCode::SharedMemoryLimit,
                "kernel '" + kernel.name + "' requests " + std::to_string(cfg.shared_elems) +
                    " shared " + std::string(to_string(cfg.kind)) + " elements; limit is " +
                    std::to_string(shared_limit_) + " bytes per block");
  }
}

void Executor::run_block(const Kernel& kernel, const LaunchConfig& cfg, const KernelArgs& args,
                         std::uint64_t block, SharedScratch& scratch,
                         detail::SharedRaceLog* log) const {
  ThreadCtx ctx;
  ctx.grid_dim = cfg.grid;
  ctx.block_dim = cfg.block;
  ctx.block = block;
  ctx.block_idx.x = static_cast<std::uint32_t>(block % cfg.grid.x);
  ctx.block_idx.y = static_cast<std::uint32_t>((block / cfg.grid.x) % cfg.grid.y);
  ctx.block_idx.z = static_cast<std::uint32_t>(block / (std::uint64_t{cfg.grid.x} * cfg.grid.y));
  const std::uint64_t base = block * cfg.block.volume();

  scratch.prepare(cfg.shared_elems, cfg.kind, log);
  if (log != nullptr) log->reset();

  for (std::uint32_t phase = 0; phase < kernel.phases.size(); ++phase) {
    const KernelPhase& body = kernel.phases[phase];
    ctx.phase = phase;
    std::uint64_t tid = 0;
    for (std::uint32_t tz = 0; tz < cfg.block.z; ++tz) {
      for (std::uint32_t ty = 0; ty < cfg.block.y; ++ty) {
        for (std::uint32_t tx = 0; tx < cfg.block.x; ++tx, ++tid) {
          ctx.thread_idx = Dim3{tx, ty, tz};
          ctx.tid = tid;
          ctx.gid = base + tid;
          body(ctx, args, scratch);
        }
      }
    }
  }
}

void Executor::launch(const Kernel& kernel, const LaunchConfig& cfg,
                      std::span<const KernelArg> args) {
  std::lock_guard lock(launch_mu_);
  validate(kernel, cfg);

  detail::GlobalRaceLog global_log;
  KernelArgs bound;
  bound.log_ = race_check_ ? &global_log : nullptr;
  bound.args_.reserve(args.size());
  for (const KernelArg& arg : args) {
    if (const auto* buf = std::get_if<DeviceBuffer>(&arg)) {
      std::span<std::byte> mem = device_.storage(*buf);
      bound.args_.emplace_back(KernelArgs::Binding{mem.data(), buf->len, buf->kind, buf->id});
    } else if (const auto* d = std::get_if<double>(&arg)) {
      bound.args_.emplace_back(*d);
    } else {
      bound.args_.emplace_back(std::get<index_t>(arg));
    }
  }

  const std::uint64_t blocks = cfg.grid.volume();
  const unsigned workers = pool_.size();

  if (workers == 1 || blocks == 1) {
    SharedScratch scratch;
    detail::SharedRaceLog shared_log;
    for (std::uint64_t b = 0; b < blocks; ++b) {
      run_block(kernel, cfg, bound, b, scratch, race_check_ ? &shared_log : nullptr);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  pool_.run([&](unsigned) {
    SharedScratch scratch;
    detail::SharedRaceLog shared_log;
    try {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= blocks) return;
        run_block(kernel, cfg, bound, b, scratch, race_check_ ? &shared_log : nullptr);
      }
    } catch (...) {
      failed.store(true, std::memory_order_relaxed);
      throw;
    }
  });
}

}  // namespace simt

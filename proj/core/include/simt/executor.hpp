// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "simt/device.hpp"
#include "simt/elem_kind.hpp"
#include "simt/error.hpp"
#include "simt/race_checker.hpp"
#include "simt/worker_pool.hpp"

namespace simt {

/// CUDA limit on threads per block.
inline constexpr std::uint64_t kMaxThreadsPerBlock = 1024;
inline constexpr std::size_t kDefaultSharedMemoryBytes = 48 * 1024;

struct Dim3 {
  std::uint32_t x = 1;
  std::uint32_t y = 1;
  std::uint32_t z = 1;

  constexpr std::uint64_t volume() const noexcept {
    return std::uint64_t{x} * std::uint64_t{y} * std::uint64_t{z};
  }
  constexpr bool operator==(const Dim3&) const = default;
};

struct LaunchConfig {
  Dim3 grid;
  Dim3 block;
  std::size_t shared_elems = 0;
  ElemKind kind = ElemKind::F64;  // element type of the shared scratch
};

/// 1D launch covering n logical threads: ceil(n / block_size) blocks.
LaunchConfig linear_config(std::size_t n, std::uint32_t block_size = 256);

/// Identity of one logical thread within a launch.
struct ThreadCtx {
  Dim3 thread_idx{0, 0, 0};
  Dim3 block_idx{0, 0, 0};
  Dim3 block_dim;
  Dim3 grid_dim;
  std::uint32_t phase = 0;
  std::uint64_t tid = 0;    // linear index within the block
  std::uint64_t block = 0;  // linear block index
  std::uint64_t gid = 0;    // global linear id

  // OpenCL names for the same quantities.
  const Dim3& local_id() const noexcept { return thread_idx; }
  const Dim3& group_id() const noexcept { return block_idx; }
  const Dim3& local_size() const noexcept { return block_dim; }
  const Dim3& num_groups() const noexcept { return grid_dim; }
};

/// Row-major linearization over the whole launch domain:
/// ((bz*Gy + by)*Gx + bx) * (Bx*By*Bz) + (tz*By + ty)*Bx + tx.
std::uint64_t global_linear_id(const ThreadCtx& ctx) noexcept;

/// Typed window onto a device buffer bound to a launch. Loads and stores are
/// recorded when the race checker is enabled.
template <typename T>
class GlobalView {
 public:
  GlobalView(T* data, std::size_t len, std::uint64_t id, detail::GlobalRaceLog* log)
      : data_(data), len_(len), id_(id), log_(log) {}

  std::size_t size() const noexcept { return len_; }

  T load(const ThreadCtx& ctx, std::size_t i) const {
    if (log_ != nullptr) track(ctx, i, false);
    assert(i < len_);
    return data_[i];
  }
  void store(const ThreadCtx& ctx, std::size_t i, T value) const {
    if (log_ != nullptr) track(ctx, i, true);
    assert(i < len_);
    data_[i] = value;
  }

 private:
  void track(const ThreadCtx& ctx, std::size_t i, bool write) const {
    if (i >= len_) {
      throw Error(ErrorCode::IndexOutOfBounds,
                  "thread " + std::to_string(ctx.gid) + " accessed global buffer #" +
                      std::to_string(id_) + " at " + std::to_string(i) + " (length " +
                      std::to_string(len_) + ")");
    }
    log_->record(id_, i, detail::Access{ctx.gid, ctx.block, ctx.phase, write});
  }

  T* data_;
  std::size_t len_;
  std::uint64_t id_;
  detail::GlobalRaceLog* log_;
};

template <typename T>
class SharedView {
 public:
  SharedView(T* data, std::size_t len, detail::SharedRaceLog* log)
      : data_(data), len_(len), log_(log) {}

  std::size_t size() const noexcept { return len_; }

  T load(const ThreadCtx& ctx, std::size_t i) const {
    if (log_ != nullptr) track(ctx, i, false);
    assert(i < len_);
    return data_[i];
  }
  void store(const ThreadCtx& ctx, std::size_t i, T value) const {
    if (log_ != nullptr) track(ctx, i, true);
    assert(i < len_);
    data_[i] = value;
  }

 private:
  void track(const ThreadCtx& ctx, std::size_t i, bool write) const {
    if (i >= len_) {
      throw Error(ErrorCode::IndexOutOfBounds,
                  "thread " + std::to_string(ctx.gid) + " accessed shared[" + std::to_string(i) +
                      "] (length " + std::to_string(len_) + ")");
    }
    log_->record(i, detail::Access{ctx.gid, ctx.block, ctx.phase, write});
  }

  T* data_;
  std::size_t len_;
  detail::SharedRaceLog* log_;
};

/// Per-block scratch, zeroed at block start and visible only to that block.
class SharedScratch {
 public:
  template <typename T>
  SharedView<T> view() {
    if (kind_of<T>() != kind_) {
      throw Error(ErrorCode::KindMismatch, "shared scratch element kind mismatch");
    }
    return SharedView<T>(reinterpret_cast<T*>(storage_.data()), len_, log_);
  }
  std::size_t size() const noexcept { return len_; }

 private:
  friend class Executor;
  void prepare(std::size_t len, ElemKind kind, detail::SharedRaceLog* log);

  std::vector<double> storage_;  // double-typed for alignment
  std::size_t len_ = 0;
  ElemKind kind_ = ElemKind::F64;
  detail::SharedRaceLog* log_ = nullptr;
};

/// A device buffer, a floating-point scalar, or an integer scalar.
using KernelArg = std::variant<DeviceBuffer, double, index_t>;

/// Launch arguments as seen from inside a kernel.
class KernelArgs {
 public:
  std::size_t size() const noexcept { return args_.size(); }

  template <typename T>
  GlobalView<T> global(std::size_t i) const {
    const auto* b = std::get_if<Binding>(&at(i));
    if (b == nullptr) {
      throw Error(ErrorCode::InvalidArgument,
                  "kernel argument " + std::to_string(i) + " is not a buffer");
    }
    if (b->kind != kind_of<T>()) {
      throw Error(ErrorCode::KindMismatch,
                  "kernel argument " + std::to_string(i) + " has kind " +
                      std::string(to_string(b->kind)));
    }
    return GlobalView<T>(reinterpret_cast<T*>(b->data), b->len, b->id, log_);
  }

  double scalar(std::size_t i) const;
  index_t integer(std::size_t i) const;

 private:
  friend class Executor;
  struct Binding {
    std::byte* data;
    std::size_t len;
    ElemKind kind;
    std::uint64_t id;
  };
  using Slot = std::variant<Binding, double, index_t>;

  const Slot& at(std::size_t i) const {
    if (i >= args_.size()) {
      throw Error(ErrorCode::InvalidArgument, "kernel argument " + std::to_string(i) +
                                                  " out of range");
    }
    return args_[i];
  }

  std::vector<Slot> args_;
  detail::GlobalRaceLog* log_ = nullptr;
};

/// A kernel is an ordered list of phases. Every thread of a block finishes
/// phase k before any thread of that block starts phase k+1, which is the
/// block-level barrier.
using KernelPhase = std::function<void(const ThreadCtx&, const KernelArgs&, SharedScratch&)>;

struct Kernel {
  std::string name;
  std::vector<KernelPhase> phases;
};

struct ExecutorOptions {
  unsigned workers = default_worker_count();
  std::size_t shared_memory_bytes = kDefaultSharedMemoryBytes;
  bool race_check = false;
};

/// Runs kernels over a grid of blocks on a pool of simulated cores. Blocks
/// are the unit of scheduling; the threads of a block run as a loop inside
/// one worker, phase by phase.
class Executor {
 public:
  explicit Executor(Device& device, ExecutorOptions options = {});

  Device& device() noexcept { return device_; }

  void set_worker_count(unsigned workers);
  unsigned worker_count() const noexcept { return pool_.size(); }

  void set_race_check(bool enabled) noexcept { race_check_ = enabled; }
  bool race_check() const noexcept { return race_check_; }

  std::size_t shared_memory_limit() const noexcept { return shared_limit_; }

  void launch(const Kernel& kernel, const LaunchConfig& cfg, std::span<const KernelArg> args);
  void launch(const Kernel& kernel, const LaunchConfig& cfg,
              std::initializer_list<KernelArg> args) {
    launch(kernel, cfg, std::span<const KernelArg>(args.begin(), args.size()));
  }

  // OpenCL vocabulary.
  void enqueue_nd_range_kernel(const Kernel& kernel, const LaunchConfig& cfg,
                               std::span<const KernelArg> args) {
    launch(kernel, cfg, args);
  }

 private:
  void validate(const Kernel& kernel, const LaunchConfig& cfg) const;
  void run_block(const Kernel& kernel, const LaunchConfig& cfg, const KernelArgs& args,
                 std::uint64_t block, SharedScratch& scratch, detail::SharedRaceLog* log) const;

  Device& device_;
  WorkerPool pool_;
  std::size_t shared_limit_;
  bool race_check_;
  std::mutex launch_mu_;
};

}  // namespace simt

// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace simt {

/// Fork-join pool of simulated cores. `run` executes a job once per worker,
/// with the calling thread acting as worker 0, and returns after all workers
/// finish. The first exception thrown by any worker is rethrown to the caller.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned workers = 1);
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;
  ~WorkerPool();

  unsigned size() const noexcept { return static_cast<unsigned>(threads_.size()) + 1; }
  void resize(unsigned workers);

  void run(const std::function<void(unsigned)>& job);

 private:
  void start(unsigned workers);
  void stop();
  void loop(unsigned index);
  void invoke(unsigned index);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(unsigned)>* job_ = nullptr;
  std::uint64_t generation_ = 0;
  unsigned pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

/// Worker count from SIMT_WORKERS when set to a positive integer, otherwise
/// the host's hardware concurrency (at least 1).
unsigned default_worker_count();

}  // namespace simt

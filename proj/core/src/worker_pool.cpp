// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/worker_pool.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "simt/error.hpp"

namespace simt {

WorkerPool::WorkerPool(unsigned workers) { start(workers); }

WorkerPool::~WorkerPool() { stop(); }

void WorkerPool::resize(unsigned workers) {
  if (workers == 0) {
    throw Error(ErrorCode::InvalidArgument, "worker count must be at least 1");
  }
  if (workers == size()) return;
  stop();
  start(workers);
}

void WorkerPool::start(unsigned workers) {
  if (workers == 0) {
    throw Error(ErrorCode::InvalidArgument, "worker count must be at least 1");
  }
  stopping_ = false;
  threads_.reserve(workers - 1);
  for (unsigned i = 1; i < workers; ++i) {
    threads_.emplace_back([this, i] { loop(i); });
  }
}

void WorkerPool::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
  threads_.clear();
}

void WorkerPool::invoke(unsigned index) {
  try {
    (*job_)(index);
  } catch (...) {
    std::lock_guard lock(mu_);
    if (!error_) error_ = std::current_exception();
  }
}

void WorkerPool::loop(unsigned index) {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mu_);
      start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
    }
    invoke(index);
    {
      std::lock_guard lock(mu_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerPool::run(const std::function<void(unsigned)>& job) {
  job_ = &job;
  error_ = nullptr;
  if (!threads_.empty()) {
    {
      std::lock_guard lock(mu_);
      pending_ = static_cast<unsigned>(threads_.size());
      ++generation_;
    }
    start_cv_.notify_all();
  }
  invoke(0);
  if (!threads_.empty()) {
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [&] { return pending_ == 0; });
  }
  job_ = nullptr;
  if (error_) {
    std::rethrow_exception(std::exchange(error_, nullptr));
  }
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("SIMT_WORKERS"); env != nullptr) {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace simt

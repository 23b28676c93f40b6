// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/race_checker.hpp"

#include <algorithm>

#include "simt/error.hpp"

namespace simt::detail {

namespace {

bool same_access(const Access& a, const Access& b) {
  return a.thread == b.thread && a.phase == b.phase && a.write == b.write;
}

std::string verb(bool write) { return write ? "write" : "read"; }

[[noreturn]] void report(const std::string& where, const Access& prior, const Access& now) {
  throw Error(ErrorCode::DataRace,
              "data race on " + where + ": thread " + std::to_string(now.thread) + " " +
                  verb(now.write) + " in phase " + std::to_string(now.phase) +
                  " conflicts with thread " + std::to_string(prior.thread) + " " +
                  verb(prior.write) + " in phase " + std::to_string(prior.phase));
}

}  // namespace

void GlobalRaceLog::record(std::uint64_t buffer_id, std::size_t index, const Access& access) {
  std::lock_guard lock(mu_);
  auto& seen = log_[Key{buffer_id, index}];
  for (const Access& prior : seen) {
    if (same_access(prior, access)) return;
  }
  for (const Access& prior : seen) {
    const bool unordered = prior.block != access.block || prior.phase == access.phase;
    if ((prior.write || access.write) && prior.thread != access.thread && unordered) {
      report("global buffer #" + std::to_string(buffer_id) + "[" + std::to_string(index) + "]",
             prior, access);
    }
  }
  seen.push_back(access);
}

void SharedRaceLog::record(std::size_t index, const Access& access) {
  auto& seen = log_[index];
  for (const Access& prior : seen) {
    if (same_access(prior, access)) return;
  }
  for (const Access& prior : seen) {
    if ((prior.write || access.write) && prior.thread != access.thread &&
        prior.phase == access.phase) {
      report("shared[" + std::to_string(index) + "]", prior, access);
    }
  }
  seen.push_back(access);
}

}  // namespace simt::detail

// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace simt::detail {

struct Access {
  std::uint64_t thread = 0;  // global linear id
  std::uint64_t block = 0;   // linear block index
  std::uint32_t phase = 0;
  bool write = false;
};

// Write/read sets for global memory over one launch. Two accesses to one
// location conflict when at least one is a write, they come from different
// threads, and no barrier orders them: either they sit in different blocks,
// or in the same block and the same phase.
class GlobalRaceLog {
 public:
  void record(std::uint64_t buffer_id, std::size_t index, const Access& access);

 private:
  struct Key {
    std::uint64_t buffer;
    std::size_t index;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.buffer * 0x9E3779B97F4A7C15ull ^ k.index);
    }
  };

  std::mutex mu_;
  std::unordered_map<Key, std::vector<Access>, KeyHash> log_;
};

// Per-block shared-memory write/read sets; one instance per worker, reset at
// each block start. Only same-phase accesses can conflict.
class SharedRaceLog {
 public:
  void reset() { log_.clear(); }
  void record(std::size_t index, const Access& access);

 private:
  std::unordered_map<std::size_t, std::vector<Access>> log_;
};

}  // namespace simt::detail

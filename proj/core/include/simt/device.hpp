// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "simt/elem_kind.hpp"
#include "simt/error.hpp"

namespace simt {

class Executor;

/// Handle to an allocation in the simulated device memory space. A handle is
/// a plain value; liveness is tracked by the owning Device, so copies of a
/// handle all observe the same freed state.
struct DeviceBuffer {
  std::uint64_t id = 0;
  std::size_t len = 0;
  ElemKind kind = ElemKind::F64;

  std::size_t bytes() const noexcept { return len * width(kind); }
};

/// Host-side typed element sequence. The element type is fixed at
/// construction.
class HostBuffer {
 public:
  HostBuffer(std::size_t len, ElemKind kind);
  template <typename T>
  explicit HostBuffer(std::vector<T> data) : data_(std::move(data)) {}

  ElemKind kind() const noexcept;
  std::size_t size() const noexcept;

  template <typename T>
  std::span<T> as() {
    auto* v = std::get_if<std::vector<T>>(&data_);
    if (v == nullptr) {
      throw Error(ErrorCode::KindMismatch, "host buffer element kind mismatch");
    }
    return *v;
  }
  template <typename T>
  std::span<const T> as() const {
    return const_cast<HostBuffer*>(this)->as<T>();
  }

  std::span<std::byte> bytes() noexcept;
  std::span<const std::byte> bytes() const noexcept;

 private:
  std::variant<std::vector<float>, std::vector<double>, std::vector<index_t>> data_;
};

/// Simulated device memory: a capacity-limited table of zero-initialized
/// allocations reachable from host code only through explicit copies.
class Device {
 public:
  static constexpr std::size_t kDefaultCapacity = std::size_t{1} << 30;

  explicit Device(std::size_t capacity_bytes = kDefaultCapacity);
  Device(const Device&) = delete;
  Device& operator=(const Device&) = delete;

  DeviceBuffer alloc(std::size_t len, ElemKind kind);
  void free(const DeviceBuffer& buf);

  void copy_host_to_device(const HostBuffer& src, const DeviceBuffer& dst);
  void copy_device_to_host(const DeviceBuffer& src, HostBuffer& dst);

  template <typename T>
  void copy_host_to_device(std::span<const T> src, const DeviceBuffer& dst) {
    copy_in(std::as_bytes(src), src.size(), kind_of<T>(), dst);
  }
  template <typename T>
  void copy_device_to_host(const DeviceBuffer& src, std::span<T> dst) {
    copy_out(src, std::as_writable_bytes(dst), dst.size(), kind_of<T>());
  }

  /// Allocates a buffer sized to `src` and copies it in.
  template <typename T>
  DeviceBuffer alloc_copy(std::span<const T> src) {
    DeviceBuffer buf = alloc(src.size(), kind_of<T>());
    copy_host_to_device(src, buf);
    return buf;
  }
  template <typename T>
  std::vector<T> read(const DeviceBuffer& src) {
    std::vector<T> out(src.len);
    copy_device_to_host(src, std::span<T>(out));
    return out;
  }

  // OpenCL vocabulary for the same operations.
  DeviceBuffer create_buffer(std::size_t len, ElemKind kind) { return alloc(len, kind); }
  void enqueue_write_buffer(const DeviceBuffer& dst, const HostBuffer& src) {
    copy_host_to_device(src, dst);
  }
  void enqueue_read_buffer(const DeviceBuffer& src, HostBuffer& dst) {
    copy_device_to_host(src, dst);
  }
  void release_mem_object(const DeviceBuffer& buf) { free(buf); }

  bool is_live(const DeviceBuffer& buf) const;
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t bytes_in_use() const;
  std::size_t live_count() const;

 private:
  friend class Executor;

  struct Allocation {
    std::unique_ptr<std::byte[]> storage;
    std::size_t len = 0;
    ElemKind kind = ElemKind::F64;
    bool freed = false;
  };

  void copy_in(std::span<const std::byte> src, std::size_t len, ElemKind kind,
               const DeviceBuffer& dst);
  void copy_out(const DeviceBuffer& src, std::span<std::byte> dst, std::size_t len,
                ElemKind kind);

  // Caller holds at least a shared lock.
  const Allocation& live_entry(const DeviceBuffer& buf) const;

  // Raw device address for kernel bindings; only the executor may call it.
  std::span<std::byte> storage(const DeviceBuffer& buf);

  std::size_t capacity_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::uint64_t, Allocation> table_;
  std::uint64_t next_id_ = 1;
  std::size_t in_use_ = 0;
  std::size_t live_ = 0;
};

/// Owns one device allocation and frees it on destruction unless it was
/// already freed explicitly.
class ScopedBuffer {
 public:
  ScopedBuffer() = default;
  ScopedBuffer(Device& dev, std::size_t len, ElemKind kind)
      : dev_(&dev), buf_(dev.alloc(len, kind)) {}
  ScopedBuffer(Device& dev, DeviceBuffer buf) : dev_(&dev), buf_(buf) {}
  ScopedBuffer(ScopedBuffer&& other) noexcept
      : dev_(std::exchange(other.dev_, nullptr)), buf_(other.buf_) {}
  ScopedBuffer& operator=(ScopedBuffer&& other) noexcept {
    if (this != &other) {
      reset();
      dev_ = std::exchange(other.dev_, nullptr);
      buf_ = other.buf_;
    }
    return *this;
  }
  ScopedBuffer(const ScopedBuffer&) = delete;
  ScopedBuffer& operator=(const ScopedBuffer&) = delete;
  ~ScopedBuffer() { reset(); }

  const DeviceBuffer& get() const noexcept { return buf_; }
  operator const DeviceBuffer&() const noexcept { return buf_; }  // NOLINT

  /// Gives up ownership without freeing.
  DeviceBuffer release() noexcept {
    dev_ = nullptr;
    return buf_;
  }

  void reset() noexcept {
    if (dev_ != nullptr && dev_->is_live(buf_)) {
      try {
        dev_->free(buf_);
      } catch (...) {
      }
    }
    dev_ = nullptr;
  }

 private:
  Device* dev_ = nullptr;
  DeviceBuffer buf_{};
};

}  // namespace simt

// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/device.hpp"

#include <mutex>
#include <string>

namespace simt {

namespace {

std::string describe(const DeviceBuffer& buf) {
  return "device buffer #" + std::to_string(buf.id);
}

}  // namespace

HostBuffer::HostBuffer(std::size_t len, ElemKind kind) {
  switch (kind) {
    case ElemKind::F32: data_ = std::vector<float>(len); break;
    case ElemKind::F64: data_ = std::vector<double>(len); break;
    case ElemKind::Index: data_ = std::vector<index_t>(len); break;
  }
}

ElemKind HostBuffer::kind() const noexcept {
  switch (data_.index()) {
    case 0: return ElemKind::F32;
    case 1: return ElemKind::F64;
    default: return ElemKind::Index;
  }
}

std::size_t HostBuffer::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

std::span<std::byte> HostBuffer::bytes() noexcept {
  return std::visit([](auto& v) { return std::as_writable_bytes(std::span(v)); }, data_);
}

std::span<const std::byte> HostBuffer::bytes() const noexcept {
  return std::visit([](const auto& v) { return std::as_bytes(std::span(v)); }, data_);
}

Device::Device(std::size_t capacity_bytes) : capacity_(capacity_bytes) {}

DeviceBuffer Device::alloc(std::size_t len, ElemKind kind) {
  const std::size_t bytes = len * width(kind);
  if (len != 0 && bytes / len != width(kind)) {
    throw Error(ErrorCode::CapacityExceeded, "allocation size overflows");
  }
  std::unique_lock lock(mu_);
  if (bytes > capacity_ - in_use_) {
    throw Error(ErrorCode::CapacityExceeded,
                "device allocation of " + std::to_string(bytes) + " bytes exceeds capacity (" +
                    std::to_string(in_use_) + " of " + std::to_string(capacity_) +
                    " bytes in use)");
  }
  Allocation entry;
  entry.storage = std::make_unique<std::byte[]>(bytes);  // value-initialized: all bits zero
  entry.len = len;
  entry.kind = kind;
  const std::uint64_t id = next_id_++;
  table_.emplace(id, std::move(entry));
  in_use_ += bytes;
  ++live_;
  return DeviceBuffer{id, len, kind};
}

void Device::free(const DeviceBuffer& buf) {
  std::unique_lock lock(mu_);
  auto it = table_.find(buf.id);
  if (it == table_.end() || it->second.freed) {
    throw Error(ErrorCode::UseAfterFree, "free of released " + describe(buf));
  }
  Allocation& entry = it->second;
  in_use_ -= entry.len * width(entry.kind);
  --live_;
  entry.storage.reset();
  entry.freed = true;
}

const Device::Allocation& Device::live_entry(const DeviceBuffer& buf) const {
  auto it = table_.find(buf.id);
  if (it == table_.end() || it->second.freed) {
    throw Error(ErrorCode::UseAfterFree, "access to released " + describe(buf));
  }
  return it->second;
}

void Device::copy_in(std::span<const std::byte> src, std::size_t len, ElemKind kind,
                     const DeviceBuffer& dst) {
  std::shared_lock lock(mu_);
  const Allocation& entry = live_entry(dst);
  if (kind != entry.kind) {
    throw Error(ErrorCode::KindMismatch, "copy of " + std::string(to_string(kind)) +
                                             " data into " + std::string(to_string(entry.kind)) +
                                             " " + describe(dst));
  }
  if (len != entry.len) {
    throw Error(ErrorCode::LengthMismatch,
                "copy of " + std::to_string(len) + " elements into " + describe(dst) + " of " +
                    std::to_string(entry.len) + " elements");
  }
  if (!src.empty()) {
    std::memcpy(entry.storage.get(), src.data(), src.size());
  }
}

void Device::copy_out(const DeviceBuffer& src, std::span<std::byte> dst, std::size_t len,
                      ElemKind kind) {
  std::shared_lock lock(mu_);
  const Allocation& entry = live_entry(src);
  if (kind != entry.kind) {
    throw Error(ErrorCode::KindMismatch, "copy of " + describe(src) + " (" +
                                             std::string(to_string(entry.kind)) + ") into " +
                                             std::string(to_string(kind)) + " host storage");
  }
  if (len != entry.len) {
    throw Error(ErrorCode::LengthMismatch,
                "copy of " + describe(src) + " (" + std::to_string(entry.len) +
                    " elements) into host storage of " + std::to_string(len) + " elements");
  }
  if (!dst.empty()) {
    std::memcpy(dst.data(), entry.storage.get(), dst.size());
  }
}

void Device::copy_host_to_device(const HostBuffer& src, const DeviceBuffer& dst) {
  copy_in(src.bytes(), src.size(), src.kind(), dst);
}

void Device::copy_device_to_host(const DeviceBuffer& src, HostBuffer& dst) {
  copy_out(src, dst.bytes(), dst.size(), dst.kind());
}

std::span<std::byte> Device::storage(const DeviceBuffer& buf) {
  std::shared_lock lock(mu_);
  const Allocation& entry = live_entry(buf);
  return {entry.storage.get(), entry.len * width(entry.kind)};
}

bool Device::is_live(const DeviceBuffer& buf) const {
  std::shared_lock lock(mu_);
  auto it = table_.find(buf.id);
  return it != table_.end() && !it->second.freed;
}

std::size_t Device::bytes_in_use() const {
  std::shared_lock lock(mu_);
  return in_use_;
}

std::size_t Device::live_count() const {
  std::shared_lock lock(mu_);
  return live_;
}

}  // namespace simt

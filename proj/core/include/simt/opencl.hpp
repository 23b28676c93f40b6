// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// OpenCL names for the launch hierarchy and memory objects. Every name here
// is an alias; behaviour is identical to the CUDA-named originals.

#include "simt/device.hpp"
#include "simt/executor.hpp"

namespace simt::opencl {

using WorkItemCtx = ThreadCtx;  // thread       <-> work-item
using NDRange = Dim3;           // grid extents <-> ND-Range
using MemObject = DeviceBuffer;
using CommandQueue = Executor;

/// Launch with a work-group count and a work-group size.
inline LaunchConfig nd_range(NDRange num_groups, NDRange local_size,
                             std::size_t local_mem_elems = 0, ElemKind kind = ElemKind::F64) {
  return LaunchConfig{num_groups, local_size, local_mem_elems, kind};
}

inline std::uint64_t get_global_linear_id(const WorkItemCtx& ctx) noexcept {
  return global_linear_id(ctx);
}

}  // namespace simt::opencl

// Copyright 2026 The GRA Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "gra/angle_generator.hpp"
#include "gra/tensor.hpp"

namespace gra {

/// Convolution weights [Cout,Cin,k,k] split into `groups` contiguous slices
/// of Cout/groups output filters. Each slice shares one angle and one scale.
template <typename T>
struct KernelBank {
  Tensor<T> w;
  std::size_t groups = 1;

  std::size_t out_channels() const { return w.dim(0); }
  std::size_t in_channels() const { return w.dim(1); }
  std::size_t kernel_size() const { return w.dim(2); }

  /// Cout divisible by groups, square odd kernel.
  void validate() const;
};

/// [n, Cout/n, Cin, k, k]; group j holds filters [j*Cout/n, (j+1)*Cout/n).
template <typename T>
Tensor<T> group_view(const KernelBank<T>& bank);

/// Reference: every filter of group j in sample b rotated by thetas[b,j]
/// with rotate_kernel_direct and scaled by lambdas[b,j]. [B,Cout,Cin,k,k].
template <typename T>
Tensor<T> rotate_groups_naive(const KernelBank<T>& bank, const AngleSet<T>& angles);

/// Both operands of the single batched matmul:
///   rotations [n, B*k*k, k*k]  x  kernels [n, k*k, (Cout/n)*Cin].
template <typename T>
struct RotationOperands {
  Tensor<T> rotations;
  Tensor<T> kernels;
};

template <typename T>
RotationOperands<T> rotation_operands(const KernelBank<T>& bank, const AngleSet<T>& angles);

/// Same result as rotate_groups_naive, computed with one bmm over all
/// (sample, group) pairs followed by the lambda scaling.
template <typename T>
Tensor<T> rotate_groups_batched(const KernelBank<T>& bank, const AngleSet<T>& angles);

}  // namespace gra

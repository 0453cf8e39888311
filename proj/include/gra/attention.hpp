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

#include <cstdint>

#include "gra/tensor.hpp"

namespace gra {

inline constexpr int kAttentionKernel = 7;

/// The single 2->1 convolution shared by every group of one module.
template <typename T>
struct AttentionParams {
  Tensor<T> f_weight;  // [1,2,ka,ka]
  Tensor<T> f_bias;    // [1]

  int kernel_size() const { return static_cast<int>(f_weight.dim(2)); }
  void validate() const;
};

template <typename T>
AttentionParams<T> attention_init(int kernel_size, std::uint64_t seed);

template <typename T>
AttentionParams<T> attention_zero(int kernel_size = kAttentionKernel);

/// Group-wise spatial gating of y [B,Cout,H,W] split into n channel groups.
/// Per group: channel mean and channel max stacked as [B,2,H,W], the shared
/// conv (padding ka/2) plus bias, a sigmoid, then an elementwise product
/// broadcast over the group's channels.
template <typename T>
Tensor<T> attention_forward(const Tensor<T>& y, std::size_t n, const AttentionParams<T>& p);

/// The [B,1,H,W] gate of group j alone.
template <typename T>
Tensor<T> attention_map(const Tensor<T>& y, std::size_t n, std::size_t j, const AttentionParams<T>& p);

}  // namespace gra

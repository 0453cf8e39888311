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
#include <optional>

#include "gra/angle_generator.hpp"
#include "gra/attention.hpp"
#include "gra/grouped_rotation.hpp"
#include "gra/tensor.hpp"

namespace gra {

/// One group-wise rotating and attention module.
template <typename T>
struct GraParams {
  KernelBank<T> bank;
  AngleGenParams<T> gen;
  AttentionParams<T> attn;
  int stride = 1;
  int padding = 1;

  void validate() const;
};

/// Baseline: m whole kernel copies, each rotated by its own angle, outputs
/// mixed by the routing scales.
template <typename T>
struct ArcParams {
  Tensor<T> banks;  // [m,Cout,Cin,k,k]
  AngleGenParams<T> routing;  // m outputs per head
  int stride = 1;
  int padding = 1;

  std::size_t copies() const { return banks.dim(0); }
  void validate() const;
};

template <typename T>
struct ForwardResult {
  Tensor<T> output;
  AngleSet<T> angles;
};

/// Knobs for callers that need to pin the predicted angles (demo, tests) or
/// look at the rotating stage alone. bypass_attention is a test hook.
template <typename T>
struct ForwardOverrides {
  std::optional<AngleSet<T>> angles;
  bool bypass_attention = false;
};

template <typename T>
Tensor<T> gra_forward(const Tensor<T>& x, const GraParams<T>& p);

template <typename T>
ForwardResult<T> gra_forward_ex(const Tensor<T>& x, const GraParams<T>& p, const ForwardOverrides<T>& overrides = {});

template <typename T>
Tensor<T> arc_forward(const Tensor<T>& x, const ArcParams<T>& p);

template <typename T>
ForwardResult<T> arc_forward_ex(const Tensor<T>& x, const ArcParams<T>& p, const ForwardOverrides<T>& overrides = {});

/// Random module with shape-preserving stride/padding.
template <typename T>
GraParams<T> gra_init(int in_channels, int out_channels, int kernel_size, int groups, std::uint64_t seed);

template <typename T>
ArcParams<T> arc_init(int in_channels, int out_channels, int kernel_size, int copies, std::uint64_t seed);

}  // namespace gra

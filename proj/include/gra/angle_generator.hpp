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

/// Weights of the routing network that predicts one angle and one scale per
/// kernel group:
///   depthwise 3x3 conv (+bias) -> ReLU -> LayerNorm over channels
///   -> global average pool -> two linear heads with `groups()` outputs.
template <typename T>
struct AngleGenParams {
  Tensor<T> dw_kernel;  // [Cin,1,3,3]
  Tensor<T> dw_bias;    // [Cin]
  Tensor<T> ln_gamma;   // [Cin]
  Tensor<T> ln_beta;    // [Cin]
  Tensor<T> w_theta;    // [n,Cin]
  Tensor<T> b_theta;    // [n]
  Tensor<T> w_lambda;   // [n,Cin]
  Tensor<T> b_lambda;   // [n]

  std::size_t in_channels() const { return dw_kernel.dim(0); }
  std::size_t groups() const { return w_theta.dim(0); }

  /// Throws ShapeError when any extent disagrees with (Cin, n).
  void validate() const;
};

/// Per-sample predictions. thetas are radians (unbounded); lambdas lie in (0,1).
template <typename T>
struct AngleSet {
  Tensor<T> thetas;   // [B,n]
  Tensor<T> lambdas;  // [B,n]

  std::size_t batch() const { return thetas.dim(0); }
  std::size_t groups() const { return thetas.dim(1); }

  void validate() const;
};

inline constexpr double kLayerNormEps = 1e-5;

template <typename T>
AngleSet<T> generator_forward(const Tensor<T>& x, const AngleGenParams<T>& p);

/// Deterministic init: weights uniform in +-1/sqrt(fan_in), biases 0,
/// gamma 1, beta 0.
template <typename T>
AngleGenParams<T> generator_init(int in_channels, int groups, std::uint64_t seed);

/// Every parameter zero except gamma = 1: predicts theta = 0, lambda = 0.5.
template <typename T>
AngleGenParams<T> generator_zero(int in_channels, int groups);

}  // namespace gra

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

#include <cmath>

#include "gra/tensor.hpp"

namespace gra {

struct Conv2dParams {
  int stride = 1;
  int padding = 0;
  int groups = 1;
};

/// Output extent of a convolution along one spatial axis, or 0 when the
/// window does not fit.
std::size_t conv_out_extent(std::size_t in, std::size_t k, int stride, int padding);

/// Cross-correlation (no kernel flip) of x [B,Cin,H,W] with w [Cout,Cin/g,k,k].
///
/// Every output element is accumulated from zero over (channel, row, column)
/// of its receptive field in that order, so results do not depend on how the
/// work is scheduled. Padding taps contribute explicit zeros. The optional
/// bias [Cout] is added after accumulation.
template <typename T>
Tensor<T> conv2d(const Tensor<T>& x, const Tensor<T>& w, Conv2dParams params = {},
                 const Tensor<T>* bias = nullptr);

/// Batched matmul: a [G,M,K] x b [G,K,N] -> [G,M,N], accumulating over K in
/// index order.
template <typename T>
Tensor<T> bmm(const Tensor<T>& a, const Tensor<T>& b);

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace gra

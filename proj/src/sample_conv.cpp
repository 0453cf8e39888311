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

#include "gra/sample_conv.hpp"

#include <string>

#include "gra/ops.hpp"

namespace gra {

template <typename T>
Tensor<T> conv_per_sample(const Tensor<T>& x, const Tensor<T>& w_rot, int stride, int padding) {
  if (x.rank() != 4) throw ShapeError("conv_per_sample: input must be [B,Cin,H,W], got " + shape_to_string(x.shape()));
  if (w_rot.rank() != 5) {
    throw ShapeError("conv_per_sample: kernels must be [B,Cout,Cin,k,k], got " + shape_to_string(w_rot.shape()));
  }
  const std::size_t B = x.dim(0), cin = x.dim(1), H = x.dim(2), W = x.dim(3);
  const std::size_t cout = w_rot.dim(1), k = w_rot.dim(3);
  if (w_rot.dim(0) != B) {
    throw ShapeError("conv_per_sample: batch axis (dim 0) is " + std::to_string(B) + " for the input but " +
                     std::to_string(w_rot.dim(0)) + " for the kernels");
  }
  if (w_rot.dim(2) != cin) {
    throw ShapeError("conv_per_sample: kernel input-channel axis (dim 2) is " + std::to_string(w_rot.dim(2)) +
                     ", input has " + std::to_string(cin));
  }

  const Tensor<T> folded = x.reshape({1, B * cin, H, W});
  const Tensor<T> weights = w_rot.reshape({B * cout, cin, k, w_rot.dim(4)});
  Tensor<T> y = conv2d(folded, weights, {.stride = stride, .padding = padding, .groups = static_cast<int>(B)});
  const std::size_t ho = y.dim(2), wo = y.dim(3);
  return std::move(y).reshape({B, cout, ho, wo});
}

template <typename T>
Tensor<T> conv_per_sample(const Tensor<T>& x, const Tensor<T>& w_rot) {
  const int k = w_rot.rank() == 5 ? static_cast<int>(w_rot.dim(3)) : 1;
  return conv_per_sample(x, w_rot, 1, k / 2);
}

template Tensor<float> conv_per_sample(const Tensor<float>&, const Tensor<float>&, int, int);
template Tensor<double> conv_per_sample(const Tensor<double>&, const Tensor<double>&, int, int);
template Tensor<float> conv_per_sample(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> conv_per_sample(const Tensor<double>&, const Tensor<double>&);

}  // namespace gra

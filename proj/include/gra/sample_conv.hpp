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

#include "gra/tensor.hpp"

namespace gra {

/// Convolves sample b of x [B,Cin,H,W] with its own kernels w_rot[b]
/// [B,Cout,Cin,k,k] by folding the batch into channels and running a single
/// conv2d with groups = B.
template <typename T>
Tensor<T> conv_per_sample(const Tensor<T>& x, const Tensor<T>& w_rot, int stride, int padding);

/// Shape-preserving defaults: stride 1, padding k/2.
template <typename T>
Tensor<T> conv_per_sample(const Tensor<T>& x, const Tensor<T>& w_rot);

}  // namespace gra

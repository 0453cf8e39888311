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

// Tensor names used when module parameters travel in a GRAW container.
//
//   weight          [Cout,Cin,k,k] (GRA) or [m,Cout,Cin,k,k] (ARC)
//   gen.dw_kernel   gen.dw_bias   gen.ln_gamma   gen.ln_beta
//   gen.w_theta     gen.b_theta   gen.w_lambda   gen.b_lambda
//   attn.f_weight   attn.f_bias   (GRA only)
//
// Forward inputs use "input"; outputs use "output", "thetas", "lambdas".

#include "gra/pipeline.hpp"
#include "gra/weights_io.hpp"

namespace gra {

template <typename T>
void add_generator(TensorContainer& c, const AngleGenParams<T>& gen);

template <typename T>
AngleGenParams<T> generator_from(const TensorContainer& c);

template <typename T>
TensorContainer to_container(const GraParams<T>& p);

template <typename T>
TensorContainer to_container(const ArcParams<T>& p);

/// Throws std::out_of_range for a missing tensor and ShapeError when the
/// shapes disagree with `groups`.
template <typename T>
GraParams<T> gra_params_from(const TensorContainer& c, std::size_t groups);

template <typename T>
ArcParams<T> arc_params_from(const TensorContainer& c, std::size_t copies);

}  // namespace gra

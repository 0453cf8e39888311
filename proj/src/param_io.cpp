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

#include "gra/param_io.hpp"

#include <string>

namespace gra {

template <typename T>
void add_generator(TensorContainer& c, const AngleGenParams<T>& gen) {
  c.insert("gen.dw_kernel", gen.dw_kernel);
  c.insert("gen.dw_bias", gen.dw_bias);
  c.insert("gen.ln_gamma", gen.ln_gamma);
  c.insert("gen.ln_beta", gen.ln_beta);
  c.insert("gen.w_theta", gen.w_theta);
  c.insert("gen.b_theta", gen.b_theta);
  c.insert("gen.w_lambda", gen.w_lambda);
  c.insert("gen.b_lambda", gen.b_lambda);
}

template <typename T>
AngleGenParams<T> generator_from(const TensorContainer& c) {
  AngleGenParams<T> gen{
      c.get<T>("gen.dw_kernel"), c.get<T>("gen.dw_bias"), c.get<T>("gen.ln_gamma"), c.get<T>("gen.ln_beta"),
      c.get<T>("gen.w_theta"),   c.get<T>("gen.b_theta"), c.get<T>("gen.w_lambda"), c.get<T>("gen.b_lambda"),
  };
  gen.validate();
  return gen;
}

template <typename T>
TensorContainer to_container(const GraParams<T>& p) {
  TensorContainer c;
  c.insert("weight", p.bank.w);
  add_generator(c, p.gen);
  c.insert("attn.f_weight", p.attn.f_weight);
  c.insert("attn.f_bias", p.attn.f_bias);
  return c;
}

template <typename T>
TensorContainer to_container(const ArcParams<T>& p) {
  TensorContainer c;
  c.insert("weight", p.banks);
  add_generator(c, p.routing);
  return c;
}

template <typename T>
GraParams<T> gra_params_from(const TensorContainer& c, std::size_t groups) {
  const Tensor<T>& w = c.get<T>("weight");
  if (w.rank() != 4) throw ShapeError("gra parameters: 'weight' must be [Cout,Cin,k,k], got " + shape_to_string(w.shape()));
  GraParams<T> p{
      KernelBank<T>{w, groups},
      generator_from<T>(c),
      AttentionParams<T>{c.get<T>("attn.f_weight"), c.get<T>("attn.f_bias")},
      1,
      static_cast<int>(w.dim(2) / 2),
  };
  p.validate();
  return p;
}

template <typename T>
ArcParams<T> arc_params_from(const TensorContainer& c, std::size_t copies) {
  const Tensor<T>& w = c.get<T>("weight");
  if (w.rank() != 5) throw ShapeError("arc parameters: 'weight' must be [m,Cout,Cin,k,k], got " + shape_to_string(w.shape()));
  if (w.dim(0) != copies) {
    throw ShapeError("arc parameters: 'weight' holds " + std::to_string(w.dim(0)) + " kernel copies, expected " +
                     std::to_string(copies));
  }
  ArcParams<T> p{w, generator_from<T>(c), 1, static_cast<int>(w.dim(3) / 2)};
  p.validate();
  return p;
}

template void add_generator(TensorContainer&, const AngleGenParams<float>&);
template void add_generator(TensorContainer&, const AngleGenParams<double>&);
template AngleGenParams<float> generator_from<float>(const TensorContainer&);
template AngleGenParams<double> generator_from<double>(const TensorContainer&);
template TensorContainer to_container(const GraParams<float>&);
template TensorContainer to_container(const GraParams<double>&);
template TensorContainer to_container(const ArcParams<float>&);
template TensorContainer to_container(const ArcParams<double>&);
template GraParams<float> gra_params_from<float>(const TensorContainer&, std::size_t);
template GraParams<double> gra_params_from<double>(const TensorContainer&, std::size_t);
template ArcParams<float> arc_params_from<float>(const TensorContainer&, std::size_t);
template ArcParams<double> arc_params_from<double>(const TensorContainer&, std::size_t);

}  // namespace gra

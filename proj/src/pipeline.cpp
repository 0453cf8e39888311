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

#include "gra/pipeline.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gra/sample_conv.hpp"

namespace gra {

namespace {

template <typename T>
void check_override(const AngleSet<T>& a, std::size_t batch, std::size_t groups, const char* op) {
  a.validate();
  if (a.batch() != batch || a.groups() != groups) {
    throw ShapeError(std::string(op) + ": angle override is " + shape_to_string(a.thetas.shape()) + ", expected [" +
                     std::to_string(batch) + "," + std::to_string(groups) + "]");
  }
}

template <typename T>
Tensor<T> uniform_tensor(Shape shape, double bound, std::mt19937_64& rng) {
  Tensor<T> t(std::move(shape));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& v : t.data()) v = static_cast<T>(dist(rng));
  return t;
}

}  // namespace

template <typename T>
void GraParams<T>::validate() const {
  bank.validate();
  gen.validate();
  attn.validate();
  if (gen.groups() != bank.groups) {
    throw ShapeError("gra: angle generator predicts " + std::to_string(gen.groups()) + " groups, kernel bank has " +
                     std::to_string(bank.groups));
  }
  if (gen.in_channels() != bank.in_channels()) {
    throw ShapeError("gra: angle generator expects " + std::to_string(gen.in_channels()) +
                     " input channels, kernel bank has " + std::to_string(bank.in_channels()));
  }
}

template <typename T>
void ArcParams<T>::validate() const {
  if (banks.rank() != 5) throw ShapeError("arc: banks must be [m,Cout,Cin,k,k], got " + shape_to_string(banks.shape()));
  routing.validate();
  if (routing.groups() != copies()) {
    throw ShapeError("arc: routing predicts " + std::to_string(routing.groups()) + " branches, there are " +
                     std::to_string(copies()) + " kernel copies");
  }
  if (routing.in_channels() != banks.dim(2)) {
    throw ShapeError("arc: routing expects " + std::to_string(routing.in_channels()) +
                     " input channels, kernels have " + std::to_string(banks.dim(2)));
  }
}

template <typename T>
ForwardResult<T> gra_forward_ex(const Tensor<T>& x, const GraParams<T>& p, const ForwardOverrides<T>& overrides) {
  p.validate();
  AngleSet<T> angles;
  if (overrides.angles) {
    if (x.rank() != 4) throw ShapeError("gra_forward: input must be [B,Cin,H,W], got " + shape_to_string(x.shape()));
    check_override(*overrides.angles, x.dim(0), p.bank.groups, "gra_forward");
    angles = *overrides.angles;
  } else {
    angles = generator_forward(x, p.gen);
  }
  const Tensor<T> w_rot = rotate_groups_batched(p.bank, angles);
  Tensor<T> y = conv_per_sample(x, w_rot, p.stride, p.padding);
  if (!overrides.bypass_attention) y = attention_forward(y, p.bank.groups, p.attn);
  return {std::move(y), std::move(angles)};
}

template <typename T>
Tensor<T> gra_forward(const Tensor<T>& x, const GraParams<T>& p) {
  return gra_forward_ex(x, p).output;
}

template <typename T>
ForwardResult<T> arc_forward_ex(const Tensor<T>& x, const ArcParams<T>& p, const ForwardOverrides<T>& overrides) {
  p.validate();
  const std::size_t m = p.copies();
  AngleSet<T> angles;
  if (overrides.angles) {
    if (x.rank() != 4) throw ShapeError("arc_forward: input must be [B,Cin,H,W], got " + shape_to_string(x.shape()));
    check_override(*overrides.angles, x.dim(0), m, "arc_forward");
    angles = *overrides.angles;
  } else {
    angles = generator_forward(x, p.routing);
  }
  const std::size_t B = angles.batch();

  Tensor<T> sum;
  for (std::size_t i = 0; i < m; ++i) {
    // Branch i is a single-group bank; the routing scale is applied to its
    // output, so the rotation itself runs at unit scale.
    AngleSet<T> branch{Tensor<T>({B, 1}), Tensor<T>::full({B, 1}, T{1})};
    for (std::size_t b = 0; b < B; ++b) branch.thetas(b, 0) = angles.thetas(b, i);
    const Tensor<T> w_rot = rotate_groups_batched(KernelBank<T>{p.banks.select(i), 1}, branch);
    const Tensor<T> y = conv_per_sample(x, w_rot, p.stride, p.padding);
    if (i == 0) sum = Tensor<T>(y.shape());
    const std::size_t per_sample = y.numel() / B;
    for (std::size_t b = 0; b < B; ++b) {
      const T lambda = angles.lambdas(b, i);
      const T* src = y.data().data() + b * per_sample;
      T* dst = sum.data().data() + b * per_sample;
      for (std::size_t e = 0; e < per_sample; ++e) dst[e] += lambda * src[e];
    }
  }
  return {std::move(sum), std::move(angles)};
}

template <typename T>
Tensor<T> arc_forward(const Tensor<T>& x, const ArcParams<T>& p) {
  return arc_forward_ex(x, p).output;
}

template <typename T>
GraParams<T> gra_init(int in_channels, int out_channels, int kernel_size, int groups, std::uint64_t seed) {
  if (in_channels < 1 || out_channels < 1 || groups < 1) throw ValueError("gra_init: counts must be positive");
  if (kernel_size < 1 || kernel_size % 2 == 0) throw ValueError("gra_init: kernel extent must be odd and positive");
  std::mt19937_64 rng(seed);
  const auto cin = static_cast<std::size_t>(in_channels), cout = static_cast<std::size_t>(out_channels);
  const auto k = static_cast<std::size_t>(kernel_size);
  const double bound = 1.0 / std::sqrt(static_cast<double>(cin * k * k));
  GraParams<T> p{
      KernelBank<T>{uniform_tensor<T>({cout, cin, k, k}, bound, rng), static_cast<std::size_t>(groups)},
      generator_init<T>(in_channels, groups, rng()),
      attention_init<T>(kAttentionKernel, rng()),
      1,
      kernel_size / 2,
  };
  p.validate();
  return p;
}

template <typename T>
ArcParams<T> arc_init(int in_channels, int out_channels, int kernel_size, int copies, std::uint64_t seed) {
  if (in_channels < 1 || out_channels < 1 || copies < 1) throw ValueError("arc_init: counts must be positive");
  if (kernel_size < 1 || kernel_size % 2 == 0) throw ValueError("arc_init: kernel extent must be odd and positive");
  std::mt19937_64 rng(seed);
  const auto cin = static_cast<std::size_t>(in_channels), cout = static_cast<std::size_t>(out_channels);
  const auto k = static_cast<std::size_t>(kernel_size), m = static_cast<std::size_t>(copies);
  const double bound = 1.0 / std::sqrt(static_cast<double>(cin * k * k));
  ArcParams<T> p{
      uniform_tensor<T>({m, cout, cin, k, k}, bound, rng),
      generator_init<T>(in_channels, copies, rng()),
      1,
      kernel_size / 2,
  };
  p.validate();
  return p;
}

template struct GraParams<float>;
template struct GraParams<double>;
template struct ArcParams<float>;
template struct ArcParams<double>;
template Tensor<float> gra_forward(const Tensor<float>&, const GraParams<float>&);
template Tensor<double> gra_forward(const Tensor<double>&, const GraParams<double>&);
template ForwardResult<float> gra_forward_ex(const Tensor<float>&, const GraParams<float>&, const ForwardOverrides<float>&);
template ForwardResult<double> gra_forward_ex(const Tensor<double>&, const GraParams<double>&, const ForwardOverrides<double>&);
template Tensor<float> arc_forward(const Tensor<float>&, const ArcParams<float>&);
template Tensor<double> arc_forward(const Tensor<double>&, const ArcParams<double>&);
template ForwardResult<float> arc_forward_ex(const Tensor<float>&, const ArcParams<float>&, const ForwardOverrides<float>&);
template ForwardResult<double> arc_forward_ex(const Tensor<double>&, const ArcParams<double>&, const ForwardOverrides<double>&);
template GraParams<float> gra_init<float>(int, int, int, int, std::uint64_t);
template GraParams<double> gra_init<double>(int, int, int, int, std::uint64_t);
template ArcParams<float> arc_init<float>(int, int, int, int, std::uint64_t);
template ArcParams<double> arc_init<double>(int, int, int, int, std::uint64_t);

}  // namespace gra

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

#include "gra/angle_generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gra/ops.hpp"

namespace gra {

namespace {

template <typename T>
void expect_shape(const char* name, const Tensor<T>& t, const Shape& want) {
  if (t.shape() != want) {
    throw ShapeError(std::string("angle generator: ") + name + " has shape " + shape_to_string(t.shape()) +
                     ", expected " + shape_to_string(want));
  }
}

}  // namespace

template <typename T>
void AngleGenParams<T>::validate() const {
  if (dw_kernel.rank() != 4) throw ShapeError("angle generator: dw_kernel must be [Cin,1,3,3], got " + shape_to_string(dw_kernel.shape()));
  if (w_theta.rank() != 2) throw ShapeError("angle generator: w_theta must be [n,Cin], got " + shape_to_string(w_theta.shape()));
  const std::size_t cin = in_channels(), n = groups();
  expect_shape("dw_kernel", dw_kernel, {cin, 1, 3, 3});
  expect_shape("dw_bias", dw_bias, {cin});
  expect_shape("ln_gamma", ln_gamma, {cin});
  expect_shape("ln_beta", ln_beta, {cin});
  expect_shape("w_theta", w_theta, {n, cin});
  expect_shape("b_theta", b_theta, {n});
  expect_shape("w_lambda", w_lambda, {n, cin});
  expect_shape("b_lambda", b_lambda, {n});
}

template <typename T>
void AngleSet<T>::validate() const {
  if (thetas.rank() != 2 || lambdas.shape() != thetas.shape()) {
    throw ShapeError("angle set: thetas " + shape_to_string(thetas.shape()) + " and lambdas " +
                     shape_to_string(lambdas.shape()) + " must both be [B,n]");
  }
}

template <typename T>
AngleSet<T> generator_forward(const Tensor<T>& x, const AngleGenParams<T>& p) {
  p.validate();
  if (x.rank() != 4) throw ShapeError("generator_forward: input must be [B,Cin,H,W], got " + shape_to_string(x.shape()));
  const std::size_t cin = p.in_channels(), n = p.groups();
  if (x.dim(1) != cin) {
    throw ShapeError("generator_forward: input channel axis (dim 1) is " + std::to_string(x.dim(1)) +
                     ", parameters expect " + std::to_string(cin));
  }
  const std::size_t B = x.dim(0), H = x.dim(2), W = x.dim(3), HW = H * W;

  Tensor<T> feat = conv2d(x, p.dw_kernel, {.stride = 1, .padding = 1, .groups = static_cast<int>(cin)}, &p.dw_bias);
  for (auto& v : feat.data()) v = std::max(v, T{0});

  // LayerNorm across channels at each position, then average over positions.
  Tensor<T> pooled({B, cin});
  std::vector<double> column(cin);
  for (std::size_t b = 0; b < B; ++b) {
    const T* fb = feat.data().data() + b * cin * HW;
    std::vector<double> acc(cin, 0.0);
    for (std::size_t s = 0; s < HW; ++s) {
      double mean = 0.0;
      for (std::size_t c = 0; c < cin; ++c) {
        column[c] = static_cast<double>(fb[c * HW + s]);
        mean += column[c];
      }
      mean /= static_cast<double>(cin);
      double var = 0.0;
      for (std::size_t c = 0; c < cin; ++c) var += (column[c] - mean) * (column[c] - mean);
      var /= static_cast<double>(cin);
      const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
      for (std::size_t c = 0; c < cin; ++c) {
        acc[c] += (column[c] - mean) * inv * static_cast<double>(p.ln_gamma[c]) + static_cast<double>(p.ln_beta[c]);
      }
    }
    for (std::size_t c = 0; c < cin; ++c) pooled(b, c) = static_cast<T>(acc[c] / static_cast<double>(HW));
  }

  // sigmoid is clamped so lambda stays strictly inside (0,1) at this precision.
  const double lo = static_cast<double>(std::numeric_limits<T>::min());
  const double hi = static_cast<double>(std::nextafter(T{1}, T{0}));
  AngleSet<T> out{Tensor<T>({B, n}), Tensor<T>({B, n})};
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      double zt = static_cast<double>(p.b_theta[j]);
      double zl = static_cast<double>(p.b_lambda[j]);
      for (std::size_t c = 0; c < cin; ++c) {
        const double v = static_cast<double>(pooled(b, c));
        zt += static_cast<double>(p.w_theta(j, c)) * v;
        zl += static_cast<double>(p.w_lambda(j, c)) * v;
      }
      out.thetas(b, j) = static_cast<T>(zt);
      out.lambdas(b, j) = static_cast<T>(std::clamp(sigmoid(zl), lo, hi));
    }
  }
  return out;
}

template <typename T>
AngleGenParams<T> generator_init(int in_channels, int groups, std::uint64_t seed) {
  if (in_channels < 1 || groups < 1) {
    throw ValueError("generator_init: channel and group counts must be positive, got Cin=" +
                     std::to_string(in_channels) + " n=" + std::to_string(groups));
  }
  AngleGenParams<T> p = generator_zero<T>(in_channels, groups);
  std::mt19937_64 rng(seed);
  const auto fill = [&rng](Tensor<T>& t, double fan_in) {
    const double bound = 1.0 / std::sqrt(fan_in);
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (auto& v : t.data()) v = static_cast<T>(dist(rng));
  };
  fill(p.dw_kernel, 9.0);
  fill(p.w_theta, in_channels);
  fill(p.w_lambda, in_channels);
  return p;
}

template <typename T>
AngleGenParams<T> generator_zero(int in_channels, int groups) {
  if (in_channels < 1 || groups < 1) {
    throw ValueError("generator_zero: channel and group counts must be positive");
  }
  const auto cin = static_cast<std::size_t>(in_channels);
  const auto n = static_cast<std::size_t>(groups);
  return AngleGenParams<T>{
      Tensor<T>({cin, 1, 3, 3}), Tensor<T>({cin}),    Tensor<T>::full({cin}, T{1}), Tensor<T>({cin}),
      Tensor<T>({n, cin}),       Tensor<T>({n}),      Tensor<T>({n, cin}),          Tensor<T>({n}),
  };
}

template struct AngleGenParams<float>;
template struct AngleGenParams<double>;
template struct AngleSet<float>;
template struct AngleSet<double>;
template AngleSet<float> generator_forward(const Tensor<float>&, const AngleGenParams<float>&);
template AngleSet<double> generator_forward(const Tensor<double>&, const AngleGenParams<double>&);
template AngleGenParams<float> generator_init<float>(int, int, std::uint64_t);
template AngleGenParams<double> generator_init<double>(int, int, std::uint64_t);
template AngleGenParams<float> generator_zero<float>(int, int);
template AngleGenParams<double> generator_zero<double>(int, int);

}  // namespace gra

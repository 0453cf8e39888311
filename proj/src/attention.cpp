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

#include "gra/attention.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gra/ops.hpp"

namespace gra {

template <typename T>
void AttentionParams<T>::validate() const {
  if (f_weight.rank() != 4 || f_weight.dim(0) != 1 || f_weight.dim(1) != 2 || f_weight.dim(2) != f_weight.dim(3)) {
    throw ShapeError("attention: f_weight must be [1,2,ka,ka], got " + shape_to_string(f_weight.shape()));
  }
  if (f_weight.dim(2) % 2 == 0) throw ValueError("attention: kernel extent " + std::to_string(f_weight.dim(2)) + " is not odd");
  if (f_bias.shape() != Shape{1}) throw ShapeError("attention: f_bias must be [1], got " + shape_to_string(f_bias.shape()));
}

template <typename T>
AttentionParams<T> attention_zero(int kernel_size) {
  if (kernel_size < 1 || kernel_size % 2 == 0) {
    throw ValueError("attention: kernel extent must be odd and positive, got " + std::to_string(kernel_size));
  }
  const auto ka = static_cast<std::size_t>(kernel_size);
  return {Tensor<T>({1, 2, ka, ka}), Tensor<T>({1})};
}

template <typename T>
AttentionParams<T> attention_init(int kernel_size, std::uint64_t seed) {
  AttentionParams<T> p = attention_zero<T>(kernel_size);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double bound = 1.0 / std::sqrt(2.0 * kernel_size * kernel_size);
  for (auto& v : p.f_weight.data()) v = static_cast<T>(bound * dist(rng));
  return p;
}

namespace {

template <typename T>
void check_groups(const Tensor<T>& y, std::size_t n, const AttentionParams<T>& p) {
  p.validate();
  if (y.rank() != 4) throw ShapeError("attention_forward: features must be [B,Cout,H,W], got " + shape_to_string(y.shape()));
  if (n == 0 || y.dim(1) % n != 0) {
    throw ShapeError("attention_forward: channel axis (dim 1) of " + std::to_string(y.dim(1)) +
                     " is not divisible into " + std::to_string(n) + " groups");
  }
}

template <typename T>
Tensor<T> gate_of_group(const Tensor<T>& y, std::size_t n, std::size_t j, const AttentionParams<T>& p) {
  const std::size_t B = y.dim(0), C = y.dim(1), HW = y.dim(2) * y.dim(3), per = C / n;
  Tensor<T> pooled({B, 2, y.dim(2), y.dim(3)});
  for (std::size_t b = 0; b < B; ++b) {
    const T* first = y.data().data() + (b * C + j * per) * HW;
    T* avg = pooled.data().data() + (b * 2) * HW;
    T* mx = avg + HW;
    for (std::size_t s = 0; s < HW; ++s) {
      T sum = 0;
      T m = first[s];
      for (std::size_t c = 0; c < per; ++c) {
        const T v = first[c * HW + s];
        sum += v;
        m = std::max(m, v);
      }
      avg[s] = sum / static_cast<T>(per);
      mx[s] = m;
    }
  }
  const int pad = p.kernel_size() / 2;
  Tensor<T> gate = conv2d(pooled, p.f_weight, {.stride = 1, .padding = pad, .groups = 1}, &p.f_bias);
  for (auto& v : gate.data()) v = static_cast<T>(sigmoid(static_cast<double>(v)));
  return gate;
}

}  // namespace

template <typename T>
Tensor<T> attention_map(const Tensor<T>& y, std::size_t n, std::size_t j, const AttentionParams<T>& p) {
  check_groups(y, n, p);
  if (j >= n) throw ValueError("attention_map: group " + std::to_string(j) + " out of range");
  return gate_of_group(y, n, j, p);
}

template <typename T>
Tensor<T> attention_forward(const Tensor<T>& y, std::size_t n, const AttentionParams<T>& p) {
  check_groups(y, n, p);
  const std::size_t B = y.dim(0), C = y.dim(1), HW = y.dim(2) * y.dim(3), per = C / n;
  Tensor<T> out = y;
  for (std::size_t j = 0; j < n; ++j) {
    const Tensor<T> gate = gate_of_group(y, n, j, p);
    for (std::size_t b = 0; b < B; ++b) {
      const T* g = gate.data().data() + b * HW;
      for (std::size_t c = 0; c < per; ++c) {
        T* plane = out.data().data() + (b * C + j * per + c) * HW;
        for (std::size_t s = 0; s < HW; ++s) plane[s] *= g[s];
      }
    }
  }
  return out;
}

template struct AttentionParams<float>;
template struct AttentionParams<double>;
template AttentionParams<float> attention_init<float>(int, std::uint64_t);
template AttentionParams<double> attention_init<double>(int, std::uint64_t);
template AttentionParams<float> attention_zero<float>(int);
template AttentionParams<double> attention_zero<double>(int);
template Tensor<float> attention_forward(const Tensor<float>&, std::size_t, const AttentionParams<float>&);
template Tensor<double> attention_forward(const Tensor<double>&, std::size_t, const AttentionParams<double>&);
template Tensor<float> attention_map(const Tensor<float>&, std::size_t, std::size_t, const AttentionParams<float>&);
template Tensor<double> attention_map(const Tensor<double>&, std::size_t, std::size_t, const AttentionParams<double>&);

}  // namespace gra

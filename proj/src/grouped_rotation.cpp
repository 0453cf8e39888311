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

#include "gra/grouped_rotation.hpp"

#include <algorithm>
#include <string>

#include "gra/ops.hpp"
#include "gra/rotation.hpp"

namespace gra {

namespace {

template <typename T>
void check_angles(const KernelBank<T>& bank, const AngleSet<T>& angles, const char* op) {
  bank.validate();
  angles.validate();
  if (angles.groups() != bank.groups) {
    throw ShapeError(std::string(op) + ": angle set has " + std::to_string(angles.groups()) +
                     " groups but the kernel bank has " + std::to_string(bank.groups));
  }
}

// Multiplies group j of every sample b by lambdas[b,j] in place.
template <typename T>
void scale_groups(Tensor<T>& rotated, const AngleSet<T>& angles, std::size_t per_group) {
  const std::size_t B = angles.batch(), n = angles.groups();
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      const T lambda = angles.lambdas(b, j);
      T* begin = rotated.data().data() + (b * n + j) * per_group;
      std::transform(begin, begin + per_group, begin, [lambda](T v) { return lambda * v; });
    }
  }
}

}  // namespace

template <typename T>
void KernelBank<T>::validate() const {
  if (w.rank() != 4) throw ShapeError("kernel bank: weights must be [Cout,Cin,k,k], got " + shape_to_string(w.shape()));
  if (w.dim(2) != w.dim(3)) throw ShapeError("kernel bank: kernel " + shape_to_string(w.shape()) + " is not square");
  if (w.dim(2) % 2 == 0) throw ValueError("kernel bank: kernel extent " + std::to_string(w.dim(2)) + " is not odd");
  if (groups == 0) throw ValueError("kernel bank: group count must be positive");
  if (w.dim(0) % groups != 0) {
    throw ShapeError("kernel bank: output channel axis (dim 0) of " + std::to_string(w.dim(0)) +
                     " is not divisible into " + std::to_string(groups) + " groups");
  }
}

template <typename T>
Tensor<T> group_view(const KernelBank<T>& bank) {
  bank.validate();
  const std::size_t n = bank.groups, k = bank.kernel_size();
  return bank.w.reshape({n, bank.out_channels() / n, bank.in_channels(), k, k});
}

template <typename T>
Tensor<T> rotate_groups_naive(const KernelBank<T>& bank, const AngleSet<T>& angles) {
  check_angles(bank, angles, "rotate_groups_naive");
  const std::size_t B = angles.batch(), n = bank.groups;
  const Tensor<T> groups = group_view(bank);

  std::vector<Tensor<T>> samples;
  samples.reserve(B);
  for (std::size_t b = 0; b < B; ++b) {
    std::vector<Tensor<T>> rotated;
    rotated.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      Tensor<T> g = rotate_kernel_direct(groups.select(j), static_cast<double>(angles.thetas(b, j)));
      const T lambda = angles.lambdas(b, j);
      for (auto& v : g.data()) v = lambda * v;
      rotated.push_back(std::move(g));
    }
    samples.push_back(stack(rotated).reshape(bank.w.shape()));
  }
  return stack(samples);
}

template <typename T>
RotationOperands<T> rotation_operands(const KernelBank<T>& bank, const AngleSet<T>& angles) {
  check_angles(bank, angles, "rotation_operands");
  const std::size_t B = angles.batch(), n = bank.groups;
  const std::size_t k = bank.kernel_size(), kk = k * k;
  const std::size_t per = bank.out_channels() / n, cin = bank.in_channels();

  // [B,n,kk,kk] -> [n,B,kk,kk] -> [n,B*kk,kk]
  Tensor<T> mats({B, n, kk, kk});
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      const RotationOperator op = rotation_matrix(static_cast<double>(angles.thetas(b, j)), static_cast<int>(k));
      std::copy(op.matrix.data().begin(), op.matrix.data().end(),
                mats.data().begin() + static_cast<std::ptrdiff_t>((b * n + j) * kk * kk));
    }
  }
  Tensor<T> rotations = mats.permute({1, 0, 2, 3}).reshape({n, B * kk, kk});

  // [Cout,Cin,k,k] -> [n,Cout/n,Cin,kk] -> [n,kk,Cout/n,Cin] -> [n,kk,(Cout/n)*Cin]
  Tensor<T> kernels = bank.w.reshape({n, per, cin, kk}).permute({0, 3, 1, 2}).reshape({n, kk, per * cin});
  return {std::move(rotations), std::move(kernels)};
}

template <typename T>
Tensor<T> rotate_groups_batched(const KernelBank<T>& bank, const AngleSet<T>& angles) {
  const RotationOperands<T> ops = rotation_operands(bank, angles);
  const std::size_t B = angles.batch(), n = bank.groups;
  const std::size_t k = bank.kernel_size(), kk = k * k;
  const std::size_t cout = bank.out_channels(), per = cout / n, cin = bank.in_channels();

  // [n,B*kk,per*cin] -> [n,B,kk,per,cin] -> [B,n,per,cin,kk] -> [B,Cout,Cin,k,k]
  Tensor<T> rotated = bmm(ops.rotations, ops.kernels)
                          .reshape({n, B, kk, per, cin})
                          .permute({1, 0, 3, 4, 2})
                          .reshape({B, cout, cin, k, k});
  scale_groups(rotated, angles, per * cin * kk);
  return rotated;
}

template struct KernelBank<float>;
template struct KernelBank<double>;
template Tensor<float> group_view(const KernelBank<float>&);
template Tensor<double> group_view(const KernelBank<double>&);
template Tensor<float> rotate_groups_naive(const KernelBank<float>&, const AngleSet<float>&);
template Tensor<double> rotate_groups_naive(const KernelBank<double>&, const AngleSet<double>&);
template RotationOperands<float> rotation_operands(const KernelBank<float>&, const AngleSet<float>&);
template RotationOperands<double> rotation_operands(const KernelBank<double>&, const AngleSet<double>&);
template Tensor<float> rotate_groups_batched(const KernelBank<float>&, const AngleSet<float>&);
template Tensor<double> rotate_groups_batched(const KernelBank<double>&, const AngleSet<double>&);

}  // namespace gra

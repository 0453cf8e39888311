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

#include <gtest/gtest.h>

#include "gra/grouped_rotation.hpp"
#include "oracles.hpp"

namespace gra {
namespace {

using oracle::random_tensor;

AngleSet<double> random_angles(std::size_t B, std::size_t n, std::mt19937_64& rng) {
  return {random_tensor({B, n}, rng, -3.5, 3.5), random_tensor({B, n}, rng, 0.0, 1.0)};
}

/// Every (sample, filter, input channel) slice rotated on its own.
Tensor<double> reference(const Tensor<double>& w, std::size_t n, const AngleSet<double>& a) {
  const std::size_t B = a.thetas.dim(0), cout = w.dim(0), cin = w.dim(1), k = w.dim(2);
  const std::size_t per = cout / n, plane = k * k;
  Tensor<double> out({B, cout, cin, k, k});
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t o = 0; o < cout; ++o)
      for (std::size_t c = 0; c < cin; ++c) {
        const double* src = w.data().data() + (o * cin + c) * plane;
        const auto r = oracle::rotate_kernel(src, static_cast<int>(k), a.thetas(b, o / per));
        for (std::size_t e = 0; e < plane; ++e)
          out[((b * cout + o) * cin + c) * plane + e] = a.lambdas(b, o / per) * r[e];
      }
  return out;
}

TEST(GroupView, SplitsOutputChannelsContiguously) {
  std::mt19937_64 rng(40);
  const KernelBank<double> bank{random_tensor({6, 2, 3, 3}, rng), 3};
  const auto v = group_view(bank);
  ASSERT_EQ(v.shape(), (Shape{3, 2, 2, 3, 3}));
  EXPECT_EQ(v(2, 1, 0, 2, 1), bank.w(5, 0, 2, 1));
  EXPECT_EQ(group_view(KernelBank<double>{bank.w, 6}).shape(), (Shape{6, 1, 2, 3, 3}));
  EXPECT_EQ(group_view(KernelBank<double>{bank.w, 1}).shape(), (Shape{1, 6, 2, 3, 3}));
}

TEST(GroupView, RejectsIndivisibleBank) {
  const KernelBank<double> bank{Tensor<double>({6, 2, 3, 3}), 4};
  EXPECT_THROW(bank.validate(), ShapeError);
  EXPECT_THROW(KernelBank<double>({Tensor<double>({6, 2, 2, 2}), 1}).validate(), ValueError);
  EXPECT_THROW(KernelBank<double>({Tensor<double>({6, 2, 3, 5}), 1}).validate(), ShapeError);
}

TEST(RotateGroups, IdentityAnglesUnitScaleReplicateBank) {
  std::mt19937_64 rng(41);
  const KernelBank<double> bank{random_tensor({4, 3, 3, 3}, rng), 2};
  const AngleSet<double> a{Tensor<double>({2, 2}), Tensor<double>::full({2, 2}, 1.0)};
  for (const auto& out : {rotate_groups_naive(bank, a), rotate_groups_batched(bank, a)}) {
    ASSERT_EQ(out.shape(), (Shape{2, 4, 3, 3, 3}));
    EXPECT_EQ(out.select(0), bank.w);
    EXPECT_EQ(out.select(1), bank.w);
  }
}

TEST(RotateGroups, ZeroAngleAppliesGroupScale) {
  std::mt19937_64 rng(42);
  const KernelBank<double> bank{random_tensor({4, 2, 3, 3}, rng), 2};
  AngleSet<double> a{Tensor<double>({1, 2}), Tensor<double>({1, 2}, {0.25, 3.0})};
  const auto out = rotate_groups_batched(bank, a);
  for (std::size_t o = 0; o < 4; ++o)
    for (std::size_t e = 0; e < 18; ++e) EXPECT_EQ(out[o * 18 + e], (o < 2 ? 0.25 : 3.0) * bank.w[o * 18 + e]);
}

TEST(RotateGroups, NaiveMatchesPerSliceReference) {
  std::mt19937_64 rng(43);
  const KernelBank<double> bank{random_tensor({6, 2, 5, 5}, rng), 3};
  const auto a = random_angles(2, 3, rng);
  EXPECT_LT(oracle::max_abs_diff(rotate_groups_naive(bank, a), reference(bank.w, 3, a)), 1e-12);
}

TEST(RotateGroups, BatchedMatchesNaiveOnRandomConfigurations) {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<std::size_t> small(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = small(rng), per = small(rng), cin = small(rng), B = small(rng);
    const std::size_t k = 2 * (trial % 4) + 1;
    const KernelBank<double> bank{random_tensor({n * per, cin, k, k}, rng), n};
    const auto a = random_angles(B, n, rng);
    const auto naive = rotate_groups_naive(bank, a), batched = rotate_groups_batched(bank, a);
    EXPECT_LT(oracle::max_abs_diff(naive, batched), 1e-6) << "trial " << trial;

    const KernelBank<float> bank32{bank.w.cast<float>(), n};
    const AngleSet<float> a32{a.thetas.cast<float>(), a.lambdas.cast<float>()};
    EXPECT_LT(oracle::max_abs_diff(rotate_groups_batched(bank32, a32), naive), 1e-4) << "trial " << trial;
  }
}

TEST(RotateGroups, OperandShapesFollowTheSingleMatmulLayout) {
  const KernelBank<float> bank{Tensor<float>({512, 256, 3, 3}), 16};
  const AngleSet<float> a{Tensor<float>({2, 16}), Tensor<float>::full({2, 16}, 1.0f)};
  const auto ops = rotation_operands(bank, a);
  EXPECT_EQ(ops.rotations.shape(), (Shape{16, 18, 9}));
  EXPECT_EQ(ops.kernels.shape(), (Shape{16, 9, 8192}));
}

TEST(RotateGroups, OperandsReproduceRotationByMatmul) {
  std::mt19937_64 rng(45);
  const KernelBank<double> bank{random_tensor({4, 2, 3, 3}, rng), 2};
  const auto a = random_angles(3, 2, rng);
  const auto ops = rotation_operands(bank, a);
  const auto prod = oracle::matmul_batched(ops.rotations, ops.kernels);  // [n, B*9, per*cin]
  const auto batched = rotate_groups_batched(bank, a);
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 9; ++p)
        for (std::size_t l = 0; l < 2; ++l)
          for (std::size_t c = 0; c < 2; ++c) {
            const double expect = a.lambdas(b, j) * prod(j, b * 9 + p, l * 2 + c);
            EXPECT_NEAR(batched(b, j * 2 + l, c, p / 3, p % 3), expect, 1e-12);
          }
}

TEST(RotateGroups, ZeroScaleZeroesOnlyThatGroup) {
  std::mt19937_64 rng(46);
  const KernelBank<double> bank{random_tensor({6, 2, 3, 3}, rng), 3};
  auto a = random_angles(2, 3, rng);
  a.lambdas(1, 2) = 0.0;
  const auto out = rotate_groups_batched(bank, a);
  for (std::size_t o = 4; o < 6; ++o)
    for (std::size_t e = 0; e < 18; ++e) EXPECT_EQ(out[(6 + o) * 18 + e], 0.0);
  double other = 0;
  for (std::size_t e = 0; e < 4 * 18; ++e) other += std::abs(out[6 * 18 + e]);
  EXPECT_GT(other, 0.0);
}

TEST(RotateGroups, SamplesDoNotInteract) {
  std::mt19937_64 rng(47);
  const KernelBank<double> bank{random_tensor({4, 3, 3, 3}, rng), 2};
  auto a = random_angles(3, 2, rng);
  const auto before = rotate_groups_batched(bank, a);
  a.thetas(0, 0) += 0.4;
  a.lambdas(2, 1) *= 0.5;
  const auto after = rotate_groups_batched(bank, a);
  EXPECT_EQ(before.select(1), after.select(1));
}

TEST(RotateGroups, RejectsAngleGroupMismatch) {
  const KernelBank<double> bank{Tensor<double>({4, 3, 3, 3}), 2};
  const AngleSet<double> a{Tensor<double>({1, 4}), Tensor<double>({1, 4})};
  EXPECT_THROW(rotate_groups_batched(bank, a), ShapeError);
  EXPECT_THROW(rotate_groups_naive(bank, a), ShapeError);
  const AngleSet<double> ragged{Tensor<double>({1, 2}), Tensor<double>({2, 2})};
  EXPECT_THROW(rotate_groups_batched(bank, ragged), ShapeError);
}

}  // namespace
}  // namespace gra

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

#include "gra/attention.hpp"
#include "oracles.hpp"

namespace gra {
namespace {

using oracle::random_tensor;

AttentionParams<double> random_attention(int ka, std::mt19937_64& rng) {
  const auto k = static_cast<std::size_t>(ka);
  return {random_tensor({1, 2, k, k}, rng, -0.3, 0.3), random_tensor({1}, rng)};
}

TEST(Attention, ZeroFilterHalvesExactly) {
  std::mt19937_64 rng(60);
  const auto y = random_tensor({2, 6, 5, 5}, rng);
  const auto out = attention_forward(y, 3, attention_zero<double>());
  for (std::size_t i = 0; i < y.numel(); ++i) EXPECT_EQ(out[i], 0.5 * y[i]);

  const auto yf = y.cast<float>();
  const auto outf = attention_forward(yf, 2, attention_zero<float>());
  for (std::size_t i = 0; i < yf.numel(); ++i) EXPECT_EQ(outf[i], 0.5f * yf[i]);
}

TEST(Attention, MatchesScalarReference) {
  std::mt19937_64 rng(61);
  const auto y = random_tensor({1, 4, 5, 5}, rng);
  const auto p = random_attention(7, rng);
  const auto ref = oracle::attention(y, 2, p.f_weight, p.f_bias[0]);
  EXPECT_LT(oracle::max_abs_diff(attention_forward(y, 2, p), ref), 1e-6);
}

TEST(Attention, MatchesReferenceAcrossShapes) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4), per = 1 + static_cast<std::size_t>(trial % 3);
    const auto y = random_tensor({2, n * per, 4 + static_cast<std::size_t>(trial % 5), 6}, rng);
    const auto p = random_attention(trial % 2 ? 3 : 7, rng);
    const auto ref = oracle::attention(y, static_cast<long>(n), p.f_weight, p.f_bias[0]);
    EXPECT_LT(oracle::max_abs_diff(attention_forward(y, n, p), ref), 1e-10);
  }
}

TEST(Attention, OneChannelPerGroup) {
  std::mt19937_64 rng(63);
  const auto y = random_tensor({1, 5, 6, 6}, rng);
  const auto p = random_attention(7, rng);
  EXPECT_LT(oracle::max_abs_diff(attention_forward(y, 5, p), oracle::attention(y, 5, p.f_weight, p.f_bias[0])), 1e-10);
}

TEST(Attention, NeverAmplifies) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = random_tensor({2, 8, 6, 6}, rng, -5.0, 5.0);
    const auto p = attention_init<double>(7, rng());
    const auto out = attention_forward(y, 4, p);
    for (std::size_t i = 0; i < y.numel(); ++i) ASSERT_LE(std::abs(out[i]), std::abs(y[i]));
  }
}

TEST(Attention, GroupSharesOneMap) {
  std::mt19937_64 rng(65);
  const auto y = random_tensor({1, 6, 5, 5}, rng, 0.5, 2.0);
  const auto p = random_attention(7, rng);
  const auto out = attention_forward(y, 2, p);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto map = attention_map(y, 2, j, p);
    ASSERT_EQ(map.shape(), (Shape{1, 1, 5, 5}));
    for (std::size_t c = j * 3; c < j * 3 + 3; ++c)
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t w = 0; w < 5; ++w) {
          const double ratio = out(0, c, i, w) / y(0, c, i, w);
          EXPECT_NEAR(ratio, map(0, 0, i, w), 1e-12);
          EXPECT_GT(ratio, 0.0);
          EXPECT_LT(ratio, 1.0);
        }
  }
}

TEST(Attention, GroupsAreLocal) {
  std::mt19937_64 rng(66);
  const auto y = random_tensor({1, 6, 5, 5}, rng);
  const auto p = random_attention(7, rng);
  auto z = y;
  for (std::size_t e = 0; e < 25; ++e) z[4 * 25 + e] += 1.0;  // channel 4 lives in group 2
  const auto a = attention_forward(y, 3, p), b = attention_forward(z, 3, p);
  for (std::size_t e = 0; e < 4 * 25; ++e) EXPECT_EQ(a[e], b[e]);
}

TEST(Attention, RejectsIndivisibleChannels) {
  EXPECT_THROW(attention_forward(Tensor<double>({1, 6, 4, 4}), 4, attention_zero<double>()), ShapeError);
  EXPECT_THROW(attention_zero<double>(4), ValueError);
  EXPECT_THROW(attention_map(Tensor<double>({1, 6, 4, 4}), 3, 3, attention_zero<double>()), ValueError);
}

}  // namespace
}  // namespace gra

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

#include <numbers>

#include "gra/rotation.hpp"
#include "oracles.hpp"

namespace gra {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> mat_apply(const Tensor<double>& m, const std::vector<double>& w) {
  const std::size_t kk = w.size();
  std::vector<double> out(kk, 0.0);
  for (std::size_t p = 0; p < kk; ++p)
    for (std::size_t q = 0; q < kk; ++q) out[p] += m(p, q) * w[q];
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(RotationMatrix, ZeroAngleIsExactIdentity) {
  for (int k : {1, 3, 5, 7}) {
    const auto op = rotation_matrix(0.0, k);
    const auto kk = static_cast<std::size_t>(k * k);
    ASSERT_EQ(op.matrix.shape(), (Shape{kk, kk}));
    for (std::size_t p = 0; p < kk; ++p)
      for (std::size_t q = 0; q < kk; ++q) EXPECT_EQ(op.matrix(p, q), p == q ? 1.0 : 0.0);
  }
}

TEST(RotationMatrix, QuarterTurnIsExactPermutation) {
  const auto m = rotation_matrix(kPi / 2, 3).matrix;
  // Counterclockwise: the top-right corner (0,2) lands on the top-left (0,0),
  // so target 0 reads source 2; in general target (r,c) reads (c, 2-r).
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t q = 0; q < 9; ++q) EXPECT_EQ(m(r * 3 + c, q), q == c * 3 + (2 - r) ? 1.0 : 0.0);
}

TEST(RotationMatrix, DiagonalAngleMatchesBasisProbing) {
  const auto m = rotation_matrix(kPi / 4, 3).matrix;
  for (std::size_t q = 0; q < 9; ++q) {
    std::vector<double> e(9, 0.0);
    e[q] = 1.0;
    const auto col = oracle::rotate_kernel(e.data(), 3, kPi / 4);
    for (std::size_t p = 0; p < 9; ++p) EXPECT_NEAR(m(p, q), col[p], 1e-12);
  }
}

TEST(RotationMatrix, MatchesOracleOnRandomKernels) {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  const int ks[] = {1, 3, 5, 7};
  for (int trial = 0; trial < 100; ++trial) {
    const int k = ks[trial % 4];
    const double theta = angle(rng);
    const auto w = oracle::random_tensor({static_cast<std::size_t>(k), static_cast<std::size_t>(k)}, rng);
    const auto ref = oracle::rotate_kernel(w.data().data(), k, theta);
    EXPECT_LT(max_diff(mat_apply(rotation_matrix(theta, k).matrix, w.storage()), ref), 1e-12) << "k=" << k << " theta=" << theta;
    EXPECT_LT(max_diff(rotate_kernel_direct(w, theta).storage(), ref), 1e-12);
  }
}

TEST(RotationMatrix, RowsAreConvexCombinationsOfAtMostFourCells) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + 2 * (trial % 4);
    const auto m = rotation_matrix(angle(rng), k).matrix;
    const auto kk = static_cast<std::size_t>(k * k);
    for (std::size_t p = 0; p < kk; ++p) {
      double sum = 0;
      int nonzero = 0;
      for (std::size_t q = 0; q < kk; ++q) {
        const double v = m(p, q);
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
        sum += v;
        nonzero += v != 0.0;
      }
      EXPECT_LE(sum, 1.0 + 1e-12);
      EXPECT_LE(nonzero, 4);
    }
    // The centre always maps to itself.
    const std::size_t centre = kk / 2;
    EXPECT_EQ(m(centre, centre), 1.0);
  }
}

TEST(RotationMatrix, FullTurnIsIdentity) {
  for (int k : {3, 5, 7}) {
    const auto m = rotation_matrix(2 * kPi, k).matrix;
    const auto kk = static_cast<std::size_t>(k * k);
    for (std::size_t p = 0; p < kk; ++p)
      for (std::size_t q = 0; q < kk; ++q) EXPECT_NEAR(m(p, q), p == q ? 1.0 : 0.0, 1e-12);
  }
}

TEST(RotationMatrix, OppositeAnglesNearlyInvertForSmallAngles) {
  // Interior bump; each bilinear pass blurs by O(theta), so the round-trip
  // error shrinks with the angle but is not 1e-2 small at pi/12.
  const double row[] = {0, 0.5, 1, 0.5, 0};
  std::vector<double> w(25);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) w[r * 5 + c] = row[r] * row[c];
  double previous = 0;
  for (double theta : {1e-3, 5e-3, 1e-2, 0.05, kPi / 12}) {
    const auto round_trip = mat_apply(rotation_matrix(-theta, 5).matrix, mat_apply(rotation_matrix(theta, 5).matrix, w));
    const double err = max_diff(round_trip, w);
    if (theta <= 1e-2) {
      EXPECT_LT(err, 1e-2) << theta;
    }
    EXPECT_LT(err, 0.1) << theta;
    EXPECT_GE(err, previous);
    previous = err;
    for (double v : round_trip) EXPECT_LE(std::abs(v), 1.0);
  }
}

TEST(RotationMatrix, RejectsEvenOrNonPositiveExtent) {
  EXPECT_THROW(rotation_matrix(0.1, 4), ValueError);
  EXPECT_THROW(rotation_matrix(0.1, 0), ValueError);
  EXPECT_THROW(rotation_matrix(0.1, -3), ValueError);
  EXPECT_THROW(rotation_matrix(NAN, 3), ValueError);
}

TEST(RotateDirect, OnesKernelLosesMassAtTheCorners) {
  const auto w = Tensor<double>::full({3, 3}, 1.0);
  const auto r = rotate_kernel_direct(w, kPi / 6);
  double sum = 0;
  for (double v : r.data()) sum += v;
  EXPECT_LT(sum, 9.0);
  EXPECT_EQ(r(1, 1), 1.0);
}

TEST(RotateDirect, ZeroAngleReturnsInput) {
  std::mt19937_64 rng(22);
  const auto w = oracle::random_tensor_f({2, 3, 5, 5}, rng);
  EXPECT_EQ(rotate_kernel_direct(w, 0.0), w);
}

TEST(RotateDirect, SymmetricKernelSurvivesQuarterTurn) {
  const Tensor<double> w({3, 3}, {1, 2, 1, 2, 4, 2, 1, 2, 1});
  EXPECT_EQ(rotate_kernel_direct(w, kPi / 2), w);
}

TEST(RotateDirect, IsLinear) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k : {1, 3, 5, 7}) {
    for (int trial = 0; trial < 100; ++trial) {
      const double theta = angle(rng);
      const auto ks = static_cast<std::size_t>(k);
      const auto a = oracle::random_tensor({ks, ks}, rng), b = oracle::random_tensor({ks, ks}, rng);
      Tensor<double> combo({ks, ks});
      for (std::size_t i = 0; i < combo.numel(); ++i) combo[i] = 2.0 * a[i] - 3.0 * b[i];
      const auto ra = rotate_kernel_direct(a, theta), rb = rotate_kernel_direct(b, theta);
      const auto rc = rotate_kernel_direct(combo, theta);
      for (std::size_t i = 0; i < combo.numel(); ++i) EXPECT_NEAR(rc[i], 2.0 * ra[i] - 3.0 * rb[i], 1e-12);
    }
  }
}

TEST(RotateDirect, RejectsNonSquare) {
  EXPECT_THROW(rotate_kernel_direct(Tensor<double>({3, 5}), 0.1), ShapeError);
  EXPECT_THROW(rotate_kernel_direct(Tensor<double>({3}), 0.1), ShapeError);
  EXPECT_THROW(rotate_kernel_direct(Tensor<double>({4, 4}), 0.1), ValueError);
}

Tensor<double> central_difference(double theta, int k, double h) {
  const auto plus = rotation_matrix(theta + h, k).matrix, minus = rotation_matrix(theta - h, k).matrix;
  Tensor<double> d(plus.shape());
  for (std::size_t i = 0; i < d.numel(); ++i) d[i] = (plus[i] - minus[i]) / (2 * h);
  return d;
}

TEST(RotationDerivative, MatchesFiniteDifferences) {
  for (int k : {3, 5, 7}) {
    const auto d = rotation_matrix_dtheta(0.3, k);
    EXPECT_LT(oracle::max_abs_diff(d, central_difference(0.3, k, 1e-5)), 1e-6) << "k=" << k;
  }
}

TEST(RotationDerivative, OneByOneIsZero) {
  const auto d = rotation_matrix_dtheta(0.7, 1);
  EXPECT_EQ(d.shape(), (Shape{1, 1}));
  EXPECT_EQ(d[0], 0.0);
}

TEST(RotationDerivative, PeriodicInTheAngle) {
  const auto a = rotation_matrix_dtheta(0.4, 5), b = rotation_matrix_dtheta(0.4 + 2 * kPi, 5);
  EXPECT_LT(oracle::max_abs_diff(a, b), 1e-9);
}

TEST(RotationDerivative, SeamRaisesWithTheCell) {
  // At theta = 0 every sample sits on a grid line.
  try {
    rotation_matrix_dtheta(0.0, 3);
    FAIL();
  } catch (const SeamError& e) {
    EXPECT_LT(e.cell(), 9u);
    EXPECT_NE(e.cell(), 4u);
  }
  EXPECT_THROW(rotation_matrix_dtheta(kPi / 2, 3), SeamError);
  EXPECT_NO_THROW(rotation_matrix_dtheta(0.3, 3));
}

}  // namespace
}  // namespace gra

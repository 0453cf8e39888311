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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gra/tensor.hpp"

namespace gra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `gra` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// k*k rows of fixed-width values with 9 significant digits.
std::string format_matrix(const Tensor<double>& m);

struct BenchConfig {
  int batch = 4;
  int in_channels = 256;
  int out_channels = 256;
  int hw = 64;
  int groups = 32;
  int kernel = 3;
  int iters = 20;
  std::uint64_t seed = 0;
};

struct BenchResult {
  double naive_us = 0;    // median rotate_groups_naive
  double batched_us = 0;  // median rotate_groups_batched
  double conv_us = 0;     // median conv_per_sample on pre-rotated kernels
  double checksum = 0;    // sum of one conv output
  bool checksum_stable = false;  // every iteration bitwise equal

  double overhead_pct() const { return 100.0 * batched_us / conv_us; }
  double naive_over_batched() const { return naive_us / batched_us; }
};

BenchResult run_bench(const BenchConfig& config);
std::string format_bench(const BenchResult& r);

struct DemoConfig {
  int kernel = 3;
  std::vector<double> thetas;
  std::uint64_t seed = 0;
  int image_size = 64;
  double frequency = 0.5;  // radians per pixel along the stripe normal
};

struct DemoResult {
  std::vector<double> thetas;
  /// response[i][j]: mean |output| for kernel angle i on stripes at angle j.
  std::vector<std::vector<double>> response;

  std::vector<std::size_t> row_argmax() const;
  bool matched() const;
};

/// Derivative-of-smoothing edge detector responding to intensity change
/// along +x (Sobel for k = 3).
Tensor<double> oriented_edge_kernel(int k);

/// [size,size] sinusoidal stripes whose intensity varies along the unit
/// vector at `angle` (x right, y up).
Tensor<double> stripe_image(double angle, int size, double frequency, double phase);

DemoResult run_demo(const DemoConfig& config);
std::string format_demo(const DemoResult& r);

}  // namespace gra::cli

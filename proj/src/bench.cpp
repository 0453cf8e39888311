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

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "gra/cli.hpp"
#include "gra/grouped_rotation.hpp"
#include "gra/sample_conv.hpp"

namespace gra::cli {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename F>
double time_us(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

Tensor<float> random_tensor(Shape shape, double lo, double hi, std::mt19937_64& rng) {
  Tensor<float> t(std::move(shape));
  std::uniform_real_distribution<double> dist(lo, hi);
  for (auto& v : t.data()) v = static_cast<float>(dist(rng));
  return t;
}

double sum(const Tensor<float>& t) {
  double s = 0;
  for (float v : t.data()) s += v;
  return s;
}

}  // namespace

BenchResult run_bench(const BenchConfig& c) {
  if (c.batch < 1 || c.in_channels < 1 || c.out_channels < 1 || c.hw < 1 || c.groups < 1 || c.iters < 1) {
    throw ValueError("bench: sizes and iteration count must be positive");
  }
  if (c.kernel < 1 || c.kernel % 2 == 0) throw ValueError("bench: kernel extent must be odd");
  const auto B = static_cast<std::size_t>(c.batch), cin = static_cast<std::size_t>(c.in_channels);
  const auto cout = static_cast<std::size_t>(c.out_channels), hw = static_cast<std::size_t>(c.hw);
  const auto k = static_cast<std::size_t>(c.kernel), n = static_cast<std::size_t>(c.groups);

  std::mt19937_64 rng(c.seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(cin * k * k));
  const KernelBank<float> bank{random_tensor({cout, cin, k, k}, -bound, bound, rng), n};
  bank.validate();
  const AngleSet<float> angles{random_tensor({B, n}, -std::numbers::pi, std::numbers::pi, rng),
                               random_tensor({B, n}, 0.05, 0.95, rng)};
  const Tensor<float> x = random_tensor({B, cin, hw, hw}, -1.0, 1.0, rng);

  std::vector<double> naive, batched, conv;
  Tensor<float> w_rot;
  double first = 0;
  BenchResult r;
  r.checksum_stable = true;
  for (int it = 0; it < c.iters; ++it) {
    naive.push_back(time_us([&] { (void)rotate_groups_naive(bank, angles); }));
    batched.push_back(time_us([&] { w_rot = rotate_groups_batched(bank, angles); }));
    Tensor<float> y;
    conv.push_back(time_us([&] { y = conv_per_sample(x, w_rot); }));
    const double s = sum(y);
    if (it == 0) {
      first = s;
      r.checksum = s;
    }
    r.checksum_stable = r.checksum_stable && std::bit_cast<std::uint64_t>(s) == std::bit_cast<std::uint64_t>(first);
  }
  r.naive_us = median(naive);
  r.batched_us = median(batched);
  r.conv_us = median(conv);
  return r;
}

std::string format_bench(const BenchResult& r) {
  char line[512];
  std::snprintf(line, sizeof line,
                "bench naive_us=%.3f batched_us=%.3f conv_us=%.3f overhead_pct=%.4f\n"
                "ratio_naive_batched=%.4f\n"
                "checksum=%.17g checksum_stable=%s\n",
                r.naive_us, r.batched_us, r.conv_us, r.overhead_pct(), r.naive_over_batched(), r.checksum,
                r.checksum_stable ? "yes" : "no");
  return line;
}

}  // namespace gra::cli

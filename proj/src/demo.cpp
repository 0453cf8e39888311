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
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "gra/cli.hpp"
#include "gra/pipeline.hpp"

namespace gra::cli {

Tensor<double> oriented_edge_kernel(int k) {
  if (k < 3 || k % 2 == 0) throw ValueError("demo: edge kernel extent must be odd and >= 3, got " + std::to_string(k));
  const int half = k / 2;
  const auto ks = static_cast<std::size_t>(k);
  Tensor<double> w({1, 1, ks, ks});
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const double u = c - half, v = half - r;
      w(0, 0, r, c) = u * (half + 1 - std::abs(v));
    }
  }
  return w;
}

Tensor<double> stripe_image(double angle, int size, double frequency, double phase) {
  if (size < 1) throw ValueError("demo: image size must be positive");
  const auto s = static_cast<std::size_t>(size);
  Tensor<double> img({s, s});
  const double cx = std::cos(angle), cy = std::sin(angle);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double x = c, y = -r;
      img(r, c) = std::sin(frequency * (x * cx + y * cy) + phase);
    }
  }
  return img;
}

std::vector<std::size_t> DemoResult::row_argmax() const {
  std::vector<std::size_t> out;
  for (const auto& row : response) {
    out.push_back(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()));
  }
  return out;
}

bool DemoResult::matched() const {
  const auto am = row_argmax();
  for (std::size_t i = 0; i < am.size(); ++i) {
    // Ties with the diagonal count as a match.
    if (response[i][am[i]] > response[i][i]) return false;
  }
  return true;
}

DemoResult run_demo(const DemoConfig& config) {
  if (config.thetas.empty()) throw ValueError("demo: need at least one angle");
  const int k = config.kernel;
  const std::size_t size = static_cast<std::size_t>(config.image_size);
  if (config.image_size < 2 * k + 1) throw ValueError("demo: image too small for the kernel");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);

  // One-filter module whose generator is overridden; a zero attention conv
  // gates every position by the same 0.5.
  GraParams<double> p{
      KernelBank<double>{oriented_edge_kernel(k), 1},
      generator_init<double>(1, 1, rng()),
      attention_zero<double>(),
      1,
      k / 2,
  };

  std::vector<Tensor<double>> images;
  for (double phi : config.thetas) {
    images.push_back(stripe_image(phi, config.image_size, config.frequency, phase_dist(rng)).reshape({1, 1, size, size}));
  }

  DemoResult result;
  result.thetas = config.thetas;
  const std::size_t crop = static_cast<std::size_t>(k);  // skip zero-padding artefacts
  for (double theta : config.thetas) {
    ForwardOverrides<double> ov;
    ov.angles = AngleSet<double>{Tensor<double>::full({1, 1}, theta), Tensor<double>::full({1, 1}, 1.0)};
    std::vector<double> row;
    for (const auto& img : images) {
      const Tensor<double> y = gra_forward_ex(img, p, ov).output;
      double acc = 0;
      std::size_t count = 0;
      for (std::size_t r = crop; r + crop < size; ++r) {
        for (std::size_t c = crop; c + crop < size; ++c) {
          acc += std::abs(y(0, 0, r, c));
          ++count;
        }
      }
      row.push_back(acc / static_cast<double>(count));
    }
    result.response.push_back(std::move(row));
  }
  return result;
}

std::string format_demo(const DemoResult& r) {
  std::ostringstream os;
  char cell[64];
  os << "# mean |response|; rows = kernel angle, columns = stripe angle (radians)\n";
  os << std::string(16, ' ');
  for (double t : r.thetas) {
    std::snprintf(cell, sizeof cell, " %12.6f", t);
    os << cell;
  }
  os << "\n";
  for (std::size_t i = 0; i < r.response.size(); ++i) {
    std::snprintf(cell, sizeof cell, "kernel=%-9.6f", r.thetas[i]);
    os << cell;
    for (double v : r.response[i]) {
      std::snprintf(cell, sizeof cell, " %12.6f", v);
      os << cell;
    }
    os << "\n";
  }
  os << "row_argmax=";
  const auto am = r.row_argmax();
  for (std::size_t i = 0; i < am.size(); ++i) os << (i ? "," : "") << am[i];
  os << "\nmatched=" << (r.matched() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace gra::cli

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

#include "gra/rotation.hpp"

#include <cmath>
#include <string>

namespace gra {

namespace {

void check_extent(int k, const char* op) {
  if (k < 1 || k % 2 == 0) {
    throw ValueError(std::string(op) + ": kernel extent must be odd and positive, got " + std::to_string(k));
  }
}

struct SamplePoint {
  double x;
  double y;
};

// Coordinates this close to a grid line are snapped onto it so that
// quarter turns give exact permutations despite cos(pi/2) != 0.
constexpr double kSnap = 1e-12;

double snap(double a) {
  const double nearest = std::round(a);
  return std::abs(a - nearest) < kSnap ? nearest : a;
}

// Source coordinates read by target cell (r, c).
SamplePoint sample_point(double cos_t, double sin_t, int half, int r, int c) {
  const double u = c - half;
  const double v = half - r;
  return {snap(cos_t * u + sin_t * v), snap(-sin_t * u + cos_t * v)};
}

}  // namespace

RotationOperator rotation_matrix(double theta, int k) {
  check_extent(k, "rotation_matrix");
  if (!std::isfinite(theta)) throw ValueError("rotation_matrix: angle is not finite");

  const int half = (k - 1) / 2;
  const auto kk = static_cast<std::size_t>(k) * k;
  Tensor<double> m({kk, kk});
  const double cos_t = std::cos(theta), sin_t = std::sin(theta);

  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const std::size_t row = static_cast<std::size_t>(r) * k + c;
      if (r == half && c == half) {
        m(row, row) = 1.0;
        continue;
      }
      const SamplePoint s = sample_point(cos_t, sin_t, half, r, c);
      const double fx = std::floor(s.x), fy = std::floor(s.y);
      for (int ix = 0; ix < 2; ++ix) {
        for (int iy = 0; iy < 2; ++iy) {
          const double qx = fx + ix, qy = fy + iy;
          const double wx = 1.0 - std::abs(s.x - qx), wy = 1.0 - std::abs(s.y - qy);
          if (wx <= 0.0 || wy <= 0.0) continue;
          if (std::abs(qx) > half || std::abs(qy) > half) continue;
          const auto qc = static_cast<std::size_t>(qx + half);
          const auto qr = static_cast<std::size_t>(half - qy);
          m(row, qr * k + qc) += wx * wy;
        }
      }
    }
  }
  return {k, theta, std::move(m)};
}

Tensor<double> rotation_matrix_dtheta(double theta, int k, double seam_tolerance) {
  check_extent(k, "rotation_matrix_dtheta");
  if (!std::isfinite(theta)) throw ValueError("rotation_matrix_dtheta: angle is not finite");

  const int half = (k - 1) / 2;
  const auto kk = static_cast<std::size_t>(k) * k;
  Tensor<double> d({kk, kk});
  const double cos_t = std::cos(theta), sin_t = std::sin(theta);
  const double reach = half + 1.0;

  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      if (r == half && c == half) continue;  // fixed point of every rotation
      const std::size_t row = static_cast<std::size_t>(r) * k + c;
      const SamplePoint s = sample_point(cos_t, sin_t, half, r, c);

      // A coordinate on an integer is a kink of the tent weights, but only
      // matters while the sample can still touch the support.
      const auto on_seam = [&](double a, double other) {
        const double nearest = std::round(a);
        return std::abs(a - nearest) < seam_tolerance && std::abs(nearest) <= reach &&
               std::abs(other) < reach + seam_tolerance;
      };
      if (on_seam(s.x, s.y) || on_seam(s.y, s.x)) {
        throw SeamError("rotation_matrix_dtheta: sample point of cell " + std::to_string(row) +
                            " lies on a non-differentiable seam at theta=" + std::to_string(theta),
                        row);
      }

      // d(sample)/dtheta for R(-theta) * (u, v).
      const double dsx = s.y;
      const double dsy = -s.x;
      const double fx = std::floor(s.x), fy = std::floor(s.y);
      for (int ix = 0; ix < 2; ++ix) {
        for (int iy = 0; iy < 2; ++iy) {
          const double qx = fx + ix, qy = fy + iy;
          const double ex = s.x - qx, ey = s.y - qy;
          const double wx = 1.0 - std::abs(ex), wy = 1.0 - std::abs(ey);
          if (wx <= 0.0 || wy <= 0.0) continue;
          if (std::abs(qx) > half || std::abs(qy) > half) continue;
          const double dwx = -(ex > 0 ? 1.0 : -1.0) * dsx;
          const double dwy = -(ey > 0 ? 1.0 : -1.0) * dsy;
          const auto qc = static_cast<std::size_t>(qx + half);
          const auto qr = static_cast<std::size_t>(half - qy);
          d(row, qr * k + qc) += dwx * wy + wx * dwy;
        }
      }
    }
  }
  return d;
}

template <typename T>
Tensor<T> rotate_kernel_direct(const Tensor<T>& w, double theta) {
  if (w.rank() < 2) throw ShapeError("rotate_kernel_direct: kernel must have rank >= 2, got " + shape_to_string(w.shape()));
  const std::size_t kr = w.dim(w.rank() - 2), kc = w.dim(w.rank() - 1);
  if (kr != kc) {
    throw ShapeError("rotate_kernel_direct: trailing extents " + std::to_string(kr) + "x" + std::to_string(kc) +
                     " are not square");
  }
  const int k = static_cast<int>(kc);
  check_extent(k, "rotate_kernel_direct");
  if (!std::isfinite(theta)) throw ValueError("rotate_kernel_direct: angle is not finite");

  const int half = (k - 1) / 2;
  const double cos_t = std::cos(theta), sin_t = std::sin(theta);
  const std::size_t plane = kc * kc;
  const std::size_t count = w.numel() / plane;
  Tensor<T> out(w.shape());

  // Value of the zero-extended source at integer centred coordinates.
  const auto at = [&](const T* src, long qx, long qy) -> double {
    if (qx < -half || qx > half || qy < -half || qy > half) return 0.0;
    return static_cast<double>(src[static_cast<std::size_t>(half - qy) * kc + static_cast<std::size_t>(qx + half)]);
  };

  for (std::size_t i = 0; i < count; ++i) {
    const T* src = w.data().data() + i * plane;
    T* dst = out.data().data() + i * plane;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        if (r == half && c == half) {
          dst[r * kc + c] = src[r * kc + c];
          continue;
        }
        const SamplePoint s = sample_point(cos_t, sin_t, half, r, c);
        const double fx = std::floor(s.x), fy = std::floor(s.y);
        const double tx = s.x - fx, ty = s.y - fy;
        const long x0 = static_cast<long>(fx), y0 = static_cast<long>(fy);
        double v = 0.0;
        if ((1.0 - tx) * (1.0 - ty) > 0.0) v += (1.0 - tx) * (1.0 - ty) * at(src, x0, y0);
        if (tx * (1.0 - ty) > 0.0) v += tx * (1.0 - ty) * at(src, x0 + 1, y0);
        if ((1.0 - tx) * ty > 0.0) v += (1.0 - tx) * ty * at(src, x0, y0 + 1);
        if (tx * ty > 0.0) v += tx * ty * at(src, x0 + 1, y0 + 1);
        dst[r * kc + c] = static_cast<T>(v);
      }
    }
  }
  return out;
}

template Tensor<float> rotate_kernel_direct(const Tensor<float>&, double);
template Tensor<double> rotate_kernel_direct(const Tensor<double>&, double);

}  // namespace gra

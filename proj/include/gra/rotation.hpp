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

// Kernel rotation by bilinear resampling.
//
// Cell (r, c) of a k x k kernel sits at centred coordinates
//   u = c - (k-1)/2,  v = (k-1)/2 - r      (x right, y up).
// The rotated kernel at a target cell samples the source kernel at
// R(-theta) * (u, v), so a positive angle turns the pattern counterclockwise.
// The source is treated as zero outside its k x k support; samples near the
// border therefore receive only partial bilinear weight.

#include <cstddef>
#include <stdexcept>

#include "gra/tensor.hpp"

namespace gra {

struct RotationOperator {
  int k = 1;
  double theta = 0.0;
  /// [k*k, k*k]; entry [p, q] is the weight of source cell q in target cell p.
  Tensor<double> matrix;
};

RotationOperator rotation_matrix(double theta, int k);

/// Thrown by rotation_matrix_dtheta when some sample coordinate is within the
/// seam tolerance of a grid line, where bilinear weights are not differentiable.
class SeamError : public std::domain_error {
 public:
  SeamError(const std::string& what, std::size_t cell) : std::domain_error(what), cell_(cell) {}
  /// Flattened index (r * k + c) of the target cell whose sample hit the seam.
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

inline constexpr double kSeamTolerance = 1e-6;

/// d/dtheta of rotation_matrix(theta, k).matrix, entrywise.
Tensor<double> rotation_matrix_dtheta(double theta, int k, double seam_tolerance = kSeamTolerance);

/// Rotates every trailing k x k slice of `w` by direct per-cell bilinear
/// interpolation. Reference path; no operator matrix is formed.
template <typename T>
Tensor<T> rotate_kernel_direct(const Tensor<T>& w, double theta);

}  // namespace gra

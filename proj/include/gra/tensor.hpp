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

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gra {

using Shape = std::vector<std::size_t>;

/// Raised for any shape, rank or extent violation. The message names the
/// operation and the offending axis.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numeric precondition (odd kernel, positive count, ...)
/// does not hold.
class ValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string shape_to_string(const Shape& shape);

/// Number of elements of `shape`; an empty shape is a scalar with one
/// element. Throws ShapeError on a zero extent.
std::size_t shape_numel(const Shape& shape);

/// Dense row-major array. Copies are deep; reshape and permute return new
/// tensors so every value is immutable once it has been handed out.
template <typename T>
class Tensor {
 public:
  using value_type = T;

  Tensor() : data_(1, T{0}) {}
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<T> data);

  static Tensor full(Shape shape, T value);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t numel() const noexcept { return data_.size(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  const std::vector<T>& storage() const noexcept { return data_; }

  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  template <typename... I>
  T& operator()(I... idx) noexcept {
    return data_[offset(
        std::array<std::size_t, sizeof...(I)>{static_cast<std::size_t>(idx)...})];
  }
  template <typename... I>
  const T& operator()(I... idx) const noexcept {
    return data_[offset(
        std::array<std::size_t, sizeof...(I)>{static_cast<std::size_t>(idx)...})];
  }

  Tensor reshape(Shape shape) const&;
  Tensor reshape(Shape shape) &&;

  /// out.shape[i] == shape[axes[i]].
  Tensor permute(const std::vector<std::size_t>& axes) const;

  /// Sub-tensor at index `i` of the leading axis.
  Tensor select(std::size_t i) const;

  template <typename U>
  Tensor<U> cast() const {
    std::vector<U> out(data_.begin(), data_.end());
    return Tensor<U>(shape_, std::move(out));
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  template <std::size_t N>
  std::size_t offset(const std::array<std::size_t, N>& idx) const noexcept {
    std::size_t off = 0;
    for (std::size_t a = 0; a < N; ++a) off = off * shape_[a] + idx[a];
    return off;
  }

  Shape shape_;
  std::vector<T> data_;
};

/// Stacks equally shaped tensors along a new leading axis.
template <typename T>
Tensor<T> stack(const std::vector<Tensor<T>>& parts);

extern template class Tensor<float>;
extern template class Tensor<double>;

}  // namespace gra

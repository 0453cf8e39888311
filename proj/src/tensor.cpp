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

#include "gra/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace gra {

std::string shape_to_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ',';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (shape[a] == 0) {
      throw ShapeError("shape " + shape_to_string(shape) + " has a zero extent on axis " +
                       std::to_string(a));
    }
    n *= shape[a];
  }
  return n;
}

template <typename T>
Tensor<T>::Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_numel(shape_), T{0}) {}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_numel(shape_) != data_.size()) {
    throw ShapeError("tensor shape " + shape_to_string(shape_) + " needs " +
                     std::to_string(shape_numel(shape_)) + " elements, got " +
                     std::to_string(data_.size()));
  }
}

template <typename T>
Tensor<T> Tensor<T>::full(Shape shape, T value) {
  std::vector<T> data(shape_numel(shape), value);
  return Tensor(std::move(shape), std::move(data));
}

template <typename T>
std::size_t Tensor<T>::dim(std::size_t axis) const {
  if (axis >= shape_.size()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range for shape " +
                     shape_to_string(shape_));
  }
  return shape_[axis];
}

template <typename T>
Tensor<T> Tensor<T>::reshape(Shape shape) const& {
  Tensor copy = *this;
  return std::move(copy).reshape(std::move(shape));
}

template <typename T>
Tensor<T> Tensor<T>::reshape(Shape shape) && {
  if (shape_numel(shape) != data_.size()) {
    throw ShapeError("reshape " + shape_to_string(shape_) + " -> " + shape_to_string(shape) +
                     " changes the element count");
  }
  return Tensor(std::move(shape), std::move(data_));
}

template <typename T>
Tensor<T> Tensor<T>::permute(const std::vector<std::size_t>& axes) const {
  const std::size_t r = rank();
  if (axes.size() != r) {
    throw ShapeError("permute of rank-" + std::to_string(r) + " tensor given " +
                     std::to_string(axes.size()) + " axes");
  }
  std::vector<bool> seen(r, false);
  for (std::size_t a : axes) {
    if (a >= r || seen[a]) throw ShapeError("permute axes are not a permutation");
    seen[a] = true;
  }

  Shape out_shape(r);
  std::vector<std::size_t> in_strides(r, 1);
  for (std::size_t a = r; a-- > 1;) in_strides[a - 1] = in_strides[a] * shape_[a];
  // Stride in the source for each output axis.
  std::vector<std::size_t> src_strides(r);
  for (std::size_t i = 0; i < r; ++i) {
    out_shape[i] = shape_[axes[i]];
    src_strides[i] = in_strides[axes[i]];
  }

  std::vector<T> out(data_.size());
  if (r == 0) {
    out = data_;
    return Tensor(std::move(out_shape), std::move(out));
  }
  // Innermost output axis is copied in a tight loop; the rest is an odometer.
  const std::size_t inner = out_shape[r - 1];
  const std::size_t inner_stride = src_strides[r - 1];
  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.size(); dst += inner) {
    const T* s = data_.data() + src;
    T* d = out.data() + dst;
    for (std::size_t i = 0; i < inner; ++i) d[i] = s[i * inner_stride];
    for (std::size_t a = r - 1; a-- > 0;) {
      ++idx[a];
      src += src_strides[a];
      if (idx[a] < out_shape[a]) break;
      src -= src_strides[a] * out_shape[a];
      idx[a] = 0;
    }
  }
  return Tensor(std::move(out_shape), std::move(out));
}

template <typename T>
Tensor<T> Tensor<T>::select(std::size_t i) const {
  if (rank() == 0) throw ShapeError("select on a scalar");
  if (i >= shape_[0]) {
    throw ShapeError("select index " + std::to_string(i) + " out of range for leading axis of " +
                     shape_to_string(shape_));
  }
  Shape sub(shape_.begin() + 1, shape_.end());
  const std::size_t n = data_.size() / shape_[0];
  std::vector<T> out(data_.begin() + static_cast<std::ptrdiff_t>(i * n),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return Tensor(std::move(sub), std::move(out));
}

template <typename T>
Tensor<T> stack(const std::vector<Tensor<T>>& parts) {
  if (parts.empty()) throw ShapeError("stack of zero tensors");
  const Shape& inner = parts.front().shape();
  std::vector<T> out;
  out.reserve(parts.size() * parts.front().numel());
  for (const auto& p : parts) {
    if (p.shape() != inner) {
      throw ShapeError("stack: shape " + shape_to_string(p.shape()) + " differs from " +
                       shape_to_string(inner));
    }
    out.insert(out.end(), p.data().begin(), p.data().end());
  }
  Shape shape{parts.size()};
  shape.insert(shape.end(), inner.begin(), inner.end());
  return Tensor<T>(std::move(shape), std::move(out));
}

template class Tensor<float>;
template class Tensor<double>;
template Tensor<float> stack(const std::vector<Tensor<float>>&);
template Tensor<double> stack(const std::vector<Tensor<double>>&);

}  // namespace gra

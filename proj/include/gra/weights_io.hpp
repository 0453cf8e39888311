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

// GRAW named-tensor container (.graw). All integers little-endian:
//
//   "GRAW"  u32 version(=1)  u32 tensor_count
//   per tensor:
//     u16 name_len, name bytes (UTF-8)
//     u8 dtype (0 = f32, 1 = f64), u8 ndim, ndim x u64 dims
//     row-major payload, IEEE-754 little-endian

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gra/tensor.hpp"

namespace gra {

using AnyTensor = std::variant<Tensor<float>, Tensor<double>>;

enum class FormatErrorKind {
  bad_magic,
  bad_version,
  truncated,
  overflow,
  duplicate_name,
  bad_dtype,
  bad_name,
  bad_shape,
  io,
};

const char* format_error_kind_name(FormatErrorKind kind);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  FormatErrorKind kind() const noexcept { return kind_; }

 private:
  FormatErrorKind kind_;
};

/// Insertion-ordered map from name to tensor.
class TensorContainer {
 public:
  using Entry = std::pair<std::string, AnyTensor>;

  /// Throws FormatError (bad_name / duplicate_name) on invalid names.
  void insert(std::string name, AnyTensor tensor);

  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const AnyTensor* find(const std::string& name) const;

  /// Typed access; throws std::out_of_range when missing and
  /// std::invalid_argument when stored with the other dtype.
  template <typename T>
  const Tensor<T>& get(const std::string& name) const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

/// Same names, order, dtypes, shapes and payload bytes.
bool bitwise_equal(const TensorContainer& a, const TensorContainer& b);

std::size_t write_container(const TensorContainer& c, std::ostream& sink);
TensorContainer read_container(std::istream& source);

std::string to_bytes(const TensorContainer& c);
TensorContainer from_bytes(const std::string& bytes);

void save_container(const TensorContainer& c, const std::filesystem::path& path);
TensorContainer load_container(const std::filesystem::path& path);

}  // namespace gra

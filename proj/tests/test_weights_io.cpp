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

#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "gra/weights_io.hpp"
#include "oracles.hpp"

namespace gra {
namespace {

std::string le32(std::uint32_t v) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  return s;
}

std::string le64(std::uint64_t v) {
  std::string s(8, '\0');
  for (int i = 0; i < 8; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  return s;
}

std::string header(std::uint32_t count) { return "GRAW" + le32(1) + le32(count); }

/// Record header up to the payload, which the caller appends.
std::string record_head(const std::string& name, std::uint8_t dtype, const std::vector<std::uint64_t>& dims) {
  std::string s;
  s += static_cast<char>(name.size() & 0xff);
  s += static_cast<char>(name.size() >> 8);
  s += name;
  s += static_cast<char>(dtype);
  s += static_cast<char>(dims.size());
  for (auto d : dims) s += le64(d);
  return s;
}

FormatErrorKind kind_of(const std::string& bytes) {
  try {
    from_bytes(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return FormatErrorKind::io;
}

TEST(Graw, EmptyContainerIsHeaderOnly) {
  const std::string bytes = to_bytes(TensorContainer{});
  EXPECT_EQ(bytes, header(0));
  EXPECT_EQ(bytes.size(), 12u);
  EXPECT_TRUE(from_bytes(bytes).empty());
}

TEST(Graw, ScalarLayoutByHand) {
  TensorContainer c;
  c.insert("a", Tensor<float>({}, {1.0f}));
  const std::string expect = header(1) + record_head("a", 0, {}) + std::string("\x00\x00\x80\x3f", 4);
  EXPECT_EQ(to_bytes(c), expect);
  std::ostringstream sink;
  EXPECT_EQ(write_container(c, sink), expect.size());
}

TEST(Graw, DoubleShapeLayoutByHand) {
  TensorContainer c;
  c.insert("w", Tensor<double>({2, 1}, {1.0, -2.0}));
  const std::string expect = header(1) + record_head("w", 1, {2, 1}) + le64(0x3ff0000000000000ull) +
                             le64(0xc000000000000000ull);
  EXPECT_EQ(to_bytes(c), expect);
}

TensorContainer random_container(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 5), rank(0, 4), extent(1, 4), coin(0, 1);
  std::uniform_int_distribution<std::uint64_t> bits;
  TensorContainer c;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Shape shape(static_cast<std::size_t>(rank(rng)));
    for (auto& d : shape) d = static_cast<std::size_t>(extent(rng));
    const std::string name = "t" + std::to_string(i) + std::string(static_cast<std::size_t>(extent(rng)), 'x');
    if (coin(rng)) {
      // Arbitrary bit patterns, NaN payloads and signed zeros included.
      Tensor<double> t(shape);
      for (auto& v : t.data()) {
        const std::uint64_t b = bits(rng);
        std::memcpy(&v, &b, sizeof v);
      }
      c.insert(name, std::move(t));
    } else {
      Tensor<float> t(shape);
      for (auto& v : t.data()) {
        const auto b = static_cast<std::uint32_t>(bits(rng));
        std::memcpy(&v, &b, sizeof v);
      }
      c.insert(name, std::move(t));
    }
  }
  return c;
}

TEST(Graw, RandomRoundTripIsBitwise) {
  std::mt19937_64 rng(90);
  std::map<std::string, TensorContainer> seen;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_container(rng);
    const std::string bytes = to_bytes(c);
    const auto back = from_bytes(bytes);
    ASSERT_TRUE(bitwise_equal(c, back)) << "trial " << trial;
    EXPECT_EQ(to_bytes(back), bytes);
    // Equal bytes only for equal containers.
    const auto [it, fresh] = seen.emplace(bytes, c);
    if (!fresh) {
      EXPECT_TRUE(bitwise_equal(it->second, c)) << "trial " << trial;
    }
  }
}

TEST(Graw, BitwiseEqualSeesSignOfZeroAndOrder) {
  TensorContainer a, b, c;
  a.insert("x", Tensor<float>({1}, {0.0f}));
  b.insert("x", Tensor<float>({1}, {-0.0f}));
  EXPECT_FALSE(bitwise_equal(a, b));
  a.insert("y", Tensor<double>({1}));
  c.insert("y", Tensor<double>({1}));
  c.insert("x", Tensor<float>({1}, {0.0f}));
  EXPECT_FALSE(bitwise_equal(a, c));
}

TEST(Graw, BadMagic) {
  std::string bytes = to_bytes(TensorContainer{});
  bytes[0] = 'X';
  EXPECT_EQ(kind_of(bytes), FormatErrorKind::bad_magic);
}

TEST(Graw, BadVersion) { EXPECT_EQ(kind_of("GRAW" + le32(2) + le32(0)), FormatErrorKind::bad_version); }

TEST(Graw, Truncated) {
  TensorContainer c;
  c.insert("a", Tensor<double>({3, 2}));
  const std::string bytes = to_bytes(c);
  for (std::size_t cut : {std::size_t{2}, std::size_t{10}, std::size_t{13}, bytes.size() - 1}) {
    EXPECT_EQ(kind_of(bytes.substr(0, cut)), FormatErrorKind::truncated) << "cut at " << cut;
  }
  EXPECT_EQ(kind_of(header(2) + record_head("a", 0, {1}) + le32(0)), FormatErrorKind::truncated);
}

TEST(Graw, HugeDeclaredPayloadIsTruncatedNotAllocated) {
  EXPECT_EQ(kind_of(header(1) + record_head("big", 1, {1ull << 30, 1ull << 10}) + le64(0)), FormatErrorKind::truncated);
}

TEST(Graw, Overflow) {
  const auto huge = std::numeric_limits<std::uint64_t>::max();
  EXPECT_EQ(kind_of(header(1) + record_head("a", 0, {huge, 2})), FormatErrorKind::overflow);
  EXPECT_EQ(kind_of(header(1) + record_head("a", 1, {1ull << 32, 1ull << 32})), FormatErrorKind::overflow);
}

TEST(Graw, DuplicateName) {
  const std::string rec = record_head("a", 0, {1}) + le32(0);
  EXPECT_EQ(kind_of(header(2) + rec + rec), FormatErrorKind::duplicate_name);
  TensorContainer c;
  c.insert("a", Tensor<float>({1}));
  EXPECT_THROW(c.insert("a", Tensor<float>({1})), FormatError);
}

TEST(Graw, DiagnosticsAreDistinct) {
  std::set<std::string> names;
  for (auto k : {FormatErrorKind::bad_magic, FormatErrorKind::bad_version, FormatErrorKind::truncated,
                 FormatErrorKind::overflow, FormatErrorKind::duplicate_name}) {
    names.insert(format_error_kind_name(k));
  }
  EXPECT_EQ(names.size(), 5u);
}

TEST(Graw, OtherMalformations) {
  EXPECT_EQ(kind_of(header(1) + record_head("a", 7, {1}) + le32(0)), FormatErrorKind::bad_dtype);
  EXPECT_EQ(kind_of(header(1) + record_head("", 0, {1}) + le32(0)), FormatErrorKind::bad_name);
  EXPECT_EQ(kind_of(header(1) + record_head("a", 0, {2, 0})), FormatErrorKind::bad_shape);
}

TEST(Graw, OversizedNameRejectedOnInsert) {
  TensorContainer c;
  try {
    c.insert(std::string(70000, 'n'), Tensor<float>({1}));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), FormatErrorKind::bad_name);
  }
  EXPECT_NO_THROW(c.insert(std::string(65535, 'n'), Tensor<float>({1})));
}

TEST(Graw, TypedAccess) {
  TensorContainer c;
  c.insert("f", Tensor<float>({2}));
  EXPECT_EQ(c.get<float>("f").shape(), (Shape{2}));
  EXPECT_THROW(c.get<double>("f"), std::invalid_argument);
  EXPECT_THROW(c.get<float>("g"), std::out_of_range);
}

TEST(Graw, FileRoundTripAndUnwritableSink) {
  std::mt19937_64 rng(91);
  TensorContainer c;
  c.insert("w", oracle::random_tensor({3, 3}, rng));
  const auto path = std::filesystem::temp_directory_path() / "graw_test_roundtrip.graw";
  save_container(c, path);
  EXPECT_TRUE(bitwise_equal(load_container(path), c));
  std::filesystem::remove(path);

  try {
    save_container(c, "/nonexistent-dir/x.graw");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), FormatErrorKind::io);
  }
  std::ostringstream bad;
  bad.setstate(std::ios::badbit);
  EXPECT_THROW(write_container(c, bad), FormatError);
  EXPECT_THROW(load_container("/nonexistent-dir/x.graw"), FormatError);
}

}  // namespace
}  // namespace gra

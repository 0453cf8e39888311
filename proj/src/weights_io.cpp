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

#include "gra/weights_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gra {

namespace {

constexpr char kMagic[4] = {'G', 'R', 'A', 'W'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kMaxName = 65535;
constexpr std::size_t kChunk = std::size_t{1} << 20;

template <typename U>
void put_le(std::string& buf, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

template <typename U>
U get_le(const unsigned char* p) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(p[i]) << (8 * i);
  return v;
}

template <typename T>
void put_payload(std::string& buf, const Tensor<T>& t) {
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  for (T v : t.data()) put_le(buf, std::bit_cast<Bits>(v));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads exactly n bytes or throws truncation naming `what`.
  void read(void* dst, std::size_t n, const std::string& what) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(FormatErrorKind::truncated, "graw: truncated stream while reading " + what);
    }
  }

  template <typename U>
  U scalar(const std::string& what) {
    unsigned char b[sizeof(U)];
    read(b, sizeof(U), what);
    return get_le<U>(b);
  }

 private:
  std::istream& in_;
};

template <typename T>
Tensor<T> read_payload(Reader& r, Shape shape, std::size_t count, const std::string& name) {
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::vector<T> data;
  // Grow chunk by chunk so a lying header cannot force a huge allocation
  // before the truncation is noticed.
  std::vector<unsigned char> raw;
  std::size_t done = 0;
  while (done < count) {
    const std::size_t n = std::min(count - done, kChunk / sizeof(T));
    raw.resize(n * sizeof(T));
    r.read(raw.data(), raw.size(), "payload of tensor '" + name + "'");
    data.reserve(done + n);
    for (std::size_t i = 0; i < n; ++i) data.push_back(std::bit_cast<T>(get_le<Bits>(raw.data() + i * sizeof(T))));
    done += n;
  }
  return Tensor<T>(std::move(shape), std::move(data));
}

void check_name(const std::string& name) {
  if (name.empty()) throw FormatError(FormatErrorKind::bad_name, "graw: tensor name is empty");
  if (name.size() > kMaxName) {
    throw FormatError(FormatErrorKind::bad_name,
                      "graw: tensor name of " + std::to_string(name.size()) + " bytes exceeds 65535");
  }
}

}  // namespace

const char* format_error_kind_name(FormatErrorKind kind) {
  switch (kind) {
    case FormatErrorKind::bad_magic: return "bad magic";
    case FormatErrorKind::bad_version: return "unsupported version";
    case FormatErrorKind::truncated: return "truncated";
    case FormatErrorKind::overflow: return "size overflow";
    case FormatErrorKind::duplicate_name: return "duplicate name";
    case FormatErrorKind::bad_dtype: return "unknown dtype";
    case FormatErrorKind::bad_name: return "invalid name";
    case FormatErrorKind::bad_shape: return "invalid shape";
    case FormatErrorKind::io: return "i/o error";
  }
  return "?";
}

void TensorContainer::insert(std::string name, AnyTensor tensor) {
  check_name(name);
  if (contains(name)) throw FormatError(FormatErrorKind::duplicate_name, "graw: duplicate tensor name '" + name + "'");
  entries_.emplace_back(std::move(name), std::move(tensor));
}

const AnyTensor* TensorContainer::find(const std::string& name) const {
  for (const auto& [n, t] : entries_) {
    if (n == name) return &t;
  }
  return nullptr;
}

template <typename T>
const Tensor<T>& TensorContainer::get(const std::string& name) const {
  const AnyTensor* t = find(name);
  if (!t) throw std::out_of_range("container has no tensor named '" + name + "'");
  const auto* typed = std::get_if<Tensor<T>>(t);
  if (!typed) {
    throw std::invalid_argument("tensor '" + name + "' is stored as " + (sizeof(T) == 4 ? "f64" : "f32") +
                                ", expected " + (sizeof(T) == 4 ? "f32" : "f64"));
  }
  return *typed;
}

template const Tensor<float>& TensorContainer::get<float>(const std::string&) const;
template const Tensor<double>& TensorContainer::get<double>(const std::string&) const;

bool bitwise_equal(const TensorContainer& a, const TensorContainer& b) {
  return to_bytes(a) == to_bytes(b);
}

std::string to_bytes(const TensorContainer& c) {
  std::string buf(kMagic, 4);
  put_le<std::uint32_t>(buf, kVersion);
  if (c.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError(FormatErrorKind::overflow, "graw: too many tensors");
  }
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(c.size()));
  for (const auto& [name, any] : c.entries()) {
    check_name(name);
    put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(name.size()));
    buf += name;
    std::visit(
        [&](const auto& t) {
          using T = typename std::decay_t<decltype(t)>::value_type;
          buf.push_back(static_cast<char>(std::is_same_v<T, float> ? 0 : 1));
          if (t.rank() > 255) throw FormatError(FormatErrorKind::overflow, "graw: tensor '" + name + "' has rank > 255");
          buf.push_back(static_cast<char>(t.rank()));
          for (std::size_t d : t.shape()) put_le<std::uint64_t>(buf, d);
          put_payload(buf, t);
        },
        any);
  }
  return buf;
}

std::size_t write_container(const TensorContainer& c, std::ostream& sink) {
  const std::string buf = to_bytes(c);
  sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  sink.flush();
  if (!sink) throw FormatError(FormatErrorKind::io, "graw: write to sink failed");
  return buf.size();
}

TensorContainer read_container(std::istream& source) {
  Reader r(source);
  char magic[4];
  r.read(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError(FormatErrorKind::bad_magic, "graw: bad magic '" + std::string(magic, 4) + "', expected 'GRAW'");
  }
  const auto version = r.scalar<std::uint32_t>("version");
  if (version != kVersion) {
    throw FormatError(FormatErrorKind::bad_version, "graw: unsupported version " + std::to_string(version));
  }
  const auto count = r.scalar<std::uint32_t>("tensor count");

  TensorContainer c;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string where = "tensor #" + std::to_string(i);
    const auto name_len = r.scalar<std::uint16_t>("name length of " + where);
    std::string name(name_len, '\0');
    r.read(name.data(), name_len, "name of " + where);
    if (name.empty()) throw FormatError(FormatErrorKind::bad_name, "graw: " + where + " has an empty name");
    if (c.contains(name)) throw FormatError(FormatErrorKind::duplicate_name, "graw: duplicate tensor name '" + name + "'");

    const auto dtype = r.scalar<std::uint8_t>("dtype of '" + name + "'");
    if (dtype > 1) {
      throw FormatError(FormatErrorKind::bad_dtype, "graw: tensor '" + name + "' has unknown dtype " + std::to_string(dtype));
    }
    const std::size_t elem = dtype == 0 ? 4 : 8;
    const auto ndim = r.scalar<std::uint8_t>("rank of '" + name + "'");
    Shape shape(ndim);
    std::size_t numel = 1;
    bool overflow = false;
    for (auto& d : shape) {
      const auto v = r.scalar<std::uint64_t>("dims of '" + name + "'");
      if (v > std::numeric_limits<std::size_t>::max()) overflow = true;
      d = static_cast<std::size_t>(v);
      if (d != 0 && numel > std::numeric_limits<std::size_t>::max() / d) overflow = true;
      if (!overflow) numel *= d;
    }
    if (overflow || numel > static_cast<std::size_t>(std::numeric_limits<std::ptrdiff_t>::max()) / elem) {
      throw FormatError(FormatErrorKind::overflow,
                        "graw: dims of tensor '" + name + "' overflow the addressable size");
    }
    if (numel == 0) throw FormatError(FormatErrorKind::bad_shape, "graw: tensor '" + name + "' has a zero extent");

    if (dtype == 0) {
      c.insert(name, read_payload<float>(r, std::move(shape), numel, name));
    } else {
      c.insert(name, read_payload<double>(r, std::move(shape), numel, name));
    }
  }
  return c;
}

TensorContainer from_bytes(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_container(in);
}

void save_container(const TensorContainer& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatErrorKind::io, "graw: cannot open '" + path.string() + "' for writing");
  write_container(c, out);
}

TensorContainer load_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorKind::io, "graw: cannot open '" + path.string() + "'");
  return read_container(in);
}

}  // namespace gra

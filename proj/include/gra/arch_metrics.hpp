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

// Symbolic parameter and FLOP accounting for ResNet-50 backbones (no
// classifier head) and their rotated-convolution variants. Nothing here
// allocates weights.
//
// Counting rules:
//   conv             Cout*(Cin/groups)*k^2 params (+Cout with bias)
//                    2*H'*W'*Cout*(Cin/groups)*k^2 FLOPs, times `copies`
//   batchnorm, LN    2*C params, 2 FLOPs per element
//   activation       2 FLOPs per element
//   linear           n_out*(n_in+1) params, 2*n_in*n_out FLOPs
//   pool             one FLOP per window tap per output element
//   kernel_rotation  no params; one bmm per site at batch 1:
//                    2*n*k^2*k^2*(Cout/n)*Cin FLOPs, times `copies`
//   attention_conv   2*ka^2+1 params; pooling, conv, sigmoid and gating
//                    FLOPs at the executing resolution
// One multiply-accumulate is two FLOPs.

#include <cstdint>
#include <string>
#include <vector>

namespace gra {

enum class LayerKind {
  conv,
  depthwise_conv,
  linear,
  layernorm,
  batchnorm,
  activation,
  pool,
  kernel_rotation,
  attention_conv,
};

const char* layer_kind_name(LayerKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::conv;
  std::string stage;  // "stem", "conv2_x" ... "conv5_x"
  std::string name;
  std::int64_t in_channels = 0;
  std::int64_t out_channels = 0;
  std::int64_t kernel = 1;
  std::int64_t stride = 1;
  std::int64_t groups = 1;  // conv channel groups, or rotation/attention group count n
  bool bias = false;
  std::int64_t in_hw = 1;   // spatial extent the layer reads
  std::int64_t out_hw = 1;  // spatial extent the layer writes
  std::int64_t copies = 1;  // kernel copies per site (rotated baseline)
};

struct Variant {
  enum class Kind { plain, arc, gra };
  Kind kind = Kind::plain;
  int count = 0;  // m for arc, n for gra

  static Variant plain() { return {Kind::plain, 0}; }
  static Variant arc(int m) { return {Kind::arc, m}; }
  static Variant gra(int n) { return {Kind::gra, n}; }

  std::string to_string() const;
};

struct ArchSpec {
  std::vector<LayerSpec> layers;
  Variant variant;
  int input_hw = 224;
};

/// The 3x3 convolutions of conv3_x..conv5_x are the replacement sites.
inline constexpr int kReplacementSites = 13;

ArchSpec build_resnet50(Variant variant, int input_hw = 1024);

std::int64_t layer_params(const LayerSpec& layer);
std::int64_t layer_flops(const LayerSpec& layer);

std::int64_t count_params(const ArchSpec& spec);
std::int64_t count_flops(const ArchSpec& spec);
/// FLOPs of the same variant rebuilt at another input resolution.
std::int64_t count_flops(const ArchSpec& spec, int input_hw);

/// Number of layers that are rotation sites (3x3 convs carrying a rotation).
int count_rotation_sites(const ArchSpec& spec);

/// Text report: one line per stage, then totals as key=value lines ending
/// with params_M=... and flops_G=....
std::string metrics_report(const ArchSpec& spec);

}  // namespace gra

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

#include "gra/arch_metrics.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "gra/ops.hpp"

namespace gra {

const char* layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::conv: return "conv";
    case LayerKind::depthwise_conv: return "depthwise_conv";
    case LayerKind::linear: return "linear";
    case LayerKind::layernorm: return "layernorm";
    case LayerKind::batchnorm: return "batchnorm";
    case LayerKind::activation: return "activation";
    case LayerKind::pool: return "pool";
    case LayerKind::kernel_rotation: return "kernel_rotation";
    case LayerKind::attention_conv: return "attention_conv";
  }
  return "?";
}

std::string Variant::to_string() const {
  switch (kind) {
    case Kind::plain: return "plain";
    case Kind::arc: return "arc(m=" + std::to_string(count) + ")";
    case Kind::gra: return "gra(n=" + std::to_string(count) + ")";
  }
  return "?";
}

namespace {

// Builds the layer list while tracking the current spatial extent.
class Builder {
 public:
  explicit Builder(ArchSpec& spec) : spec_(spec) {}

  std::int64_t conv(const std::string& stage, const std::string& name, std::int64_t cin, std::int64_t cout,
                    std::int64_t k, std::int64_t stride, std::int64_t hw, std::int64_t copies = 1) {
    const auto out = static_cast<std::int64_t>(
        conv_out_extent(static_cast<std::size_t>(hw), static_cast<std::size_t>(k), static_cast<int>(stride),
                        static_cast<int>(k / 2)));
    LayerSpec l;
    l.kind = LayerKind::conv;
    l.stage = stage;
    l.name = name;
    l.in_channels = cin;
    l.out_channels = cout;
    l.kernel = k;
    l.stride = stride;
    l.in_hw = hw;
    l.out_hw = out;
    l.copies = copies;
    spec_.layers.push_back(l);
    return out;
  }

  void elementwise(LayerKind kind, const std::string& stage, const std::string& name, std::int64_t c,
                   std::int64_t hw) {
    LayerSpec l;
    l.kind = kind;
    l.stage = stage;
    l.name = name;
    l.in_channels = c;
    l.out_channels = c;
    l.in_hw = hw;
    l.out_hw = hw;
    spec_.layers.push_back(l);
  }

  void pool(const std::string& stage, const std::string& name, std::int64_t c, std::int64_t window,
            std::int64_t in_hw, std::int64_t out_hw) {
    LayerSpec l;
    l.kind = LayerKind::pool;
    l.stage = stage;
    l.name = name;
    l.in_channels = c;
    l.out_channels = c;
    l.kernel = window;
    l.in_hw = in_hw;
    l.out_hw = out_hw;
    spec_.layers.push_back(l);
  }

  void linear(const std::string& stage, const std::string& name, std::int64_t in, std::int64_t out) {
    LayerSpec l;
    l.kind = LayerKind::linear;
    l.stage = stage;
    l.name = name;
    l.in_channels = in;
    l.out_channels = out;
    l.bias = true;
    spec_.layers.push_back(l);
  }

  // depthwise 3x3 -> ReLU -> LN -> global pool -> two heads of `outputs`.
  void routing_net(const std::string& stage, const std::string& name, std::int64_t cin, std::int64_t hw,
                   std::int64_t outputs) {
    LayerSpec dw;
    dw.kind = LayerKind::depthwise_conv;
    dw.stage = stage;
    dw.name = name + ".dw";
    dw.in_channels = cin;
    dw.out_channels = cin;
    dw.kernel = 3;
    dw.groups = cin;
    dw.bias = true;
    dw.in_hw = hw;
    dw.out_hw = hw;
    spec_.layers.push_back(dw);
    elementwise(LayerKind::activation, stage, name + ".relu", cin, hw);
    elementwise(LayerKind::layernorm, stage, name + ".ln", cin, hw);
    pool(stage, name + ".gap", cin, hw, hw, 1);
    linear(stage, name + ".theta", cin, outputs);
    linear(stage, name + ".lambda", cin, outputs);
  }

  void rotation(const std::string& stage, const std::string& name, std::int64_t cin, std::int64_t cout,
                std::int64_t k, std::int64_t groups, std::int64_t copies) {
    LayerSpec l;
    l.kind = LayerKind::kernel_rotation;
    l.stage = stage;
    l.name = name;
    l.in_channels = cin;
    l.out_channels = cout;
    l.kernel = k;
    l.groups = groups;
    l.copies = copies;
    spec_.layers.push_back(l);
  }

  void attention(const std::string& stage, const std::string& name, std::int64_t cout, std::int64_t groups,
                 std::int64_t hw) {
    LayerSpec l;
    l.kind = LayerKind::attention_conv;
    l.stage = stage;
    l.name = name;
    l.in_channels = cout;
    l.out_channels = cout;
    l.kernel = 7;
    l.groups = groups;
    l.bias = true;
    l.in_hw = hw;
    l.out_hw = hw;
    spec_.layers.push_back(l);
  }

 private:
  ArchSpec& spec_;
};

}  // namespace

ArchSpec build_resnet50(Variant variant, int input_hw) {
  if (variant.kind != Variant::Kind::plain && variant.count < 1) {
    throw ValueError("build_resnet50: " + variant.to_string() + " needs a positive count");
  }
  if (input_hw < 32) throw ValueError("build_resnet50: input resolution must be at least 32, got " + std::to_string(input_hw));

  ArchSpec spec;
  spec.variant = variant;
  spec.input_hw = input_hw;
  Builder b(spec);

  std::int64_t hw = b.conv("stem", "conv1", 3, 64, 7, 2, input_hw);
  b.elementwise(LayerKind::batchnorm, "stem", "bn1", 64, hw);
  b.elementwise(LayerKind::activation, "stem", "relu", 64, hw);
  const std::int64_t pooled = static_cast<std::int64_t>(conv_out_extent(static_cast<std::size_t>(hw), 3, 2, 1));
  b.pool("stem", "maxpool", 64, 3, hw, pooled);
  hw = pooled;

  struct Stage {
    const char* name;
    int blocks;
    std::int64_t mid;
    std::int64_t out;
  };
  constexpr std::array<Stage, 4> stages{{{"conv2_x", 3, 64, 256},
                                         {"conv3_x", 4, 128, 512},
                                         {"conv4_x", 6, 256, 1024},
                                         {"conv5_x", 3, 512, 2048}}};

  std::int64_t cin = 64;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const Stage& st = stages[s];
    const bool replaced = s > 0 && variant.kind != Variant::Kind::plain;
    for (int blk = 0; blk < st.blocks; ++blk) {
      const std::string p = std::string(st.name) + "." + std::to_string(blk);
      const std::int64_t stride = (blk == 0 && s > 0) ? 2 : 1;

      b.conv(st.name, p + ".conv1", cin, st.mid, 1, 1, hw);
      b.elementwise(LayerKind::batchnorm, st.name, p + ".bn1", st.mid, hw);
      b.elementwise(LayerKind::activation, st.name, p + ".relu1", st.mid, hw);

      // 3x3 conv, stride on the 3x3 (torchvision layout).
      std::int64_t copies = 1;
      if (replaced) {
        const bool arc = variant.kind == Variant::Kind::arc;
        copies = arc ? variant.count : 1;
        b.routing_net(st.name, p + (arc ? ".routing" : ".angle_gen"), st.mid, hw, variant.count);
        b.rotation(st.name, p + ".rotate", st.mid, st.mid, 3, arc ? 1 : variant.count, copies);
      }
      const std::int64_t out_hw = b.conv(st.name, p + ".conv2", st.mid, st.mid, 3, stride, hw, copies);
      if (replaced && variant.kind == Variant::Kind::arc) {
        b.elementwise(LayerKind::activation, st.name, p + ".branch_mix", st.mid * copies, out_hw);
      }
      if (replaced && variant.kind == Variant::Kind::gra) {
        b.attention(st.name, p + ".attention", st.mid, variant.count, out_hw);
      }
      b.elementwise(LayerKind::batchnorm, st.name, p + ".bn2", st.mid, out_hw);
      b.elementwise(LayerKind::activation, st.name, p + ".relu2", st.mid, out_hw);

      b.conv(st.name, p + ".conv3", st.mid, st.out, 1, 1, out_hw);
      b.elementwise(LayerKind::batchnorm, st.name, p + ".bn3", st.out, out_hw);
      if (blk == 0) {
        b.conv(st.name, p + ".downsample", cin, st.out, 1, stride, hw);
        b.elementwise(LayerKind::batchnorm, st.name, p + ".downsample_bn", st.out, out_hw);
      }
      b.elementwise(LayerKind::activation, st.name, p + ".relu3", st.out, out_hw);
      cin = st.out;
      hw = out_hw;
    }
  }
  return spec;
}

std::int64_t layer_params(const LayerSpec& l) {
  switch (l.kind) {
    case LayerKind::conv:
    case LayerKind::depthwise_conv:
      return l.copies * (l.out_channels * (l.in_channels / l.groups) * l.kernel * l.kernel + (l.bias ? l.out_channels : 0));
    case LayerKind::linear:
      return l.out_channels * (l.in_channels + 1);
    case LayerKind::layernorm:
    case LayerKind::batchnorm:
      return 2 * l.out_channels;
    case LayerKind::attention_conv:
      return 2 * l.kernel * l.kernel + 1;
    case LayerKind::activation:
    case LayerKind::pool:
    case LayerKind::kernel_rotation:
      return 0;
  }
  return 0;
}

std::int64_t layer_flops(const LayerSpec& l) {
  const std::int64_t out_px = l.out_hw * l.out_hw;
  switch (l.kind) {
    case LayerKind::conv:
    case LayerKind::depthwise_conv:
      return l.copies * 2 * out_px * l.out_channels * (l.in_channels / l.groups) * l.kernel * l.kernel;
    case LayerKind::linear:
      return 2 * l.in_channels * l.out_channels;
    case LayerKind::layernorm:
    case LayerKind::batchnorm:
    case LayerKind::activation:
      return 2 * l.out_channels * out_px;
    case LayerKind::pool:
      return l.kernel * l.kernel * l.out_channels * out_px;
    case LayerKind::kernel_rotation: {
      const std::int64_t kk = l.kernel * l.kernel;
      return l.copies * 2 * l.groups * kk * kk * (l.out_channels / l.groups) * l.in_channels;
    }
    case LayerKind::attention_conv: {
      const std::int64_t pooling = 2 * l.in_channels * out_px;
      const std::int64_t conv = l.groups * 2 * (2 * l.kernel * l.kernel) * out_px;
      const std::int64_t sigmoid = l.groups * 2 * out_px;
      const std::int64_t gating = l.out_channels * out_px;
      return pooling + conv + sigmoid + gating;
    }
  }
  return 0;
}

std::int64_t count_params(const ArchSpec& spec) {
  std::int64_t total = 0;
  for (const auto& l : spec.layers) total += layer_params(l);
  return total;
}

std::int64_t count_flops(const ArchSpec& spec) {
  std::int64_t total = 0;
  for (const auto& l : spec.layers) total += layer_flops(l);
  return total;
}

std::int64_t count_flops(const ArchSpec& spec, int input_hw) {
  return count_flops(build_resnet50(spec.variant, input_hw));
}

int count_rotation_sites(const ArchSpec& spec) {
  int sites = 0;
  for (const auto& l : spec.layers) sites += l.kind == LayerKind::kernel_rotation ? 1 : 0;
  return sites;
}

std::string metrics_report(const ArchSpec& spec) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> per_stage;
  for (const auto& l : spec.layers) {
    if (!per_stage.count(l.stage)) order.push_back(l.stage);
    auto& acc = per_stage[l.stage];
    acc.first += layer_params(l);
    acc.second += layer_flops(l);
  }

  std::ostringstream os;
  char line[160];
  os << "variant=" << spec.variant.to_string() << " input=" << spec.input_hw << "x" << spec.input_hw
     << " rotation_sites=" << count_rotation_sites(spec) << "\n";
  os << "note=flops count 2 per multiply-accumulate; normalization and activation at 2 per element\n";
  for (const auto& stage : order) {
    const auto& [params, flops] = per_stage[stage];
    std::snprintf(line, sizeof line, "stage=%s params=%lld flops=%lld\n", stage.c_str(), static_cast<long long>(params),
                  static_cast<long long>(flops));
    os << line;
  }
  const std::int64_t params = count_params(spec), flops = count_flops(spec);
  os << "params=" << params << "\n";
  os << "flops=" << flops << "\n";
  std::snprintf(line, sizeof line, "params_M=%.2f\nflops_G=%.1f\n", static_cast<double>(params) / 1e6,
                static_cast<double>(flops) / 1e9);
  os << line;
  return os.str();
}

}  // namespace gra

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

#include "gra/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "gra/arch_metrics.hpp"
#include "gra/param_io.hpp"
#include "gra/pipeline.hpp"
#include "gra/rotation.hpp"
#include "gra/weights_io.hpp"

namespace gra::cli {

std::string format_matrix(const Tensor<double>& m) {
  std::ostringstream os;
  char cell[32];
  for (std::size_t r = 0; r < m.dim(0); ++r) {
    for (std::size_t c = 0; c < m.dim(1); ++c) {
      std::snprintf(cell, sizeof cell, "%s%16.9g", c ? " " : "", m(r, c));
      os << cell;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

struct ForwardArgs {
  std::string mode;
  std::string params;
  std::string input;
  std::string out;
  int groups = 0;
};

template <typename T>
TensorContainer forward_typed(const ForwardArgs& a, const TensorContainer& params, const Tensor<T>& x) {
  ForwardResult<T> r;
  const auto n = static_cast<std::size_t>(a.groups);
  if (a.mode == "gra") {
    r = gra_forward_ex(x, gra_params_from<T>(params, n));
  } else {
    r = arc_forward_ex(x, arc_params_from<T>(params, n));
  }
  TensorContainer out;
  out.insert("output", std::move(r.output));
  out.insert("thetas", std::move(r.angles.thetas));
  out.insert("lambdas", std::move(r.angles.lambdas));
  return out;
}

void run_forward(const ForwardArgs& a, std::ostream& out) {
  if (a.groups < 1) throw ValueError("forward: --groups must be positive");
  const TensorContainer params = load_container(a.params);
  const TensorContainer input = load_container(a.input);
  const AnyTensor* x = input.find("input");
  if (!x) throw std::out_of_range("forward: input file has no tensor named 'input'");

  const TensorContainer result = std::holds_alternative<Tensor<float>>(*x)
                                     ? forward_typed(a, params, std::get<Tensor<float>>(*x))
                                     : forward_typed(a, params, std::get<Tensor<double>>(*x));
  save_container(result, a.out);
  const auto& shape = std::visit([](const auto& t) -> const Shape& { return t.shape(); }, *result.find("output"));
  out << "forward mode=" << a.mode << " output=" << shape_to_string(shape) << " file=" << a.out << "\n";
}

std::vector<double> parse_angle_list(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ValueError("demo: cannot parse angle '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValueError("demo: --thetas is empty");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group-wise rotating convolution toolkit", "gra"};
  app.require_subcommand(1);

  double theta = 0;
  int k = 3;
  bool deriv = false;
  auto* rotmat = app.add_subcommand("rotmat", "Print the bilinear kernel rotation operator");
  rotmat->add_option("--theta", theta, "Angle in radians")->required();
  rotmat->add_option("--k", k, "Odd kernel extent")->capture_default_str();
  rotmat->add_flag("--deriv", deriv, "Print the derivative with respect to the angle");

  ForwardArgs fwd;
  auto* forward = app.add_subcommand("forward", "Run a GRA or ARC forward pass on .graw files");
  forward->add_option("--mode", fwd.mode, "gra or arc")->required()->check(CLI::IsMember({"gra", "arc"}));
  forward->add_option("--params", fwd.params, "Parameter container")->required();
  forward->add_option("--input", fwd.input, "Input container with tensor 'input'")->required();
  forward->add_option("--groups", fwd.groups, "Group count n (gra) or kernel copies m (arc)")->required();
  forward->add_option("--out", fwd.out, "Output container")->required();

  BenchConfig bc;
  int cin_bench = bc.in_channels, cout_bench = bc.out_channels;
  auto* bench = app.add_subcommand("bench", "Time naive vs batched rotation against the convolution");
  bench->add_option("--batch", bc.batch)->capture_default_str();
  bench->add_option("--cin", cin_bench)->capture_default_str();
  bench->add_option("--cout", cout_bench)->capture_default_str();
  bench->add_option("--hw", bc.hw)->capture_default_str();
  bench->add_option("--groups", bc.groups)->capture_default_str();
  bench->add_option("--k", bc.kernel)->capture_default_str();
  bench->add_option("--iters", bc.iters)->capture_default_str();
  bench->add_option("--seed", bc.seed)->capture_default_str();

  std::string variant = "plain";
  int m = 0, groups = 0, hw = 1024;
  auto* params = app.add_subcommand("params", "Parameter and FLOP report for ResNet-50 variants");
  params->add_option("--variant", variant)->required()->check(CLI::IsMember({"plain", "arc", "gra"}));
  params->add_option("--m", m, "Kernel copies for arc");
  params->add_option("--groups", groups, "Group count for gra");
  params->add_option("--hw", hw, "Input resolution")->capture_default_str();

  DemoConfig dc;
  std::string thetas = "0,0.39269908169872414,0.7853981633974483,1.1780972450961724";
  auto* demo = app.add_subcommand("demo", "Orientation response of a rotated edge kernel on stripe images");
  demo->add_option("--k", dc.kernel)->capture_default_str();
  demo->add_option("--thetas", thetas, "Comma separated angles in radians")->capture_default_str();
  demo->add_option("--seed", dc.seed)->capture_default_str();

  std::vector<const char*> argv{"gra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gra: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*rotmat) {
      out << format_matrix(deriv ? rotation_matrix_dtheta(theta, k) : rotation_matrix(theta, k).matrix);
    } else if (*forward) {
      run_forward(fwd, out);
    } else if (*bench) {
      bc.in_channels = cin_bench;
      bc.out_channels = cout_bench;
      out << format_bench(run_bench(bc));
    } else if (*params) {
      Variant v = Variant::plain();
      if (variant == "arc") {
        if (m < 1) throw ValueError("params: --variant arc needs --m >= 1");
        v = Variant::arc(m);
      } else if (variant == "gra") {
        if (groups < 1) throw ValueError("params: --variant gra needs --groups >= 1");
        v = Variant::gra(groups);
      }
      out << metrics_report(build_resnet50(v, hw));
    } else if (*demo) {
      dc.thetas = parse_angle_list(thetas);
      out << format_demo(run_demo(dc));
    }
  } catch (const std::exception& e) {
    err << "gra: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace gra::cli

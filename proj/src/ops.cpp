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

#include "gra/ops.hpp"

#include <algorithm>
#include <string>

namespace gra {

namespace {

std::string axis_mismatch(const char* op, const char* axis, std::size_t got, std::size_t want) {
  return std::string(op) + ": " + axis + " is " + std::to_string(got) + ", expected " +
         std::to_string(want);
}

// Column tile width of the GEMM micro-kernel.
constexpr std::size_t kTileP = 256;

// out[r, p0:p0+np] = sum_kk w[r, kk] * col[kk, p0:p0+np] for ROWS rows at
// once. Each output element sums kk = 0..K-1 in order starting from zero.
template <typename T, std::size_t ROWS>
void gemm_rows(const T* w, std::size_t ldw, const T* col, std::size_t P, std::size_t K,
               std::size_t p0, std::size_t np, T* out) {
  T acc[ROWS][kTileP];
  for (std::size_t r = 0; r < ROWS; ++r) std::fill_n(acc[r], np, T{0});
  for (std::size_t kk = 0; kk < K; ++kk) {
    const T* c = col + kk * P + p0;
    for (std::size_t r = 0; r < ROWS; ++r) {
      const T wr = w[r * ldw + kk];
      T* a = acc[r];
      for (std::size_t p = 0; p < np; ++p) a[p] += wr * c[p];
    }
  }
  for (std::size_t r = 0; r < ROWS; ++r) std::copy_n(acc[r], np, out + r * P + p0);
}

// out [M,P] = w [M,K] * col [K,P].
template <typename T>
void gemm(const T* w, std::size_t M, std::size_t K, const T* col, std::size_t P, T* out) {
  for (std::size_t p0 = 0; p0 < P; p0 += kTileP) {
    const std::size_t np = std::min(kTileP, P - p0);
    std::size_t m = 0;
    for (; m + 4 <= M; m += 4) gemm_rows<T, 4>(w + m * K, K, col, P, K, p0, np, out + m * P);
    for (; m < M; ++m) gemm_rows<T, 1>(w + m * K, K, col, P, K, p0, np, out + m * P);
  }
}

}  // namespace

std::size_t conv_out_extent(std::size_t in, std::size_t k, int stride, int padding) {
  const long long span = static_cast<long long>(in) + 2LL * padding - static_cast<long long>(k);
  if (span < 0 || stride <= 0) return 0;
  return static_cast<std::size_t>(span / stride + 1);
}

template <typename T>
Tensor<T> conv2d(const Tensor<T>& x, const Tensor<T>& w, Conv2dParams params, const Tensor<T>* bias) {
  if (x.rank() != 4) throw ShapeError("conv2d: input must be rank 4 [B,Cin,H,W], got " + shape_to_string(x.shape()));
  if (w.rank() != 4) throw ShapeError("conv2d: weight must be rank 4 [Cout,Cin/g,k,k], got " + shape_to_string(w.shape()));
  if (params.groups < 1) throw ValueError("conv2d: groups must be positive");
  if (params.stride < 1) throw ValueError("conv2d: stride must be positive");
  if (params.padding < 0) throw ValueError("conv2d: padding must be non-negative");

  const std::size_t B = x.dim(0), Cin = x.dim(1), H = x.dim(2), W = x.dim(3);
  const std::size_t Cout = w.dim(0), k = w.dim(2);
  const auto g = static_cast<std::size_t>(params.groups);
  if (w.dim(3) != k) throw ShapeError(axis_mismatch("conv2d", "weight column axis (dim 3)", w.dim(3), k));
  if (k % 2 == 0) throw ValueError("conv2d: kernel extent " + std::to_string(k) + " is not odd");
  if (Cin % g != 0) throw ShapeError("conv2d: input channel axis (dim 1) of " + std::to_string(Cin) + " is not divisible by groups=" + std::to_string(g));
  if (Cout % g != 0) throw ShapeError("conv2d: output channel axis (weight dim 0) of " + std::to_string(Cout) + " is not divisible by groups=" + std::to_string(g));
  const std::size_t cin_g = Cin / g, cout_g = Cout / g;
  if (w.dim(1) != cin_g) throw ShapeError(axis_mismatch("conv2d", "weight input-channel axis (dim 1)", w.dim(1), cin_g));
  if (bias && (bias->rank() != 1 || bias->dim(0) != Cout)) {
    throw ShapeError("conv2d: bias must be [" + std::to_string(Cout) + "], got " + shape_to_string(bias->shape()));
  }

  const std::size_t Ho = conv_out_extent(H, k, params.stride, params.padding);
  const std::size_t Wo = conv_out_extent(W, k, params.stride, params.padding);
  if (Ho == 0) throw ShapeError("conv2d: height axis (dim 2) of " + std::to_string(H) + " too small for kernel " + std::to_string(k));
  if (Wo == 0) throw ShapeError("conv2d: width axis (dim 3) of " + std::to_string(W) + " too small for kernel " + std::to_string(k));

  const std::size_t K = cin_g * k * k, P = Ho * Wo;
  const long long stride = params.stride, pad = params.padding;
  std::vector<T> col(K * P);
  Tensor<T> out({B, Cout, Ho, Wo});
  const T* xd = x.data().data();
  const T* wd = w.data().data();
  T* od = out.data().data();

  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t grp = 0; grp < g; ++grp) {
      // im2col rows ordered (channel, dy, dx).
      for (std::size_t c = 0; c < cin_g; ++c) {
        const T* plane = xd + ((b * Cin) + grp * cin_g + c) * H * W;
        for (std::size_t dy = 0; dy < k; ++dy) {
          for (std::size_t dx = 0; dx < k; ++dx) {
            T* row = col.data() + ((c * k + dy) * k + dx) * P;
            for (std::size_t oy = 0; oy < Ho; ++oy) {
              const long long iy = static_cast<long long>(oy) * stride - pad + static_cast<long long>(dy);
              T* dst = row + oy * Wo;
              if (iy < 0 || iy >= static_cast<long long>(H)) {
                std::fill_n(dst, Wo, T{0});
                continue;
              }
              const T* src = plane + static_cast<std::size_t>(iy) * W;
              for (std::size_t ox = 0; ox < Wo; ++ox) {
                const long long ix = static_cast<long long>(ox) * stride - pad + static_cast<long long>(dx);
                dst[ox] = (ix < 0 || ix >= static_cast<long long>(W)) ? T{0} : src[ix];
              }
            }
          }
        }
      }
      gemm(wd + grp * cout_g * K, cout_g, K, col.data(), P, od + (b * Cout + grp * cout_g) * P);
    }
  }

  if (bias) {
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t o = 0; o < Cout; ++o) {
        T* plane = od + (b * Cout + o) * P;
        const T v = (*bias)[o];
        for (std::size_t p = 0; p < P; ++p) plane[p] += v;
      }
  }
  return out;
}

template <typename T>
Tensor<T> bmm(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() != 3) throw ShapeError("bmm: lhs must be rank 3 [G,M,K], got " + shape_to_string(a.shape()));
  if (b.rank() != 3) throw ShapeError("bmm: rhs must be rank 3 [G,K,N], got " + shape_to_string(b.shape()));
  if (a.dim(0) != b.dim(0)) throw ShapeError(axis_mismatch("bmm", "rhs batch axis (dim 0)", b.dim(0), a.dim(0)));
  if (a.dim(2) != b.dim(1)) throw ShapeError(axis_mismatch("bmm", "rhs inner axis (dim 1)", b.dim(1), a.dim(2)));
  const std::size_t G = a.dim(0), M = a.dim(1), K = a.dim(2), N = b.dim(2);
  Tensor<T> out({G, M, N});
  for (std::size_t g = 0; g < G; ++g) {
    gemm(a.data().data() + g * M * K, M, K, b.data().data() + g * K * N, N,
         out.data().data() + g * M * N);
  }
  return out;
}

template Tensor<float> conv2d(const Tensor<float>&, const Tensor<float>&, Conv2dParams, const Tensor<float>*);
template Tensor<double> conv2d(const Tensor<double>&, const Tensor<double>&, Conv2dParams, const Tensor<double>*);
template Tensor<float> bmm(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> bmm(const Tensor<double>&, const Tensor<double>&);

}  // namespace gra

/**
 * Copyright 2026 The multinet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Dense supra-transition matrices built straight from an edge list, without
// going through MultiplexGraph, StrengthTable or the walk kernels. State
// (node i, layer a) has index a * n + i.

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <vector>

#include "multinet/walk.hpp"

namespace oracle {

struct RawEdge {
  std::size_t layer, src, dst;
  double weight;
};

struct Supra {
  std::size_t n = 0, L = 0;
  std::vector<double> P;  // (n L) x (n L), row-major

  std::size_t state(std::size_t i, std::size_t a) const { return a * n + i; }
  double at(std::size_t from, std::size_t to) const { return P[from * n * L + to]; }
};

inline Supra build_supra(std::size_t n, std::size_t L, bool directed, const std::vector<RawEdge>& edges,
                         multinet::WalkStrategy kind, double coupling = 1.0) {
  using multinet::WalkStrategy;
  // a[l][i][j], merged by summing, self-loops ignored
  std::vector<double> A(L * n * n, 0.0);
  auto adj = [&](std::size_t l, std::size_t i, std::size_t j) -> double& { return A[(l * n + i) * n + j]; };
  for (const auto& e : edges) {
    if (e.src == e.dst || e.weight == 0.0) continue;
    adj(e.layer, e.src, e.dst) += e.weight;
    if (!directed) adj(e.layer, e.dst, e.src) += e.weight;
  }
  std::vector<double> S(n * L, 0.0), s(n * L, 0.0);
  std::vector<std::size_t> deg(n * L, 0);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (adj(l, i, j) > 0) {
          S[i * L + l] += adj(l, i, j);
          deg[i * L + l] += 1;
        }
  auto on = [&](std::size_t i, std::size_t l) { return deg[i * L + l] > 0; };
  auto D = [&](std::size_t i, std::size_t a, std::size_t b) { return on(i, a) && on(i, b) ? coupling : 0.0; };
  double smax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < L; ++a) {
      double v = S[i * L + a];
      for (std::size_t b = 0; b < L; ++b) v += D(i, a, b);
      s[i * L + a] = v;
      smax = std::max(smax, v);
    }

  Supra out;
  out.n = n;
  out.L = L;
  const std::size_t N = n * L;
  out.P.assign(N * N, 0.0);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      if (!on(i, a)) continue;
      double* row = &out.P[out.state(i, a) * N];
      const double sia = s[i * L + a];
      const double Sia = S[i * L + a];
      switch (kind) {
        case WalkStrategy::Classical:
          for (std::size_t j = 0; j < n; ++j) row[out.state(j, a)] += adj(a, i, j) / sia;
          for (std::size_t b = 0; b < L; ++b) row[out.state(i, b)] += D(i, a, b) / sia;
          break;
        case WalkStrategy::Diffusive:
          for (std::size_t j = 0; j < n; ++j) row[out.state(j, a)] += adj(a, i, j) / smax;
          for (std::size_t b = 0; b < L; ++b)
            if (b != a) row[out.state(i, b)] += D(i, a, b) / smax;
          row[out.state(i, a)] += (smax + D(i, a, a) - sia) / smax;
          break;
        case WalkStrategy::Physical: {
          double c = 0.0;
          for (std::size_t b = 0; b < L; ++b)
            for (std::size_t j = 0; j < n; ++j) {
              if (s[i * L + b] == 0.0) continue;
              double m = adj(b, i, j) / s[i * L + b] * D(i, a, b) / Sia;
              row[out.state(j, b)] += m;
              c += m;
            }
          for (std::size_t k = 0; k < N; ++k) row[k] /= c;
          break;
        }
        case WalkStrategy::MultiNetUniform: {
          std::size_t Li = 0;
          for (std::size_t b = 0; b < L; ++b) Li += on(i, b);
          for (std::size_t b = 0; b < L; ++b)
            for (std::size_t j = 0; j < n; ++j)
              if (adj(b, i, j) > 0) row[out.state(j, b)] += 1.0 / double(Li * deg[i * L + b]);
          break;
        }
        case WalkStrategy::SingleLayerUniform:
          for (std::size_t j = 0; j < n; ++j) row[out.state(j, a)] += adj(a, i, j) / Sia;
          break;
      }
    }
  return out;
}

}  // namespace oracle

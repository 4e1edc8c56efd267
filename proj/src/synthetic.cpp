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
#include "multinet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "multinet/error.hpp"
#include "multinet/random.hpp"

namespace multinet {

namespace {

using PairSet = std::set<std::pair<NodeIndex, NodeIndex>>;

std::pair<NodeIndex, NodeIndex> ordered(NodeIndex u, NodeIndex v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

PairSet sbm_layer(std::size_t n, const std::vector<std::size_t>& community, double p_in, double p_out,
                  SplitMix64& rng) {
  PairSet edges;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v)
      if (uniform01(rng) < (community[u] == community[v] ? p_in : p_out)) edges.insert({u, v});
  return edges;
}

void add_random_pairs(PairSet& edges, std::size_t count, std::size_t n, const PairSet& forbidden, SplitMix64& rng) {
  std::size_t added = 0;
  while (added < count) {
    auto u = static_cast<NodeIndex>(uniform_index(rng, n));
    auto v = static_cast<NodeIndex>(uniform_index(rng, n));
    if (u == v) continue;
    auto p = ordered(u, v);
    if (forbidden.count(p) || !edges.insert(p).second) continue;
    ++added;
  }
}

}  // namespace

MultiplexGraph planted_multiplex(const PlantedConfig& cfg) {
  if (cfg.layers < 2) throw ValidationError("planted multiplex needs at least two layers");
  if (cfg.communities < 1 || cfg.nodes < 2 * cfg.communities)
    throw ValidationError("planted multiplex needs at least two nodes per community");
  SplitMix64 rng(derive_seed(cfg.seed, {0x91a7}));
  const std::size_t n = cfg.nodes;
  std::vector<std::size_t> community(n);
  for (std::size_t v = 0; v < n; ++v) community[v] = v * cfg.communities / n;

  std::vector<PairSet> layers;
  for (std::size_t a = 0; a + 1 < cfg.layers; ++a)
    layers.push_back(sbm_layer(n, community, a == 0 ? cfg.p_in : cfg.second_p_in, cfg.p_out, rng));

  PairSet target;
  if (cfg.null_target) {
    add_random_pairs(target, layers[0].size(), n, {}, rng);
  } else {
    std::vector<std::pair<NodeIndex, NodeIndex>> base(layers[0].begin(), layers[0].end());
    shuffle(base, rng);
    auto rewired = static_cast<std::size_t>(std::llround(cfg.target_noise * static_cast<double>(base.size())));
    target.insert(base.begin() + static_cast<std::ptrdiff_t>(rewired), base.end());
    add_random_pairs(target, rewired, n, layers[0], rng);
  }
  layers.push_back(std::move(target));

  GraphBuilder builder(layers.size(), false);
  for (std::size_t v = 0; v < n; ++v) builder.add_node("n" + std::to_string(v));
  for (std::size_t a = 0; a < layers.size(); ++a)
    for (auto [u, v] : layers[a]) builder.add_edge(static_cast<LayerIndex>(a), u, v);
  return builder.build();
}

MultiplexGraph profile_multiplex(const ProfileConfig& cfg) {
  if (cfg.layer_nodes.size() != cfg.layer_edges.size() || cfg.layer_nodes.empty())
    throw ValidationError("profile needs matching, non-empty per-layer node and edge counts");
  SplitMix64 rng(derive_seed(cfg.seed, {0x9e0f}));
  const std::size_t n = cfg.nodes;
  // Chung-Lu style propensities with a power-law tail.
  std::vector<double> propensity(n);
  for (std::size_t v = 0; v < n; ++v)
    propensity[v] = std::pow(static_cast<double>(v + 1), -1.0 / (cfg.degree_exponent - 1.0));
  std::vector<NodeIndex> perm(n);
  for (std::size_t v = 0; v < n; ++v) perm[v] = static_cast<NodeIndex>(v);
  shuffle(perm, rng);

  GraphBuilder builder(cfg.layer_nodes.size(), false);
  for (std::size_t v = 0; v < n; ++v) builder.add_node("n" + std::to_string(v));
  for (std::size_t a = 0; a < cfg.layer_nodes.size(); ++a) {
    const std::size_t k = cfg.layer_nodes[a];
    const std::size_t m = cfg.layer_edges[a];
    if (k > n || k < 2) throw ValidationError("layer node count out of range");
    if (m < k / 2 + 1 || m > k * (k - 1) / 2) throw ValidationError("layer edge count out of range");
    std::vector<NodeIndex> members(perm.begin(), perm.end());
    shuffle(members, rng);
    members.resize(k);
    std::vector<double> w(k);
    for (std::size_t t = 0; t < k; ++t) w[t] = propensity[members[t]];
    AliasTable table(w);

    PairSet edges;
    // One edge per member first, so every member is present in the layer.
    for (std::size_t t = 0; t < k && edges.size() < m; ++t) {
      bool has = false;
      for (auto& e : edges) has = has || e.first == members[t] || e.second == members[t];
      if (has) continue;
      while (true) {
        NodeIndex other = members[table.sample(rng)];
        if (other == members[t]) continue;
        if (edges.insert(ordered(members[t], other)).second) break;
      }
    }
    while (edges.size() < m) {
      NodeIndex u = members[table.sample(rng)];
      NodeIndex v = members[table.sample(rng)];
      if (u != v) edges.insert(ordered(u, v));
    }
    for (auto [u, v] : edges) builder.add_edge(static_cast<LayerIndex>(a), u, v);
  }
  return builder.build();
}

MultiplexGraph random_multiplex(std::size_t nodes, std::size_t layers, double p, bool weighted, bool directed,
                                std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, {0x7a11}));
  GraphBuilder builder(layers, directed);
  for (std::size_t v = 0; v < nodes; ++v) builder.add_node("v" + std::to_string(v));
  for (std::size_t a = 0; a < layers; ++a) {
    for (NodeIndex u = 0; u < nodes; ++u) {
      for (NodeIndex v = directed ? 0 : u + 1; v < nodes; ++v) {
        if (u == v || uniform01(rng) >= p) continue;
        double w = weighted ? 0.5 + 1.5 * uniform01(rng) : 1.0;
        builder.add_edge(static_cast<LayerIndex>(a), u, v, w);
      }
    }
  }
  return builder.build();
}

}  // namespace multinet

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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "multinet/graph.hpp"

namespace multinet {

// Stochastic block model layers over one node set plus a target layer.
struct PlantedConfig {
  std::size_t nodes = 200;
  std::size_t communities = 5;
  std::size_t layers = 3;  // layers - 1 structural layers, last one is the target
  double p_in = 0.2;
  double p_out = 0.01;
  double second_p_in = 0.15;  // structural layers after the first
  // Target = copy of layer 0 with this share of its edges rewired to random
  // non-edges.
  double target_noise = 0.1;
  // Target drawn independently of everything else, with layer 0's edge count.
  bool null_target = false;
  std::uint64_t seed = 0;
};

MultiplexGraph planted_multiplex(const PlantedConfig& cfg);

// Heavy-tailed layers with fixed node presence and edge counts.
struct ProfileConfig {
  std::size_t nodes = 279;
  std::vector<std::size_t> layer_nodes{253, 260, 278};
  std::vector<std::size_t> layer_edges{1031, 1639, 3193};
  double degree_exponent = 2.5;
  std::uint64_t seed = 0;
};

MultiplexGraph profile_multiplex(const ProfileConfig& cfg);

// Each layer: every node pair is an edge with probability p; weights uniform
// in [0.5, 2) when weighted. Some nodes may be absent from some layers.
MultiplexGraph random_multiplex(std::size_t nodes, std::size_t layers, double p, bool weighted, bool directed,
                                std::uint64_t seed);

}  // namespace multinet

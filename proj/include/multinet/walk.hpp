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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multinet/graph.hpp"
#include "multinet/random.hpp"

namespace multinet {

// Transition kernels. SingleLayerUniform is the plain weighted walk
// P(j | i) = w_ij / sum_k w_ik on a one-layer graph; it backs the collapsed
// baseline.
enum class WalkStrategy { Classical, Diffusive, Physical, MultiNetUniform, SingleLayerUniform };

inline constexpr WalkStrategy kMultiplexStrategies[] = {
    WalkStrategy::Classical, WalkStrategy::Diffusive, WalkStrategy::Physical,
    WalkStrategy::MultiNetUniform};

// classical | diffusive | physical | multinet | collapsed
std::string_view to_string(WalkStrategy s);
WalkStrategy parse_strategy(std::string_view token);

struct WalkState {
  NodeIndex node;
  LayerIndex layer;

  friend bool operator==(const WalkState&, const WalkState&) = default;
};

struct Transition {
  WalkState to;
  double probability;
};

// Every positive-probability move out of `from`. An empty row means `from`
// is a dead end (the node has no outgoing edges in that layer).
//
// Row order is part of the contract: StepSampler::pick is the inverse CDF of
// this row taken in this order.
std::vector<Transition> transition_row(const MultiplexGraph& g, const StrengthTable& st,
                                       WalkStrategy strategy, WalkState from);

// O(1)/O(log deg) sampler equivalent to transition_row, built once per graph.
class StepSampler {
 public:
  StepSampler(const MultiplexGraph& g, const StrengthTable& st, WalkStrategy strategy);

  // Inverse CDF of transition_row(from) at u in [0, 1). nullopt at a dead end.
  std::optional<WalkState> pick(WalkState from, double u) const;

  // One walk step. At a dead end the walker first moves to a uniformly chosen
  // layer where its node is active; nullopt if there is none.
  std::optional<WalkState> step(WalkState from, SplitMix64& rng) const;

  WalkStrategy strategy() const { return strategy_; }
  const MultiplexGraph& graph() const { return *g_; }

 private:
  std::size_t pick_neighbor(NodeIndex i, LayerIndex a, double x) const;

  const MultiplexGraph* g_;
  const StrengthTable* st_;
  WalkStrategy strategy_;
};

struct WalkConfig {
  std::size_t walk_length = 10;     // steps per walk; walks hold up to walk_length + 1 nodes
  std::size_t walks_per_node = 5;   // repetitions per (node, layer)
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

// Node sequence starting at `start`, up to `length` steps, layers erased.
// Throws InvalidStart when start.node has no edges in start.layer.
std::vector<NodeIndex> multiwalk(const StepSampler& sampler, WalkState start, std::size_t length,
                                 SplitMix64& rng);
std::vector<NodeIndex> multiwalk(const MultiplexGraph& g, const StrengthTable& st,
                                 WalkStrategy strategy, WalkState start, std::size_t length,
                                 SplitMix64& rng);

// Ragged array of id sequences in one flat buffer.
class Sequences {
 public:
  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  std::span<const std::uint32_t> operator[](std::size_t k) const {
    return {ids_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  void push_back(std::span<const std::uint32_t> seq) {
    ids_.insert(ids_.end(), seq.begin(), seq.end());
    offsets_.push_back(ids_.size());
  }
  void append(const Sequences& other);
  void reserve(std::size_t sequences, std::size_t ids) {
    offsets_.reserve(sequences + 1);
    ids_.reserve(ids);
  }
  std::size_t total_ids() const { return ids_.size(); }
  const std::vector<std::uint32_t>& ids() const { return ids_; }

  friend bool operator==(const Sequences&, const Sequences&) = default;

 private:
  std::vector<std::uint32_t> ids_;
  std::vector<std::size_t> offsets_{0};
};

struct CorpusMeta {
  std::string strategy;
  std::size_t walk_length = 0;
  std::size_t walks_per_node = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;
};

// Walks over an id space; tokens[id] is the external name of each id.
struct WalkCorpus {
  std::vector<std::string> tokens;
  Sequences walks;
  CorpusMeta meta;
};

// For each layer, each repetition and each node active in that layer, one
// walk from (node, layer). Walk (layer, node, rep) draws from its own
// generator seeded by derive_seed(seed, {layer, node, rep}), so the result
// does not depend on cfg.threads.
WalkCorpus generate_corpus(const MultiplexGraph& g, const StrengthTable& st, WalkStrategy strategy,
                           const WalkConfig& cfg);

// One walk per line, space-separated tokens, preceded by
// `# strategy=... l=... n=... seed=...` and `# fingerprint=... walks=...`.
std::string format_corpus(const WalkCorpus& corpus);
void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path);
// Tokens are numbered in order of first appearance.
WalkCorpus parse_corpus(std::string_view text);
WalkCorpus load_corpus(const std::filesystem::path& path);

}  // namespace multinet

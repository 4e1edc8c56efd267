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
#include <unordered_map>
#include <vector>

namespace multinet {

using NodeIndex = std::uint32_t;
using LayerIndex = std::uint32_t;

struct Neighbor {
  NodeIndex node;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Edge {
  NodeIndex src;
  NodeIndex dst;
  double weight;
};

struct LoadOptions {
  bool directed = false;
  bool weighted = false;
};

// Diagnostics collected while reading an edge list.
struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t zero_weights_dropped = 0;
  std::size_t duplicates_merged = 0;
  bool empty_intersection = false;
};

class MultiplexGraph;

// Accumulates nodes and edges, then freezes them into an immutable graph.
// Duplicate edges within a layer merge by summing weights; self-loops are
// dropped and counted.
class GraphBuilder {
 public:
  GraphBuilder(std::size_t num_layers, bool directed);

  NodeIndex add_node(std::string_view token);
  void add_edge(LayerIndex layer, NodeIndex src, NodeIndex dst, double weight = 1.0);
  void add_edge(LayerIndex layer, std::string_view src, std::string_view dst, double weight = 1.0);

  void set_layer_labels(std::vector<std::int64_t> labels);
  void set_coupling_weight(double w);

  std::size_t self_loops_dropped() const { return self_loops_; }
  std::size_t num_nodes() const { return tokens_.size(); }

  // Consumes the builder's state. `duplicates_merged` (optional) receives the
  // number of edges folded into an existing one.
  MultiplexGraph build(std::size_t* duplicates_merged = nullptr);

 private:
  std::size_t num_layers_;
  bool directed_;
  double coupling_ = 1.0;
  std::size_t self_loops_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::int64_t> labels_;
  std::vector<std::vector<Edge>> edges_;
};

// L layers over a shared node universe, stored as one CSR adjacency per layer
// with neighbor lists sorted by dense node index. Immutable once built.
//
// Coupling D(i, a, b) is `coupling_weight()` when node i is active (has at
// least one outgoing edge) in both layers a and b, including a == b, and 0
// otherwise.
class MultiplexGraph {
 public:
  MultiplexGraph() = default;

  std::size_t num_nodes() const { return tokens_.size(); }
  std::size_t num_layers() const { return layers_.size(); }
  bool directed() const { return directed_; }
  double coupling_weight() const { return coupling_; }

  const std::string& token(NodeIndex i) const;
  std::optional<NodeIndex> find(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  // External layer id as it appeared in the input file.
  std::int64_t layer_label(LayerIndex a) const;
  const std::vector<std::int64_t>& layer_labels() const { return labels_; }
  std::optional<LayerIndex> find_layer(std::int64_t label) const;

  // Out-neighbors of i in layer a, ascending by node index. Throws IndexError.
  std::span<const Neighbor> neighbors(NodeIndex i, LayerIndex a) const;
  // Running sum of neighbor weights, parallel to neighbors(i, a).
  std::span<const double> cumulative_weights(NodeIndex i, LayerIndex a) const;
  bool unit_weights(LayerIndex a) const { return layers_[a].unit_weights; }

  std::size_t degree(NodeIndex i, LayerIndex a) const;
  // Outgoing degree >= 1. Only active (node, layer) pairs take part in walks.
  bool active(NodeIndex i, LayerIndex a) const { return degree(i, a) > 0; }
  // Any incident edge, in or out.
  bool present(NodeIndex i, LayerIndex a) const;
  // Layers where i is active, ascending.
  std::span<const LayerIndex> active_layers(NodeIndex i) const;

  double coupling(NodeIndex i, LayerIndex a, LayerIndex b) const;

  // Edges of a layer. Undirected layers list every edge once with src < dst.
  std::vector<Edge> edges(LayerIndex a) const;
  std::size_t num_edges(LayerIndex a) const;
  std::size_t num_edges() const;
  double total_weight(LayerIndex a) const;
  // Nodes active in every layer.
  std::size_t intersection_size() const;

  // Stable 64-bit digest of structure, weights, tokens and layer labels.
  std::uint64_t fingerprint() const;

 private:
  friend class GraphBuilder;

  struct Layer {
    std::vector<std::size_t> offsets;  // num_nodes + 1
    std::vector<Neighbor> adjacency;
    std::vector<double> cumulative;
    std::vector<std::uint8_t> has_in_edges;  // directed only
    bool unit_weights = true;
  };

  void check(NodeIndex i, LayerIndex a) const;

  bool directed_ = false;
  double coupling_ = 1.0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::int64_t> labels_;
  std::vector<Layer> layers_;
  std::vector<std::size_t> active_offsets_;
  std::vector<LayerIndex> active_layers_;
};

// Reads `layer src dst [weight]` lines; `#` starts a comment line.
MultiplexGraph load_multiplex(const std::filesystem::path& path, const LoadOptions& options,
                              LoadReport& report);
MultiplexGraph load_multiplex(const std::filesystem::path& path, const LoadOptions& options = {});
MultiplexGraph parse_multiplex(std::string_view text, const LoadOptions& options, LoadReport& report);

// Writes in the same edge-list format. Weights are written when any edge
// weight differs from 1.
void save_multiplex(const MultiplexGraph& g, const std::filesystem::path& path);
std::string format_multiplex(const MultiplexGraph& g);

// Union of all layers into one; parallel edges across layers sum their weights.
MultiplexGraph collapse(const MultiplexGraph& g);

// Copy of g restricted to the given layers, in the given order. The node
// universe (tokens and dense indices) is preserved.
MultiplexGraph select_layers(const MultiplexGraph& g, std::span<const LayerIndex> layers);

// Per (node, layer) strengths:
//   intra(i, a) = sum_j a_ij in layer a
//   total(i, a) = intra(i, a) + sum_b D(i, a, b)
class StrengthTable {
 public:
  StrengthTable() = default;
  StrengthTable(std::size_t num_nodes, std::size_t num_layers);

  double intra(NodeIndex i, LayerIndex a) const { return intra_[i * layers_ + a]; }
  double total(NodeIndex i, LayerIndex a) const { return total_[i * layers_ + a]; }
  double s_max() const { return s_max_; }
  std::size_t num_nodes() const { return nodes_; }
  std::size_t num_layers() const { return layers_; }

 private:
  friend StrengthTable strengths(const MultiplexGraph& g);
  std::size_t nodes_ = 0;
  std::size_t layers_ = 0;
  std::vector<double> intra_;
  std::vector<double> total_;
  double s_max_ = 0.0;
};

StrengthTable strengths(const MultiplexGraph& g);

}  // namespace multinet

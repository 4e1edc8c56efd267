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
#include "multinet/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "multinet/error.hpp"

namespace multinet {

GraphBuilder::GraphBuilder(std::size_t num_layers, bool directed)
    : num_layers_(num_layers), directed_(directed), edges_(num_layers) {
  if (num_layers == 0) throw ValidationError("a multiplex graph needs at least one layer");
  labels_.resize(num_layers);
  for (std::size_t a = 0; a < num_layers; ++a) labels_[a] = static_cast<std::int64_t>(a);
}

NodeIndex GraphBuilder::add_node(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  auto id = static_cast<NodeIndex>(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

void GraphBuilder::add_edge(LayerIndex layer, NodeIndex src, NodeIndex dst, double weight) {
  if (layer >= num_layers_) throw IndexError("layer index " + std::to_string(layer) + " out of range");
  if (src >= tokens_.size() || dst >= tokens_.size())
    throw IndexError("edge endpoint out of range");
  if (!std::isfinite(weight) || weight < 0.0)
    throw ValidationError("edge weight must be a finite non-negative number");
  if (weight == 0.0) return;
  if (src == dst) {
    ++self_loops_;
    return;
  }
  if (!directed_ && dst < src) std::swap(src, dst);
  edges_[layer].push_back({src, dst, weight});
}

void GraphBuilder::add_edge(LayerIndex layer, std::string_view src, std::string_view dst,
                            double weight) {
  NodeIndex s = add_node(src);
  NodeIndex d = add_node(dst);
  add_edge(layer, s, d, weight);
}

void GraphBuilder::set_layer_labels(std::vector<std::int64_t> labels) {
  if (labels.size() != num_layers_) throw ValidationError("layer label count does not match layer count");
  std::set<std::int64_t> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size()) throw ValidationError("layer labels must be distinct");
  labels_ = std::move(labels);
}

void GraphBuilder::set_coupling_weight(double w) {
  if (!std::isfinite(w) || w <= 0.0) throw ValidationError("coupling weight must be positive");
  coupling_ = w;
}

MultiplexGraph GraphBuilder::build(std::size_t* duplicates_merged) {
  MultiplexGraph g;
  g.directed_ = directed_;
  g.coupling_ = coupling_;
  g.tokens_ = std::move(tokens_);
  g.index_ = std::move(index_);
  g.labels_ = std::move(labels_);
  const std::size_t n = g.tokens_.size();
  std::size_t merged = 0;

  g.layers_.resize(num_layers_);
  for (std::size_t a = 0; a < num_layers_; ++a) {
    auto& raw = edges_[a];
    std::sort(raw.begin(), raw.end(), [](const Edge& x, const Edge& y) {
      return x.src != y.src ? x.src < y.src : x.dst < y.dst;
    });
    std::vector<Edge> unique;
    unique.reserve(raw.size());
    for (const Edge& e : raw) {
      if (!unique.empty() && unique.back().src == e.src && unique.back().dst == e.dst) {
        unique.back().weight += e.weight;
        ++merged;
      } else {
        unique.push_back(e);
      }
    }
    raw.clear();
    raw.shrink_to_fit();

    auto& layer = g.layers_[a];
    std::vector<std::size_t> count(n, 0);
    for (const Edge& e : unique) {
      ++count[e.src];
      if (!directed_) ++count[e.dst];
    }
    layer.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) layer.offsets[i + 1] = layer.offsets[i] + count[i];
    layer.adjacency.resize(layer.offsets[n]);
    std::vector<std::size_t> cursor(layer.offsets.begin(), layer.offsets.end() - 1);
    for (const Edge& e : unique) {
      layer.adjacency[cursor[e.src]++] = {e.dst, e.weight};
      if (!directed_) layer.adjacency[cursor[e.dst]++] = {e.src, e.weight};
    }
    if (directed_) {
      layer.has_in_edges.assign(n, 0);
      for (const Edge& e : unique) layer.has_in_edges[e.dst] = 1;
    }
    layer.cumulative.resize(layer.adjacency.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto begin = layer.adjacency.begin() + static_cast<std::ptrdiff_t>(layer.offsets[i]);
      auto end = layer.adjacency.begin() + static_cast<std::ptrdiff_t>(layer.offsets[i + 1]);
      std::sort(begin, end, [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
      double acc = 0.0;
      for (std::size_t k = layer.offsets[i]; k < layer.offsets[i + 1]; ++k) {
        acc += layer.adjacency[k].weight;
        layer.cumulative[k] = acc;
        if (layer.adjacency[k].weight != 1.0) layer.unit_weights = false;
      }
    }
  }

  g.active_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < num_layers_; ++a) {
      const auto& layer = g.layers_[a];
      if (layer.offsets[i + 1] > layer.offsets[i]) g.active_layers_.push_back(static_cast<LayerIndex>(a));
    }
    g.active_offsets_[i + 1] = g.active_layers_.size();
  }
  edges_.assign(num_layers_, {});
  if (duplicates_merged) *duplicates_merged = merged;
  return g;
}

const std::string& MultiplexGraph::token(NodeIndex i) const {
  if (i >= tokens_.size()) throw IndexError("node index " + std::to_string(i) + " out of range");
  return tokens_[i];
}

std::optional<NodeIndex> MultiplexGraph::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t MultiplexGraph::layer_label(LayerIndex a) const {
  if (a >= labels_.size()) throw IndexError("layer index " + std::to_string(a) + " out of range");
  return labels_[a];
}

std::optional<LayerIndex> MultiplexGraph::find_layer(std::int64_t label) const {
  for (std::size_t a = 0; a < labels_.size(); ++a)
    if (labels_[a] == label) return static_cast<LayerIndex>(a);
  return std::nullopt;
}

void MultiplexGraph::check(NodeIndex i, LayerIndex a) const {
  if (i >= tokens_.size()) throw IndexError("node index " + std::to_string(i) + " out of range");
  if (a >= layers_.size()) throw IndexError("layer index " + std::to_string(a) + " out of range");
}

std::span<const Neighbor> MultiplexGraph::neighbors(NodeIndex i, LayerIndex a) const {
  check(i, a);
  const auto& layer = layers_[a];
  return {layer.adjacency.data() + layer.offsets[i], layer.offsets[i + 1] - layer.offsets[i]};
}

std::span<const double> MultiplexGraph::cumulative_weights(NodeIndex i, LayerIndex a) const {
  check(i, a);
  const auto& layer = layers_[a];
  return {layer.cumulative.data() + layer.offsets[i], layer.offsets[i + 1] - layer.offsets[i]};
}

std::size_t MultiplexGraph::degree(NodeIndex i, LayerIndex a) const {
  check(i, a);
  return layers_[a].offsets[i + 1] - layers_[a].offsets[i];
}

bool MultiplexGraph::present(NodeIndex i, LayerIndex a) const {
  if (active(i, a)) return true;
  return directed_ && layers_[a].has_in_edges[i] != 0;
}

std::span<const LayerIndex> MultiplexGraph::active_layers(NodeIndex i) const {
  if (i >= tokens_.size()) throw IndexError("node index " + std::to_string(i) + " out of range");
  return {active_layers_.data() + active_offsets_[i], active_offsets_[i + 1] - active_offsets_[i]};
}

double MultiplexGraph::coupling(NodeIndex i, LayerIndex a, LayerIndex b) const {
  return active(i, a) && active(i, b) ? coupling_ : 0.0;
}

std::vector<Edge> MultiplexGraph::edges(LayerIndex a) const {
  if (a >= layers_.size()) throw IndexError("layer index " + std::to_string(a) + " out of range");
  std::vector<Edge> out;
  const auto& layer = layers_[a];
  for (NodeIndex i = 0; i < tokens_.size(); ++i) {
    for (std::size_t k = layer.offsets[i]; k < layer.offsets[i + 1]; ++k) {
      const Neighbor& nb = layer.adjacency[k];
      if (directed_ || i < nb.node) out.push_back({i, nb.node, nb.weight});
    }
  }
  return out;
}

std::size_t MultiplexGraph::num_edges(LayerIndex a) const {
  if (a >= layers_.size()) throw IndexError("layer index " + std::to_string(a) + " out of range");
  std::size_t arcs = layers_[a].adjacency.size();
  return directed_ ? arcs : arcs / 2;
}

std::size_t MultiplexGraph::num_edges() const {
  std::size_t total = 0;
  for (LayerIndex a = 0; a < layers_.size(); ++a) total += num_edges(a);
  return total;
}

double MultiplexGraph::total_weight(LayerIndex a) const {
  double w = 0.0;
  for (const Edge& e : edges(a)) w += e.weight;
  return w;
}

std::size_t MultiplexGraph::intersection_size() const {
  std::size_t count = 0;
  for (NodeIndex i = 0; i < tokens_.size(); ++i)
    if (active_layers(i).size() == layers_.size()) ++count;
  return count;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < n; ++k) {
      h ^= c[k];
      h *= 0x100000001b3ULL;
    }
  }
  template <class T>
  void value(T v) {
    bytes(&v, sizeof(v));
  }
};

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    std::size_t b = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > b) out.push_back(s.substr(b, k - b));
  }
  return out;
}

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

}  // namespace

std::uint64_t MultiplexGraph::fingerprint() const {
  Fnv1a f;
  f.value(static_cast<std::uint8_t>(directed_));
  f.value(std::bit_cast<std::uint64_t>(coupling_));
  f.value(static_cast<std::uint64_t>(layers_.size()));
  for (auto l : labels_) f.value(l);
  f.value(static_cast<std::uint64_t>(tokens_.size()));
  for (const auto& t : tokens_) {
    f.bytes(t.data(), t.size());
    f.value('\0');
  }
  for (const auto& layer : layers_) {
    for (auto o : layer.offsets) f.value(static_cast<std::uint64_t>(o));
    for (const auto& nb : layer.adjacency) {
      f.value(nb.node);
      f.value(std::bit_cast<std::uint64_t>(nb.weight));
    }
  }
  return f.h;
}

MultiplexGraph parse_multiplex(std::string_view text, const LoadOptions& options, LoadReport& report) {
  report = {};
  struct Row {
    std::int64_t label;
    std::string_view src, dst;
    double weight;
  };
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    ++report.lines_read;
    auto fields = split_ws(line);
    auto fail = [&](const std::string& why) {
      return ParseError("line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() < 3 || fields.size() > 4)
      throw fail("expected 'layer src dst [weight]', got " + std::to_string(fields.size()) + " fields");
    Row row{};
    auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), row.label);
    if (ec != std::errc() || p != fields[0].data() + fields[0].size())
      throw fail("layer id '" + std::string(fields[0]) + "' is not an integer");
    if (row.label < 0) throw fail("layer id must be non-negative");
    row.src = fields[1];
    row.dst = fields[2];
    row.weight = 1.0;
    if (fields.size() == 4 && options.weighted) {
      double w = 0.0;
      auto [q, ec2] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), w);
      if (ec2 != std::errc() || q != fields[3].data() + fields[3].size() || !std::isfinite(w))
        throw fail("weight '" + std::string(fields[3]) + "' is not a number");
      if (w < 0.0)
        throw ValidationError("line " + std::to_string(line_no) + ": negative edge weight " +
                              std::string(fields[3]));
      row.weight = w;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ValidationError("edge list contains no edges");

  std::map<std::int64_t, LayerIndex> layer_of;
  for (const Row& r : rows) layer_of.emplace(r.label, 0);
  std::vector<std::int64_t> labels;
  for (auto& [label, idx] : layer_of) {
    idx = static_cast<LayerIndex>(labels.size());
    labels.push_back(label);
  }

  GraphBuilder builder(labels.size(), options.directed);
  builder.set_layer_labels(labels);
  for (const Row& r : rows) {
    if (r.weight == 0.0) {
      builder.add_node(r.src);
      builder.add_node(r.dst);
      ++report.zero_weights_dropped;
      continue;
    }
    builder.add_edge(layer_of.at(r.label), r.src, r.dst, r.weight);
  }
  report.self_loops_dropped = builder.self_loops_dropped();
  MultiplexGraph g = builder.build(&report.duplicates_merged);
  report.edges_read = rows.size();
  report.empty_intersection = g.num_layers() > 1 && g.intersection_size() == 0;
  return g;
}

MultiplexGraph load_multiplex(const std::filesystem::path& path, const LoadOptions& options,
                              LoadReport& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading graph file '" + path.string() + "'");
  return parse_multiplex(buf.str(), options, report);
}

MultiplexGraph load_multiplex(const std::filesystem::path& path, const LoadOptions& options) {
  LoadReport report;
  return load_multiplex(path, options, report);
}

std::string format_multiplex(const MultiplexGraph& g) {
  bool weighted = false;
  for (LayerIndex a = 0; a < g.num_layers(); ++a) weighted = weighted || !g.unit_weights(a);
  std::string out;
  for (LayerIndex a = 0; a < g.num_layers(); ++a) {
    std::string label = std::to_string(g.layer_label(a));
    for (const Edge& e : g.edges(a)) {
      out += label;
      out += ' ';
      out += g.token(e.src);
      out += ' ';
      out += g.token(e.dst);
      if (weighted) {
        out += ' ';
        out += format_weight(e.weight);
      }
      out += '\n';
    }
  }
  return out;
}

void save_multiplex(const MultiplexGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph file '" + path.string() + "'");
  out << format_multiplex(g);
  if (!out) throw IoError("failed writing graph file '" + path.string() + "'");
}

MultiplexGraph collapse(const MultiplexGraph& g) {
  GraphBuilder builder(1, g.directed());
  for (const auto& t : g.tokens()) builder.add_node(t);
  builder.set_coupling_weight(g.coupling_weight());
  for (LayerIndex a = 0; a < g.num_layers(); ++a)
    for (const Edge& e : g.edges(a)) builder.add_edge(0, e.src, e.dst, e.weight);
  return builder.build();
}

MultiplexGraph select_layers(const MultiplexGraph& g, std::span<const LayerIndex> layers) {
  GraphBuilder builder(layers.size(), g.directed());
  for (const auto& t : g.tokens()) builder.add_node(t);
  builder.set_coupling_weight(g.coupling_weight());
  std::vector<std::int64_t> labels;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    labels.push_back(g.layer_label(layers[k]));
    for (const Edge& e : g.edges(layers[k]))
      builder.add_edge(static_cast<LayerIndex>(k), e.src, e.dst, e.weight);
  }
  builder.set_layer_labels(std::move(labels));
  return builder.build();
}

StrengthTable::StrengthTable(std::size_t num_nodes, std::size_t num_layers)
    : nodes_(num_nodes),
      layers_(num_layers),
      intra_(num_nodes * num_layers, 0.0),
      total_(num_nodes * num_layers, 0.0) {}

StrengthTable strengths(const MultiplexGraph& g) {
  const std::size_t n = g.num_nodes();
  const std::size_t L = g.num_layers();
  StrengthTable st(n, L);
  for (NodeIndex i = 0; i < n; ++i) {
    for (LayerIndex a = 0; a < L; ++a) {
      double intra = 0.0;
      for (const Neighbor& nb : g.neighbors(i, a)) intra += nb.weight;
      double coupling = 0.0;
      for (LayerIndex b = 0; b < L; ++b) coupling += g.coupling(i, a, b);
      st.intra_[i * L + a] = intra;
      st.total_[i * L + a] = intra + coupling;
      st.s_max_ = std::max(st.s_max_, intra + coupling);
    }
  }
  return st;
}

}  // namespace multinet

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
#include "multinet/walk.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "multinet/error.hpp"

namespace multinet {

std::string_view to_string(WalkStrategy s) {
  switch (s) {
    case WalkStrategy::Classical: return "classical";
    case WalkStrategy::Diffusive: return "diffusive";
    case WalkStrategy::Physical: return "physical";
    case WalkStrategy::MultiNetUniform: return "multinet";
    case WalkStrategy::SingleLayerUniform: return "collapsed";
  }
  return "unknown";
}

WalkStrategy parse_strategy(std::string_view token) {
  if (token == "classical") return WalkStrategy::Classical;
  if (token == "diffusive") return WalkStrategy::Diffusive;
  if (token == "physical") return WalkStrategy::Physical;
  if (token == "multinet") return WalkStrategy::MultiNetUniform;
  if (token == "collapsed") return WalkStrategy::SingleLayerUniform;
  throw ValidationError("unknown walk strategy '" + std::string(token) +
                        "' (expected classical|diffusive|physical|multinet|collapsed)");
}

namespace {

void require_single_layer(const MultiplexGraph& g, WalkStrategy strategy) {
  if (strategy == WalkStrategy::SingleLayerUniform && g.num_layers() != 1)
    throw ValidationError("the collapsed strategy needs a one-layer graph; collapse the multiplex first");
}

}  // namespace

std::vector<Transition> transition_row(const MultiplexGraph& g, const StrengthTable& st,
                                       WalkStrategy strategy, WalkState from) {
  require_single_layer(g, strategy);
  const NodeIndex i = from.node;
  const LayerIndex a = from.layer;
  std::vector<Transition> row;
  if (!g.active(i, a)) return row;
  const auto L = static_cast<LayerIndex>(g.num_layers());

  switch (strategy) {
    case WalkStrategy::Classical: {
      const double s = st.total(i, a);
      for (const Neighbor& nb : g.neighbors(i, a)) row.push_back({{nb.node, a}, nb.weight / s});
      for (LayerIndex b = 0; b < L; ++b) {
        double d = g.coupling(i, a, b);
        if (d > 0.0) row.push_back({{i, b}, d / s});
      }
      break;
    }
    case WalkStrategy::Diffusive: {
      const double smax = st.s_max();
      for (const Neighbor& nb : g.neighbors(i, a)) row.push_back({{nb.node, a}, nb.weight / smax});
      for (LayerIndex b = 0; b < L; ++b) {
        double d = g.coupling(i, a, b);
        if (d <= 0.0) continue;
        double mass = b == a ? (smax + d - st.total(i, a)) / smax : d / smax;
        if (mass < 0.0) throw Error("internal: negative diffusive stay mass");
        if (mass > 0.0) row.push_back({{i, b}, mass});
      }
      break;
    }
    case WalkStrategy::Physical: {
      const double S_here = st.intra(i, a);
      double c = 0.0;
      for (LayerIndex b = 0; b < L; ++b) {
        double d = g.coupling(i, a, b);
        if (d <= 0.0) continue;
        for (const Neighbor& nb : g.neighbors(i, b)) {
          double mass = (nb.weight / st.total(i, b)) * (d / S_here);
          row.push_back({{nb.node, b}, mass});
          c += mass;
        }
      }
      for (auto& t : row) t.probability /= c;
      break;
    }
    case WalkStrategy::MultiNetUniform: {
      std::size_t layers_active = 0;
      for (LayerIndex b = 0; b < L; ++b) layers_active += g.active(i, b) ? 1 : 0;
      for (LayerIndex b = 0; b < L; ++b) {
        std::size_t deg = g.degree(i, b);
        if (deg == 0) continue;
        double p = 1.0 / (static_cast<double>(layers_active) * static_cast<double>(deg));
        for (const Neighbor& nb : g.neighbors(i, b))
          if (nb.node != i) row.push_back({{nb.node, b}, p});
      }
      break;
    }
    case WalkStrategy::SingleLayerUniform: {
      const double S = st.intra(i, a);
      for (const Neighbor& nb : g.neighbors(i, a)) row.push_back({{nb.node, a}, nb.weight / S});
      break;
    }
  }
  return row;
}

StepSampler::StepSampler(const MultiplexGraph& g, const StrengthTable& st, WalkStrategy strategy)
    : g_(&g), st_(&st), strategy_(strategy) {
  require_single_layer(g, strategy);
  if (st.num_nodes() != g.num_nodes() || st.num_layers() != g.num_layers())
    throw ValidationError("strength table does not match graph");
}

std::size_t StepSampler::pick_neighbor(NodeIndex i, LayerIndex a, double x) const {
  const std::size_t deg = g_->degree(i, a);
  std::size_t k;
  if (g_->unit_weights(a)) {
    k = static_cast<std::size_t>(x);
  } else {
    auto cum = g_->cumulative_weights(i, a);
    k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
  }
  return k < deg ? k : deg - 1;
}

std::optional<WalkState> StepSampler::pick(WalkState from, double u) const {
  const NodeIndex i = from.node;
  const LayerIndex a = from.layer;
  if (!g_->active(i, a)) return std::nullopt;
  const auto layers = g_->active_layers(i);
  const double c = g_->coupling_weight();

  switch (strategy_) {
    case WalkStrategy::Classical: {
      double x = u * st_->total(i, a);
      const double S = st_->intra(i, a);
      if (x < S) return WalkState{g_->neighbors(i, a)[pick_neighbor(i, a, x)].node, a};
      auto k = static_cast<std::size_t>((x - S) / c);
      if (k >= layers.size()) k = layers.size() - 1;
      return WalkState{i, layers[k]};
    }
    case WalkStrategy::Diffusive: {
      const double smax = st_->s_max();
      double x = u * smax;
      const double S = st_->intra(i, a);
      if (x < S) return WalkState{g_->neighbors(i, a)[pick_neighbor(i, a, x)].node, a};
      x -= S;
      for (std::size_t k = 0; k < layers.size(); ++k) {
        double mass = layers[k] == a ? smax + c - st_->total(i, a) : c;
        if (x < mass || k + 1 == layers.size()) return WalkState{i, layers[k]};
        x -= mass;
      }
      return WalkState{i, a};
    }
    case WalkStrategy::Physical: {
      double total = 0.0;
      for (LayerIndex b : layers) total += c * st_->intra(i, b) / st_->total(i, b);
      double x = u * total;
      for (std::size_t k = 0; k < layers.size(); ++k) {
        const LayerIndex b = layers[k];
        double mass = c * st_->intra(i, b) / st_->total(i, b);
        if (x < mass || k + 1 == layers.size()) {
          double y = std::clamp(x / mass, 0.0, 1.0) * st_->intra(i, b);
          return WalkState{g_->neighbors(i, b)[pick_neighbor(i, b, y)].node, b};
        }
        x -= mass;
      }
      return std::nullopt;
    }
    case WalkStrategy::MultiNetUniform: {
      double x = u * static_cast<double>(layers.size());
      auto k = static_cast<std::size_t>(x);
      if (k >= layers.size()) k = layers.size() - 1;
      const LayerIndex b = layers[k];
      auto nbrs = g_->neighbors(i, b);
      auto j = static_cast<std::size_t>((x - static_cast<double>(k)) * static_cast<double>(nbrs.size()));
      if (j >= nbrs.size()) j = nbrs.size() - 1;
      return WalkState{nbrs[j].node, b};
    }
    case WalkStrategy::SingleLayerUniform: {
      double x = u * st_->intra(i, a);
      return WalkState{g_->neighbors(i, a)[pick_neighbor(i, a, x)].node, a};
    }
  }
  return std::nullopt;
}

std::optional<WalkState> StepSampler::step(WalkState from, SplitMix64& rng) const {
  if (!g_->active(from.node, from.layer)) {
    auto layers = g_->active_layers(from.node);
    if (layers.empty()) return std::nullopt;
    from.layer = layers[uniform_index(rng, layers.size())];
  }
  return pick(from, uniform01(rng));
}

void WalkConfig::validate() const {
  if (walk_length < 1) throw ValidationError("walk length must be at least 1");
  if (walks_per_node < 1) throw ValidationError("walks per node must be at least 1");
}

namespace {

void walk_into(const StepSampler& sampler, WalkState start, std::size_t length, SplitMix64& rng,
               std::vector<std::uint32_t>& out) {
  out.push_back(start.node);
  WalkState state = start;
  for (std::size_t t = 0; t < length; ++t) {
    auto next = sampler.step(state, rng);
    if (!next) break;
    state = *next;
    out.push_back(state.node);
  }
}

}  // namespace

std::vector<NodeIndex> multiwalk(const StepSampler& sampler, WalkState start, std::size_t length,
                                 SplitMix64& rng) {
  const auto& g = sampler.graph();
  if (start.node >= g.num_nodes() || start.layer >= g.num_layers())
    throw IndexError("walk start out of range");
  if (!g.active(start.node, start.layer))
    throw InvalidStart("node '" + g.token(start.node) + "' has no edges in layer " +
                       std::to_string(g.layer_label(start.layer)));
  std::vector<NodeIndex> walk;
  walk.reserve(length + 1);
  walk_into(sampler, start, length, rng, walk);
  return walk;
}

std::vector<NodeIndex> multiwalk(const MultiplexGraph& g, const StrengthTable& st,
                                 WalkStrategy strategy, WalkState start, std::size_t length,
                                 SplitMix64& rng) {
  StepSampler sampler(g, st, strategy);
  return multiwalk(sampler, start, length, rng);
}

void Sequences::append(const Sequences& other) {
  std::size_t base = ids_.size();
  ids_.insert(ids_.end(), other.ids_.begin(), other.ids_.end());
  for (std::size_t k = 1; k < other.offsets_.size(); ++k) offsets_.push_back(base + other.offsets_[k]);
}

WalkCorpus generate_corpus(const MultiplexGraph& g, const StrengthTable& st, WalkStrategy strategy,
                           const WalkConfig& cfg) {
  cfg.validate();
  StepSampler sampler(g, st, strategy);

  struct Task {
    LayerIndex layer;
    std::uint32_t rep;
    NodeIndex node;
  };
  std::vector<Task> tasks;
  for (LayerIndex a = 0; a < g.num_layers(); ++a)
    for (std::uint32_t r = 0; r < cfg.walks_per_node; ++r)
      for (NodeIndex v = 0; v < g.num_nodes(); ++v)
        if (g.active(v, a)) tasks.push_back({a, r, v});

  std::size_t threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::max<std::size_t>(1, std::min(threads, tasks.size() / 64 + 1));

  std::vector<Sequences> parts(threads);
  auto run = [&](std::size_t part) {
    std::size_t begin = tasks.size() * part / threads;
    std::size_t end = tasks.size() * (part + 1) / threads;
    Sequences& out = parts[part];
    out.reserve(end - begin, (end - begin) * (cfg.walk_length + 1));
    std::vector<std::uint32_t> buf;
    buf.reserve(cfg.walk_length + 1);
    for (std::size_t k = begin; k < end; ++k) {
      const Task& t = tasks[k];
      SplitMix64 rng(derive_seed(cfg.seed, {t.layer, t.node, t.rep}));
      buf.clear();
      walk_into(sampler, {t.node, t.layer}, cfg.walk_length, rng, buf);
      out.push_back(buf);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t p = 0; p < threads; ++p) pool.emplace_back(run, p);
    for (auto& th : pool) th.join();
  }

  WalkCorpus corpus;
  corpus.tokens = g.tokens();
  if (threads == 1) {
    corpus.walks = std::move(parts[0]);
  } else {
    for (const auto& p : parts) corpus.walks.append(p);
  }
  corpus.meta.strategy = std::string(to_string(strategy));
  corpus.meta.walk_length = cfg.walk_length;
  corpus.meta.walks_per_node = cfg.walks_per_node;
  corpus.meta.seed = cfg.seed;
  corpus.meta.graph_fingerprint = g.fingerprint();
  return corpus;
}

std::string format_corpus(const WalkCorpus& corpus) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# strategy=%s l=%zu n=%zu seed=%" PRIu64 "\n",
                corpus.meta.strategy.c_str(), corpus.meta.walk_length, corpus.meta.walks_per_node,
                corpus.meta.seed);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# fingerprint=%016" PRIx64 " walks=%zu\n",
                corpus.meta.graph_fingerprint, corpus.walks.size());
  out += buf;
  for (std::size_t w = 0; w < corpus.walks.size(); ++w) {
    auto walk = corpus.walks[w];
    for (std::size_t t = 0; t < walk.size(); ++t) {
      if (t) out += ' ';
      out += corpus.tokens[walk[t]];
    }
    out += '\n';
  }
  return out;
}

void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file '" + path.string() + "'");
  out << format_corpus(corpus);
  if (!out) throw IoError("failed writing corpus file '" + path.string() + "'");
}

namespace {

void parse_header(std::string_view line, CorpusMeta& meta) {
  std::istringstream in{std::string(line.substr(1))};
  std::string kv;
  while (in >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    try {
      if (key == "strategy") meta.strategy = value;
      else if (key == "l") meta.walk_length = std::stoull(value);
      else if (key == "n") meta.walks_per_node = std::stoull(value);
      else if (key == "seed") meta.seed = std::stoull(value);
      else if (key == "fingerprint") meta.graph_fingerprint = std::stoull(value, nullptr, 16);
    } catch (const std::exception&) {
      throw ParseError("corpus header field '" + kv + "' is malformed");
    }
  }
}

}  // namespace

WalkCorpus parse_corpus(std::string_view text) {
  WalkCorpus corpus;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::uint32_t> walk;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (!line.empty() && line.front() == '#') {
      parse_header(line, corpus.meta);
      continue;
    }
    walk.clear();
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      std::size_t b = k;
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      if (k == b) continue;
      std::string tok(line.substr(b, k - b));
      auto [it, inserted] = index.emplace(tok, static_cast<std::uint32_t>(corpus.tokens.size()));
      if (inserted) corpus.tokens.push_back(tok);
      walk.push_back(it->second);
    }
    if (!walk.empty()) corpus.walks.push_back(walk);
  }
  return corpus;
}

WalkCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

}  // namespace multinet

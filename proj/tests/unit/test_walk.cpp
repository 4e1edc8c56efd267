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
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "multinet/error.hpp"
#include "multinet/random.hpp"
#include "multinet/synthetic.hpp"
#include "multinet/walk.hpp"
#include "supra_oracle.hpp"

using namespace multinet;
using testing::graph_from;

namespace {

std::vector<oracle::RawEdge> raw_edges(const MultiplexGraph& g) {
  std::vector<oracle::RawEdge> out;
  for (LayerIndex a = 0; a < g.num_layers(); ++a)
    for (const Edge& e : g.edges(a)) out.push_back({a, e.src, e.dst, e.weight});
  return out;
}

double row_sum(const std::vector<Transition>& row) {
  double s = 0.0;
  for (const auto& t : row) s += t.probability;
  return s;
}

double prob_to(const std::vector<Transition>& row, NodeIndex j, LayerIndex b) {
  double p = 0.0;
  for (const auto& t : row)
    if (t.to.node == j && t.to.layer == b) p += t.probability;
  return p;
}

constexpr WalkStrategy kMulti[] = {WalkStrategy::Classical, WalkStrategy::Diffusive, WalkStrategy::Physical,
                                   WalkStrategy::MultiNetUniform};

}  // namespace

TEST_SUITE("walkers") {

TEST_CASE("strategy tokens") {
  CHECK(parse_strategy("classical") == WalkStrategy::Classical);
  CHECK(parse_strategy("diffusive") == WalkStrategy::Diffusive);
  CHECK(parse_strategy("physical") == WalkStrategy::Physical);
  CHECK(parse_strategy("multinet") == WalkStrategy::MultiNetUniform);
  CHECK(parse_strategy("collapsed") == WalkStrategy::SingleLayerUniform);
  CHECK_THROWS_AS(parse_strategy("Physical"), ValidationError);
  for (auto s : kMulti) CHECK(parse_strategy(to_string(s)) == s);
}

TEST_CASE("multinet: degree 2 in each of 2 layers gives four targets at 1/4") {
  auto g = graph_from("0 i a\n0 i b\n1 i c\n1 i d\n");
  auto st = strengths(g);
  auto row = transition_row(g, st, WalkStrategy::MultiNetUniform, {*g.find("i"), 0});
  REQUIRE(row.size() == 4);
  for (const auto& t : row) CHECK(t.probability == 0.25);
}

TEST_CASE("classical on one layer: stay and each neighbor at 1/(k+1)") {
  auto g = graph_from("0 i a\n0 i b\n0 i c\n");
  auto st = strengths(g);
  auto i = *g.find("i");
  auto row = transition_row(g, st, WalkStrategy::Classical, {i, 0});
  REQUIRE(row.size() == 4);
  CHECK(prob_to(row, i, 0) == doctest::Approx(0.25).epsilon(1e-15));
  for (const char* t : {"a", "b", "c"}) CHECK(prob_to(row, *g.find(t), 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("diffusive row at the s_max state") {
  auto g = graph_from("0 h a\n0 h b\n0 h c\n1 h a\n0 a b\n1 b c\n");
  auto st = strengths(g);
  auto h = *g.find("h");
  CHECK(st.total(h, 0) == st.s_max());
  auto row = transition_row(g, st, WalkStrategy::Diffusive, {h, 0});
  // s = s_max, so the stay mass reduces to D / s_max.
  CHECK(prob_to(row, h, 0) == doctest::Approx(1.0 / st.s_max()).epsilon(1e-15));
  auto sup = oracle::build_supra(g.num_nodes(), 2, false, raw_edges(g), WalkStrategy::Diffusive);
  for (LayerIndex b = 0; b < 2; ++b)
    for (NodeIndex j = 0; j < g.num_nodes(); ++j)
      CHECK(std::abs(prob_to(row, j, b) - sup.at(sup.state(h, 0), sup.state(j, b))) < 1e-12);
}

TEST_CASE("every row matches the supra oracle") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const bool weighted = seed % 2 == 0;
    const bool directed = seed % 3 == 0;
    auto g = random_multiplex(12, 2 + seed % 2, 0.3, weighted, directed, seed);
    auto st = strengths(g);
    for (auto kind : kMulti) {
      auto sup = oracle::build_supra(g.num_nodes(), g.num_layers(), directed, raw_edges(g), kind);
      for (LayerIndex a = 0; a < g.num_layers(); ++a)
        for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
          auto row = transition_row(g, st, kind, {i, a});
          if (!g.active(i, a)) {
            CHECK(row.empty());
            continue;
          }
          CHECK(std::abs(row_sum(row) - 1.0) < 1e-12);
          for (LayerIndex b = 0; b < g.num_layers(); ++b)
            for (NodeIndex j = 0; j < g.num_nodes(); ++j)
              CHECK(std::abs(prob_to(row, j, b) - sup.at(sup.state(i, a), sup.state(j, b))) < 1e-12);
          for (const auto& t : row) {
            CHECK(t.probability > 0.0);
            if (kind == WalkStrategy::Classical || kind == WalkStrategy::Diffusive) {
              CHECK((t.to.node == i || t.to.layer == a));
            }
            if (kind == WalkStrategy::Physical || kind == WalkStrategy::MultiNetUniform) CHECK(t.to.node != i);
          }
        }
    }
  }
}

TEST_CASE("collapsed strategy needs one layer") {
  auto g = graph_from("0 a b\n1 b c\n");
  auto st = strengths(g);
  CHECK_THROWS_AS(transition_row(g, st, WalkStrategy::SingleLayerUniform, {0, 0}), ValidationError);
  auto c = collapse(g);
  auto cst = strengths(c);
  auto row = transition_row(c, cst, WalkStrategy::SingleLayerUniform, {*c.find("b"), 0});
  REQUIRE(row.size() == 2);
  CHECK(row[0].probability == 0.5);
}

TEST_CASE("path a-b: walk alternates") {
  auto g = graph_from("0 a b\n");
  auto st = strengths(g);
  SplitMix64 rng(1);
  auto a = *g.find("a"), b = *g.find("b");
  auto w = multiwalk(g, st, WalkStrategy::MultiNetUniform, {a, 0}, 3, rng);
  CHECK(w == std::vector<NodeIndex>{a, b, a, b});
}

TEST_CASE("zero-length walk is just the start") {
  auto g = graph_from("0 a b\n1 a c\n");
  auto st = strengths(g);
  for (auto kind : kMulti) {
    SplitMix64 rng(3);
    CHECK(multiwalk(g, st, kind, {0, 0}, 0, rng) == std::vector<NodeIndex>{0});
  }
}

TEST_CASE("isolated start is rejected") {
  auto g = graph_from("0 a b\n1 a c\n");
  auto st = strengths(g);
  SplitMix64 rng(0);
  CHECK_THROWS_AS(multiwalk(g, st, WalkStrategy::Classical, {*g.find("c"), 0}, 5, rng), InvalidStart);
  CHECK_THROWS_AS(multiwalk(g, st, WalkStrategy::Classical, {99, 0}, 5, rng), IndexError);
}

TEST_CASE("walk replays step by step through transition_row") {
  auto g = random_multiplex(10, 2, 0.35, true, true, 21);
  auto st = strengths(g);
  for (auto kind : kMulti) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      NodeIndex start = 0;
      while (!g.active(start, 0)) ++start;
      SplitMix64 rng(seed);
      auto walk = multiwalk(g, st, kind, {start, 0}, 30, rng);

      SplitMix64 replay(seed);
      std::vector<NodeIndex> expect{start};
      WalkState s{start, 0};
      for (int t = 0; t < 30; ++t) {
        if (!g.active(s.node, s.layer)) {
          std::vector<LayerIndex> layers;
          for (LayerIndex b = 0; b < g.num_layers(); ++b)
            if (g.active(s.node, b)) layers.push_back(b);
          if (layers.empty()) break;
          s.layer = layers[uniform_index(replay, layers.size())];
        }
        auto row = transition_row(g, st, kind, s);
        double u = uniform01(replay);
        double acc = 0.0;
        std::size_t k = 0;
        for (; k + 1 < row.size(); ++k) {
          acc += row[k].probability;
          if (u < acc) break;
        }
        s = row[k].to;
        expect.push_back(s.node);
      }
      CHECK(walk == expect);
    }
  }
}

TEST_CASE("dead ends relocate, then truncate") {
  // Directed: b has no out-edges in layer 0 but does in layer 1; c has none.
  auto g = graph_from("0 a b\n1 b c\n", {true, false});
  auto st = strengths(g);
  SplitMix64 rng(0);
  auto w = multiwalk(g, st, WalkStrategy::MultiNetUniform, {*g.find("a"), 0}, 10, rng);
  CHECK(w == std::vector<NodeIndex>{*g.find("a"), *g.find("b"), *g.find("c")});
}

TEST_CASE("corpus: n walks per active (node, layer)") {
  auto g = graph_from("0 v a\n1 v b\n2 a b\n");
  auto st = strengths(g);
  WalkConfig cfg;
  cfg.walks_per_node = 5;
  auto corpus = generate_corpus(g, st, WalkStrategy::MultiNetUniform, cfg);
  auto v = *g.find("v");
  std::size_t from_v = 0;
  for (std::size_t k = 0; k < corpus.walks.size(); ++k) from_v += corpus.walks[k][0] == v;
  CHECK(from_v == 10);

  auto r = random_multiplex(30, 3, 0.08, false, false, 4);
  auto rst = strengths(r);
  std::size_t active = 0;
  for (LayerIndex a = 0; a < r.num_layers(); ++a)
    for (NodeIndex i = 0; i < r.num_nodes(); ++i) active += r.active(i, a);
  for (auto kind : kMulti) {
    auto c = generate_corpus(r, rst, kind, cfg);
    CHECK(c.walks.size() == active * cfg.walks_per_node);
    for (std::size_t k = 0; k < c.walks.size(); ++k) {
      CHECK(c.walks[k].size() >= 1);
      CHECK(c.walks[k].size() <= cfg.walk_length + 1);
    }
  }
}

TEST_CASE("layer without edges contributes no walks") {
  GraphBuilder b(2, false);
  b.add_edge(0, "a", "b");
  auto g = b.build();
  WalkConfig cfg;
  cfg.walks_per_node = 3;
  auto c = generate_corpus(g, strengths(g), WalkStrategy::Classical, cfg);
  CHECK(c.walks.size() == 6);
}

TEST_CASE("corpus is deterministic and thread-count independent") {
  auto g = random_multiplex(60, 3, 0.1, true, false, 8);
  auto st = strengths(g);
  WalkConfig cfg;
  cfg.seed = 42;
  for (auto kind : kMulti) {
    auto c1 = generate_corpus(g, st, kind, cfg);
    auto c2 = generate_corpus(g, st, kind, cfg);
    cfg.threads = 4;
    auto c3 = generate_corpus(g, st, kind, cfg);
    cfg.threads = 1;
    CHECK(format_corpus(c1) == format_corpus(c2));
    CHECK(format_corpus(c1) == format_corpus(c3));
    cfg.seed = 43;
    CHECK(format_corpus(generate_corpus(g, st, kind, cfg)) != format_corpus(c1));
    cfg.seed = 42;
  }
}

TEST_CASE("walk seeds follow (layer, node, rep)") {
  auto g = random_multiplex(15, 2, 0.3, false, false, 2);
  auto st = strengths(g);
  WalkConfig cfg;
  cfg.seed = 7;
  cfg.walks_per_node = 2;
  auto corpus = generate_corpus(g, st, WalkStrategy::Physical, cfg);
  std::size_t k = 0;
  for (LayerIndex a = 0; a < g.num_layers(); ++a)
    for (std::size_t rep = 0; rep < 2; ++rep)
      for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
        if (!g.active(i, a)) continue;
        SplitMix64 rng(derive_seed(7, {a, i, rep}));
        auto w = multiwalk(g, st, WalkStrategy::Physical, {i, a}, cfg.walk_length, rng);
        auto got = corpus.walks[k++];
        CHECK(std::vector<NodeIndex>(got.begin(), got.end()) == w);
      }
  CHECK(k == corpus.walks.size());
}

TEST_CASE("corpus file round-trip and header") {
  auto g = graph_from("0 a b\n0 b c\n1 a c\n");
  WalkConfig cfg;
  cfg.seed = 7;
  auto c = generate_corpus(g, strengths(g), WalkStrategy::MultiNetUniform, cfg);
  auto text = format_corpus(c);
  CHECK(text.rfind("# strategy=multinet l=10 n=5 seed=7\n", 0) == 0);
  auto back = parse_corpus(text);
  CHECK(back.meta.strategy == "multinet");
  CHECK(back.meta.seed == 7);
  CHECK(back.meta.walk_length == 10);
  CHECK(back.meta.graph_fingerprint == g.fingerprint());
  CHECK(format_corpus(back) == text);
}

TEST_CASE("config validation") {
  WalkConfig cfg;
  cfg.walk_length = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.walk_length = 1;
  cfg.walks_per_node = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

}  // TEST_SUITE

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
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "doctest.h"
#include "helpers.hpp"
#include "multinet/error.hpp"
#include "multinet/graph.hpp"
#include "multinet/synthetic.hpp"

using namespace multinet;
using testing::graph_from;

TEST_SUITE("mgraph") {

TEST_CASE("three-line file") {
  auto g = graph_from("0 a b\n0 b c\n1 a c\n");
  CHECK(g.num_layers() == 2);
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges(0) == 2);
  CHECK(g.num_edges(1) == 1);
  CHECK(g.layer_label(0) == 0);
  CHECK(g.layer_label(1) == 1);
}

TEST_CASE("self-loops are dropped and counted") {
  LoadReport report;
  auto g = parse_multiplex("0 a a\n0 a b\n", {}, report);
  CHECK(report.self_loops_dropped == 1);
  CHECK(g.num_edges(0) == 1);
}

TEST_CASE("malformed line names its line number") {
  LoadReport report;
  try {
    parse_multiplex("# header\n0 a b\n0 a\n", {}, report);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_multiplex("x a b\n", {}, report), ParseError);
  CHECK_THROWS_AS(parse_multiplex("-1 a b\n", {}, report), ParseError);
  CHECK_THROWS_AS(parse_multiplex("0 a b 1 2\n", {}, report), ParseError);
}

TEST_CASE("negative weight and empty input are validation errors") {
  LoadReport report;
  CHECK_THROWS_AS(parse_multiplex("0 a b -2\n", {false, true}, report), ValidationError);
  CHECK_THROWS_AS(parse_multiplex("", {}, report), ValidationError);
  CHECK_THROWS_AS(parse_multiplex("# only a comment\n\n", {}, report), ValidationError);
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_multiplex("/nonexistent/dir/graph.edges"), IoError);
}

TEST_CASE("zero weights are dropped") {
  LoadReport report;
  auto g = parse_multiplex("0 a b 0\n0 b c 2\n", {false, true}, report);
  CHECK(report.zero_weights_dropped == 1);
  CHECK(g.num_edges(0) == 1);
}

TEST_CASE("duplicates merge by summing weights") {
  LoadReport report;
  auto g = parse_multiplex("0 a b 1.5\n0 b a 2\n", {false, true}, report);
  CHECK(report.duplicates_merged == 1);
  REQUIRE(g.num_edges(0) == 1);
  CHECK(g.edges(0)[0].weight == doctest::Approx(3.5));
}

TEST_CASE("neighbors") {
  auto g = graph_from("0 a b 2.5\n0 b c\n0 a c\n1 d a\n", {false, true});
  auto a = *g.find("a");
  auto b = *g.find("b");
  auto c = *g.find("c");
  auto d = *g.find("d");
  auto nb = g.neighbors(a, 0);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].node == b);
  CHECK(nb[0].weight == 2.5);
  CHECK(nb[1].node == c);
  CHECK(g.neighbors(d, 0).empty());
  CHECK_FALSE(g.active(d, 0));
  CHECK(g.active(d, 1));
  CHECK_THROWS_AS(g.neighbors(99, 0), IndexError);
  CHECK_THROWS_AS(g.neighbors(a, 5), IndexError);
}

TEST_CASE("neighbor lists are sorted and symmetric") {
  auto g = random_multiplex(40, 3, 0.15, true, false, 11);
  for (LayerIndex l = 0; l < g.num_layers(); ++l)
    for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
      auto nb = g.neighbors(i, l);
      CHECK(std::is_sorted(nb.begin(), nb.end(), [](auto& x, auto& y) { return x.node < y.node; }));
      for (const auto& e : nb) {
        auto back = g.neighbors(e.node, l);
        auto it = std::find_if(back.begin(), back.end(), [&](auto& x) { return x.node == i; });
        REQUIRE(it != back.end());
        CHECK(it->weight == e.weight);
        CHECK(e.weight > 0.0);
      }
    }
}

TEST_CASE("directed edges are one-way; presence counts in-edges") {
  auto g = graph_from("0 a b\n0 b c\n", {true, false});
  auto a = *g.find("a");
  auto c = *g.find("c");
  CHECK(g.neighbors(a, 0).size() == 1);
  CHECK(g.neighbors(c, 0).empty());
  CHECK(g.present(c, 0));
  CHECK_FALSE(g.active(c, 0));
}

TEST_CASE("strength of a degree-3 node present in two layers") {
  auto g = graph_from("0 i x\n0 i y\n0 i z\n1 i x\n");
  auto st = strengths(g);
  auto i = *g.find("i");
  CHECK(st.intra(i, 0) == 3.0);
  CHECK(st.total(i, 0) == 5.0);
  auto y = *g.find("y");
  CHECK(st.intra(y, 1) == 0.0);
  CHECK(st.total(y, 1) == 0.0);
}

TEST_CASE("s_max equals the exhaustive maximum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_multiplex(25, 2, 0.2, true, false, seed);
    auto st = strengths(g);
    double best = 0.0;
    for (NodeIndex i = 0; i < g.num_nodes(); ++i)
      for (LayerIndex a = 0; a < g.num_layers(); ++a) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(i, a)) s += nb.weight;
        CHECK(st.intra(i, a) == doctest::Approx(s).epsilon(1e-14));
        for (LayerIndex b = 0; b < g.num_layers(); ++b) s += (g.active(i, a) && g.active(i, b)) ? 1.0 : 0.0;
        CHECK(st.total(i, a) == doctest::Approx(s).epsilon(1e-14));
        CHECK(st.total(i, a) >= st.intra(i, a));
        best = std::max(best, s);
      }
    CHECK(st.s_max() == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("sum of intra strengths is twice the layer weight") {
  auto g = random_multiplex(30, 3, 0.2, true, false, 5);
  auto st = strengths(g);
  for (LayerIndex a = 0; a < g.num_layers(); ++a) {
    double sum = 0.0;
    for (NodeIndex i = 0; i < g.num_nodes(); ++i) sum += st.intra(i, a);
    CHECK(sum == doctest::Approx(2.0 * g.total_weight(a)).epsilon(1e-12));
  }
}

TEST_CASE("collapse unions layers and sums parallel edges") {
  auto g = graph_from("0 a b\n1 a b\n1 b c\n");
  auto c = collapse(g);
  CHECK(c.num_layers() == 1);
  auto edges = c.edges(0);
  REQUIRE(edges.size() == 2);
  auto a = *c.find("a"), b = *c.find("b"), cc = *c.find("c");
  for (const auto& e : edges) {
    if (e.src == a && e.dst == b) CHECK(e.weight == 2.0);
    else if (e.src == b && e.dst == cc) CHECK(e.weight == 1.0);
    else FAIL("unexpected edge");
  }
}

TEST_CASE("collapse of one layer is the identity; collapse is idempotent") {
  auto one = graph_from("0 a b\n0 b c 3\n", {false, true});
  CHECK(format_multiplex(collapse(one)) == format_multiplex(one));
  auto g = random_multiplex(30, 3, 0.2, true, false, 9);
  auto c1 = collapse(g);
  auto c2 = collapse(c1);
  CHECK(format_multiplex(c1) == format_multiplex(c2));
}

TEST_CASE("save and load round-trip") {
  testing::TempDir dir;
  auto g = random_multiplex(30, 3, 0.2, true, false, 3);
  save_multiplex(g, dir / "g.edges");
  auto h = load_multiplex(dir / "g.edges", {false, true});
  CHECK(h.num_layers() == g.num_layers());
  CHECK(h.num_edges() == g.num_edges());
  for (LayerIndex a = 0; a < g.num_layers(); ++a) {
    std::set<std::tuple<std::string, std::string, double>> eg, eh;
    for (const auto& e : g.edges(a)) {
      auto s = g.token(e.src), d = g.token(e.dst);
      if (s > d) std::swap(s, d);
      eg.insert({s, d, e.weight});
    }
    for (const auto& e : h.edges(a)) {
      auto s = h.token(e.src), d = h.token(e.dst);
      if (s > d) std::swap(s, d);
      eh.insert({s, d, e.weight});
    }
    CHECK(eg == eh);
  }
}

TEST_CASE("tokens form a bijection with dense indices") {
  auto g = graph_from("0 x y\n1 y z\n2 z w\n0 w x\n");
  std::set<std::string> seen(g.tokens().begin(), g.tokens().end());
  CHECK(seen.size() == g.num_nodes());
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) CHECK(*g.find(g.token(i)) == i);
}

TEST_CASE("non-contiguous layer labels are densely indexed") {
  auto g = graph_from("7 a b\n3 b c\n");
  CHECK(g.num_layers() == 2);
  CHECK(g.layer_label(0) == 3);
  CHECK(g.layer_label(1) == 7);
  CHECK(*g.find_layer(7) == 1);
  CHECK_FALSE(g.find_layer(5).has_value());
}

TEST_CASE("empty intersection is a warning, not an error") {
  LoadReport report;
  auto g = parse_multiplex("0 a b\n1 c d\n", {}, report);
  CHECK(report.empty_intersection);
  CHECK(g.intersection_size() == 0);
}

TEST_CASE("worm-profile fixture") {
  auto g = load_multiplex(std::string(MULTINET_DATA_DIR) + "/celegans_profile.edges");
  CHECK(g.num_layers() == 3);
  CHECK(g.num_nodes() == 279);
  CHECK(g.num_edges() == 5863);

  // Collapsed edge count by an independent pair-set union over the raw file.
  std::ifstream in(std::string(MULTINET_DATA_DIR) + "/celegans_profile.edges");
  std::set<std::pair<std::string, std::string>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string layer, u, v;
    is >> layer >> u >> v;
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    pairs.insert({u, v});
  }
  auto c = collapse(g);
  CHECK(c.num_layers() == 1);
  CHECK(c.num_nodes() == 279);
  CHECK(c.num_edges() == pairs.size());
}

TEST_CASE("select_layers keeps the node universe") {
  auto g = graph_from("0 a b\n1 b c\n2 c d\n");
  LayerIndex keep[] = {2, 0};
  auto h = select_layers(g, keep);
  CHECK(h.num_layers() == 2);
  CHECK(h.num_nodes() == g.num_nodes());
  CHECK(h.layer_label(0) == 2);
  CHECK(h.num_edges(1) == 1);
}

TEST_CASE("fingerprint tracks structure") {
  auto g = graph_from("0 a b\n1 b c\n");
  auto h = graph_from("0 a b\n1 b c\n");
  auto k = graph_from("0 a b\n1 a c\n");
  CHECK(g.fingerprint() == h.fingerprint());
  CHECK(g.fingerprint() != k.fingerprint());
}

TEST_CASE("builder rejects bad weights") {
  GraphBuilder b(1, false);
  CHECK_THROWS_AS(b.add_edge(0, "a", "b", -1.0), ValidationError);
  CHECK_THROWS_AS(b.add_edge(0, "a", "b", std::nan("")), ValidationError);
}

}  // TEST_SUITE

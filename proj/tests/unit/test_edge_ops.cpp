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
#include <vector>

#include "doctest.h"
#include "multinet/edge_ops.hpp"
#include "multinet/error.hpp"
#include "multinet/random.hpp"

using namespace multinet;
using V = std::vector<double>;

TEST_SUITE("edgeops") {

TEST_CASE("operator examples") {
  CHECK(edge_feature(EdgeOperator::Hadamard, V{1, 2}, V{3, 4}) == V{3, 8});
  CHECK(edge_feature(EdgeOperator::WeightedL2, V{1, 0}, V{0, 2}) == V{1, 4});
  CHECK(edge_feature(EdgeOperator::WeightedL1, V{1, 0}, V{0, 2}) == V{1, 2});
  V x{0.5, -1.25, 3};
  CHECK(edge_feature(EdgeOperator::Average, x, x) == x);
  CHECK(edge_feature(EdgeOperator::WeightedL1, x, x) == V{0, 0, 0});
  CHECK(edge_feature(EdgeOperator::WeightedL2, x, x) == V{0, 0, 0});
}

TEST_CASE("symmetry, sign and shape") {
  SplitMix64 rng(3);
  for (int t = 0; t < 100; ++t) {
    V a(7), b(7);
    for (auto& v : a) v = uniform01(rng) * 4 - 2;
    for (auto& v : b) v = uniform01(rng) * 4 - 2;
    for (auto op : kAllEdgeOperators) {
      auto ab = edge_feature(op, a, b);
      CHECK(ab == edge_feature(op, b, a));
      CHECK(ab.size() == a.size());
      if (op == EdgeOperator::WeightedL1 || op == EdgeOperator::WeightedL2)
        for (double v : ab) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(edge_feature(EdgeOperator::Hadamard, V{1, 2}, V{1}), ValidationError);
  CHECK_THROWS_AS(edge_feature(EdgeOperator::Hadamard, V{}, V{}), ValidationError);
}

TEST_CASE("operator tokens") {
  CHECK(parse_operator("hadamard") == EdgeOperator::Hadamard);
  CHECK(parse_operator("average") == EdgeOperator::Average);
  CHECK(parse_operator("l1") == EdgeOperator::WeightedL1);
  CHECK(parse_operator("l2") == EdgeOperator::WeightedL2);
  CHECK_THROWS_AS(parse_operator("L1"), ValidationError);
  auto list = parse_operator_list("hadamard,l1");
  CHECK(list == std::vector<EdgeOperator>{EdgeOperator::Hadamard, EdgeOperator::WeightedL1});
  CHECK_THROWS_AS(parse_operator_list("l1,l1"), ValidationError);
  CHECK_THROWS_AS(parse_operator_list(""), ValidationError);
  for (auto op : kAllEdgeOperators) CHECK(parse_operator(to_string(op)) == op);
}

}  // TEST_SUITE

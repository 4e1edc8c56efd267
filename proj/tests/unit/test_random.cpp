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
#include <set>
#include <vector>

#include "doctest.h"
#include "multinet/error.hpp"
#include "multinet/random.hpp"

using namespace multinet;

TEST_SUITE("random") {

TEST_CASE("uniform01 stays in [0, 1)") {
  SplitMix64 rng(1);
  double lo = 1, hi = 0;
  for (int k = 0; k < 100000; ++k) {
    double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-3);
  CHECK(hi > 1 - 1e-3);
}

TEST_CASE("derived seeds are distinct and order-sensitive") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b)
      for (std::uint64_t c = 0; c < 5; ++c) seen.insert(derive_seed(7, {a, b, c}));
  CHECK(seen.size() == 2000);
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) == derive_seed(1, {2}));
}

TEST_CASE("alias table frequencies") {
  std::vector<double> w{1, 0, 3, 6};
  AliasTable t(w);
  SplitMix64 rng(3);
  std::vector<double> hits(4, 0);
  const int n = 200000;
  for (int k = 0; k < n; ++k) hits[t.sample(rng)] += 1;
  CHECK(hits[1] == 0);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(hits[k] / n - w[k] / 10) < 0.01);
}

TEST_CASE("alias table rejects bad weights") {
  CHECK_THROWS_AS(AliasTable(std::vector<double>{}), ValidationError);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{0, 0}), ValidationError);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{1, -1}), ValidationError);
}

}  // TEST_SUITE

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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace multinet {

// Symmetric elementwise combinations of two node vectors into an edge vector.
enum class EdgeOperator { Hadamard, Average, WeightedL1, WeightedL2 };

inline constexpr EdgeOperator kAllEdgeOperators[] = {EdgeOperator::Hadamard, EdgeOperator::Average,
                                                     EdgeOperator::WeightedL1, EdgeOperator::WeightedL2};

// hadamard | average | l1 | l2
std::string_view to_string(EdgeOperator op);
EdgeOperator parse_operator(std::string_view token);
// Comma-separated list, e.g. "hadamard,l1".
std::vector<EdgeOperator> parse_operator_list(std::string_view list);

void edge_feature(EdgeOperator op, std::span<const double> fu, std::span<const double> fv,
                  std::span<double> out);
std::vector<double> edge_feature(EdgeOperator op, std::span<const double> fu, std::span<const double> fv);

}  // namespace multinet

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
#include "multinet/edge_ops.hpp"

#include <cmath>

#include "multinet/error.hpp"

namespace multinet {

std::string_view to_string(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::Hadamard: return "hadamard";
    case EdgeOperator::Average: return "average";
    case EdgeOperator::WeightedL1: return "l1";
    case EdgeOperator::WeightedL2: return "l2";
  }
  return "unknown";
}

EdgeOperator parse_operator(std::string_view token) {
  if (token == "hadamard") return EdgeOperator::Hadamard;
  if (token == "average") return EdgeOperator::Average;
  if (token == "l1") return EdgeOperator::WeightedL1;
  if (token == "l2") return EdgeOperator::WeightedL2;
  throw ValidationError("unknown edge operator '" + std::string(token) + "' (expected hadamard|average|l1|l2)");
}

std::vector<EdgeOperator> parse_operator_list(std::string_view list) {
  std::vector<EdgeOperator> ops;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string_view tok = list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!tok.empty()) {
      EdgeOperator op = parse_operator(tok);
      for (EdgeOperator seen : ops)
        if (seen == op) throw ValidationError("edge operator '" + std::string(tok) + "' listed twice");
      ops.push_back(op);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (ops.empty()) throw ValidationError("no edge operators given");
  return ops;
}

void edge_feature(EdgeOperator op, std::span<const double> fu, std::span<const double> fv,
                  std::span<double> out) {
  if (fu.size() != fv.size() || out.size() != fu.size())
    throw ValidationError("edge_feature: dimension mismatch (" + std::to_string(fu.size()) + " vs " +
                          std::to_string(fv.size()) + ")");
  if (fu.empty()) throw ValidationError("edge_feature: vectors must be non-empty");
  const std::size_t d = fu.size();
  switch (op) {
    case EdgeOperator::Hadamard:
      for (std::size_t k = 0; k < d; ++k) out[k] = fu[k] * fv[k];
      break;
    case EdgeOperator::Average:
      for (std::size_t k = 0; k < d; ++k) out[k] = (fu[k] + fv[k]) / 2.0;
      break;
    case EdgeOperator::WeightedL1:
      for (std::size_t k = 0; k < d; ++k) out[k] = std::abs(fu[k] - fv[k]);
      break;
    case EdgeOperator::WeightedL2:
      for (std::size_t k = 0; k < d; ++k) {
        double diff = fu[k] - fv[k];
        out[k] = diff * diff;
      }
      break;
  }
}

std::vector<double> edge_feature(EdgeOperator op, std::span<const double> fu, std::span<const double> fv) {
  std::vector<double> out(fu.size());
  edge_feature(op, fu, fv, out);
  return out;
}

}  // namespace multinet

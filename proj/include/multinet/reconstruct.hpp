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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multinet/edge_ops.hpp"
#include "multinet/graph.hpp"
#include "multinet/random.hpp"
#include "multinet/skipgram.hpp"
#include "multinet/walk.hpp"

namespace multinet {

using NodePair = std::pair<NodeIndex, NodeIndex>;

struct TargetSplit {
  MultiplexGraph train_graph;          // every layer except the target
  std::vector<NodePair> target_edges;  // src < dst for undirected graphs
  LayerIndex target = 0;
};

TargetSplit split_target(const MultiplexGraph& g, LayerIndex target);

// Labelled node pairs, 1 = edge of the target layer, 0 = non-edge.
struct LabeledPairs {
  std::vector<NodePair> pairs;
  std::vector<int> labels;

  std::size_t size() const { return pairs.size(); }
  std::size_t positives() const;
};

struct SampleConfig {
  double ratio = 1.0;           // negatives per positive
  double split_fraction = 0.5;  // share of each class that goes to training
};

struct SampledExamples {
  LabeledPairs train;
  LabeledPairs test;
  std::size_t positive_edges_excluded = 0;  // target edges touching ineligible nodes
  std::vector<std::string> warnings;
};

// Positives are the target edges between eligible nodes; negatives are
// distinct eligible pairs outside the target layer, drawn uniformly. Each
// class is split separately, so train and test keep the class balance.
SampledExamples sample_examples(std::span<const NodePair> target_edges, std::span<const NodeIndex> eligible,
                                bool directed, const SampleConfig& cfg, SplitMix64& rng);

struct ExampleSet {
  std::size_t dim = 0;
  std::vector<double> features;  // row-major, size() x dim
  std::vector<int> labels;
  std::vector<NodePair> pairs;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t r) const { return {features.data() + r * dim, dim}; }
};

// row_of_node[i] is node i's row in `emb`, or -1 when it has no embedding.
ExampleSet featurize(const LabeledPairs& pairs, const EmbeddingMatrix& emb,
                     std::span<const std::int64_t> row_of_node, EdgeOperator op);

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 1.0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;  // infinity norm at return

  double decision(std::span<const double> x) const;
  double probability(std::span<const double> x) const;
};

struct LogRegOptions {
  double tolerance = 1e-6;
  std::size_t max_iterations = 10000;
};

// (1/N) sum log(1 + exp(-y (w.x + b))) + (lambda/2) |w|^2 with y in {-1, +1};
// the bias is not regularized.
double logreg_loss(const ExampleSet& data, std::span<const double> w, double b, double lambda);
// Gradient with respect to (w, b); the last entry of the result is d/db.
std::vector<double> logreg_gradient(const ExampleSet& data, std::span<const double> w, double b, double lambda);

// Full-batch gradient descent with backtracking line search.
LogRegModel train_logreg(const ExampleSet& data, double lambda, const LogRegOptions& options = {});

// Mann-Whitney AUROC; each tied positive/negative pair counts one half.
double auroc(std::span<const double> scores, std::span<const int> labels);

struct OperatorScore {
  EdgeOperator op;
  double auroc;
};

struct StageTiming {
  std::string stage;
  double seconds;
};

struct EvalReport {
  std::string dataset;
  std::string strategy;
  std::vector<OperatorScore> scores;
  std::vector<StageTiming> timings;
  std::vector<std::pair<std::string, std::string>> config;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t nodes_without_embedding = 0;
  std::size_t positive_edges_excluded = 0;
  std::vector<std::string> warnings;

  double best_auroc() const;
  double auroc_of(EdgeOperator op) const;
};

struct EvalConfig {
  std::vector<EdgeOperator> operators{std::begin(kAllEdgeOperators), std::end(kAllEdgeOperators)};
  double lambda = 1.0;
  SampleConfig sampling;
  std::uint64_t seed = 0;
};

// Scores a trained embedding on reconstructing layer `target` of g. Tokens of
// g are matched to embedding rows by name.
EvalReport evaluate_embedding(const MultiplexGraph& g, LayerIndex target, const Embedding& emb,
                              const EvalConfig& cfg);

struct ReconstructionConfig {
  std::string dataset = "graph";
  LayerIndex target = 0;
  WalkStrategy strategy = WalkStrategy::MultiNetUniform;
  WalkConfig walk;
  TrainConfig train;
  EvalConfig eval;
  std::uint64_t seed = 0;  // overrides walk.seed, train.seed and eval.seed
};

struct ReconstructionArtifacts {
  WalkCorpus corpus;
  Embedding embedding;
};

// split_target -> generate_corpus on the remaining layers -> train -> evaluate
// every operator. WalkStrategy::SingleLayerUniform collapses the remaining
// layers first (the collapsed baseline).
EvalReport run_reconstruction(const MultiplexGraph& g, const ReconstructionConfig& cfg,
                              ReconstructionArtifacts* artifacts = nullptr);
// Same, loading the graph first; the report gains a leading "load" stage.
EvalReport run_reconstruction(const std::filesystem::path& graph_path, const LoadOptions& options,
                              const ReconstructionConfig& cfg, ReconstructionArtifacts* artifacts = nullptr);

// Long format: dataset,strategy,operator,auroc,stage,seconds. Operator rows
// leave stage/seconds empty; stage rows leave operator/auroc empty.
std::string format_report_csv(std::span<const EvalReport> reports, bool with_timings = true);
std::string format_report_table(const EvalReport& report);

}  // namespace multinet

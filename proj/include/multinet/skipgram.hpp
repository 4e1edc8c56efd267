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
#include <utility>
#include <vector>

#include "multinet/walk.hpp"

namespace multinet {

// Tokens that occur in a corpus, indexed densely in ascending corpus-id order.
struct Vocabulary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;        // occurrences in the corpus; 0 when loaded from an embedding file
  std::vector<std::int64_t> from_corpus_id; // corpus id -> vocabulary index, -1 if absent
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return tokens.size(); }
  std::optional<std::uint32_t> find(std::string_view token) const;
};

Vocabulary build_vocab(const WalkCorpus& corpus);
// Rewrites corpus ids as vocabulary indices.
Sequences encode(const WalkCorpus& corpus, const Vocabulary& vocab);

// (center, context) for every pair of positions at distance 1..window.
std::vector<std::pair<std::uint32_t, std::uint32_t>> context_pairs(std::span<const std::uint32_t> walk,
                                                                    std::size_t window);

// Input vectors f (the published embedding) and output vectors f' used by the
// softmax / negative-sampling objective. Row-major, one row per token.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  std::span<double> input(std::size_t r) { return {in_.data() + r * dim_, dim_}; }
  std::span<const double> input(std::size_t r) const { return {in_.data() + r * dim_, dim_}; }
  std::span<double> output(std::size_t r) { return {out_.data() + r * dim_, dim_}; }
  std::span<const double> output(std::size_t r) const { return {out_.data() + r * dim_, dim_}; }

  std::vector<double>& input_data() { return in_; }
  const std::vector<double>& input_data() const { return in_; }
  std::vector<double>& output_data() { return out_; }
  const std::vector<double>& output_data() const { return out_; }

  bool all_finite() const;

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> in_;
  std::vector<double> out_;
};

struct TrainConfig {
  std::size_t dim = 150;
  std::size_t window = 10;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::size_t negatives = 5;
  double noise_exponent = 0.75;
  std::uint64_t seed = 0;
  // Deterministic training runs on one thread. Otherwise `threads` workers
  // update the shared matrices without locks, and results vary run to run.
  bool deterministic = true;
  std::size_t threads = 1;

  void validate(std::size_t vocab_size) const;
};

// Input rows uniform in (-0.5/dim, 0.5/dim), output rows zero.
EmbeddingMatrix initialize_embedding(std::size_t rows, std::size_t dim, std::uint64_t seed);

// Skip-gram with negative sampling: one update per (center, context) pair,
// noise drawn from count^noise_exponent, learning rate decaying linearly
// from lr to lr/100 over the whole schedule.
EmbeddingMatrix train(const Sequences& encoded, const Vocabulary& vocab, const TrainConfig& cfg);

struct Embedding {
  Vocabulary vocab;
  EmbeddingMatrix matrix;
};

Embedding train(const WalkCorpus& corpus, const TrainConfig& cfg);

// ---- negative-sampling objective for a single pair ----

// log s(f'(v).f(u)) + sum_w log s(-f'(w).f(u))
double negative_sampling_objective(const EmbeddingMatrix& emb, std::uint32_t center,
                                   std::uint32_t context, std::span<const std::uint32_t> negatives);

struct NegativeSamplingGradient {
  std::vector<double> center_input;
  // Output-row gradients, one entry per distinct output row touched.
  std::vector<std::pair<std::uint32_t, std::vector<double>>> outputs;
};

NegativeSamplingGradient negative_sampling_gradient(const EmbeddingMatrix& emb, std::uint32_t center,
                                                    std::uint32_t context,
                                                    std::span<const std::uint32_t> negatives);

// In-place ascent step on the pair objective. `scratch` must hold dim values.
void negative_sampling_update(EmbeddingMatrix& emb, std::uint32_t center, std::uint32_t context,
                              std::span<const std::uint32_t> negatives, double lr,
                              std::span<double> scratch);

// ---- exact softmax (small-instance oracle) ----

inline constexpr std::size_t kExactSoftmaxMaxVocab = 10000;

// exp(f'(v).f(u)) / sum_w exp(f'(w).f(u))
double softmax_prob(const EmbeddingMatrix& emb, std::uint32_t v, std::uint32_t u);

// Sum over context pairs of log softmax_prob(context | center).
// Refuses vocabularies above kExactSoftmaxMaxVocab.
double log_likelihood(const EmbeddingMatrix& emb, const Sequences& encoded, std::size_t window);

// Gradient of log_likelihood with respect to input and output matrices.
void log_likelihood_gradient(const EmbeddingMatrix& emb, const Sequences& encoded, std::size_t window,
                             std::vector<double>& grad_input, std::vector<double>& grad_output);

// Full-batch gradient ascent on log_likelihood. Returns the objective before
// the first epoch and after each epoch.
std::vector<double> train_exact_softmax(EmbeddingMatrix& emb, const Sequences& encoded,
                                        std::size_t window, std::size_t epochs, double lr);

// ---- word2vec text format ----

// Line 1: "<count> <dim>", then "token v1 ... vd" per row (input vectors).
std::string format_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab);
void save_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab, const std::filesystem::path& path);
// Output vectors of the loaded matrix are zero.
Embedding parse_embeddings(std::string_view text);
Embedding load_embeddings(const std::filesystem::path& path);

}  // namespace multinet

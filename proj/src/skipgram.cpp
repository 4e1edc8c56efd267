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
#include "multinet/skipgram.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "multinet/error.hpp"
#include "multinet/random.hpp"

namespace multinet {

std::optional<std::uint32_t> Vocabulary::find(std::string_view token) const {
  auto it = index.find(std::string(token));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocab(const WalkCorpus& corpus) {
  if (corpus.walks.empty() || corpus.walks.total_ids() == 0)
    throw ValidationError("cannot build a vocabulary from an empty corpus");
  std::vector<std::uint64_t> counts(corpus.tokens.size(), 0);
  for (std::uint32_t id : corpus.walks.ids()) {
    if (id >= counts.size()) throw IndexError("corpus id " + std::to_string(id) + " has no token");
    ++counts[id];
  }
  Vocabulary vocab;
  vocab.from_corpus_id.assign(corpus.tokens.size(), -1);
  for (std::size_t id = 0; id < counts.size(); ++id) {
    if (counts[id] == 0) continue;
    auto v = static_cast<std::uint32_t>(vocab.tokens.size());
    vocab.from_corpus_id[id] = v;
    vocab.tokens.push_back(corpus.tokens[id]);
    vocab.counts.push_back(counts[id]);
    vocab.index.emplace(corpus.tokens[id], v);
  }
  return vocab;
}

Sequences encode(const WalkCorpus& corpus, const Vocabulary& vocab) {
  Sequences out;
  out.reserve(corpus.walks.size(), corpus.walks.total_ids());
  std::vector<std::uint32_t> buf;
  for (std::size_t w = 0; w < corpus.walks.size(); ++w) {
    buf.clear();
    for (std::uint32_t id : corpus.walks[w]) {
      std::int64_t v = id < vocab.from_corpus_id.size() ? vocab.from_corpus_id[id] : -1;
      if (v < 0) throw ValidationError("corpus token '" + corpus.tokens.at(id) + "' is not in the vocabulary");
      buf.push_back(static_cast<std::uint32_t>(v));
    }
    out.push_back(buf);
  }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> context_pairs(std::span<const std::uint32_t> walk,
                                                                    std::size_t window) {
  if (window < 1) throw ValidationError("context window must be at least 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  const std::size_t n = walk.size();
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t lo = t > window ? t - window : 0;
    std::size_t hi = std::min(n - 1, t + window);
    for (std::size_t s = lo; s <= hi; ++s)
      if (s != t) pairs.emplace_back(walk[t], walk[s]);
  }
  return pairs;
}

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t dim)
    : rows_(rows), dim_(dim), in_(rows * dim, 0.0), out_(rows * dim, 0.0) {}

bool EmbeddingMatrix::all_finite() const {
  auto finite = [](double x) { return std::isfinite(x); };
  return std::all_of(in_.begin(), in_.end(), finite) && std::all_of(out_.begin(), out_.end(), finite);
}

void TrainConfig::validate(std::size_t vocab_size) const {
  if (dim < 1) throw ValidationError("embedding dimension must be positive");
  if (window < 1) throw ValidationError("context window must be at least 1");
  if (epochs < 1) throw ValidationError("epochs must be positive");
  if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
  if (negatives < 1) throw ValidationError("negative samples must be positive");
  if (!(noise_exponent > 0.0)) throw ValidationError("noise exponent must be positive");
  if (vocab_size < 2) throw ValidationError("training needs at least two distinct tokens");
  if (dim >= vocab_size)
    throw ValidationError("embedding dimension " + std::to_string(dim) +
                          " must be smaller than the vocabulary size " + std::to_string(vocab_size));
}

EmbeddingMatrix initialize_embedding(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  EmbeddingMatrix emb(rows, dim);
  SplitMix64 rng(derive_seed(seed, {0x1417}));
  const double scale = 1.0 / static_cast<double>(dim);
  for (double& x : emb.input_data()) x = (uniform01(rng) - 0.5) * scale;
  return emb;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

void check_row(const EmbeddingMatrix& emb, std::uint32_t r) {
  if (r >= emb.rows()) throw IndexError("embedding row " + std::to_string(r) + " out of range");
}

// Coefficient of the pair objective's gradient with respect to x = f'(t).f(u):
// 1 - s(x) for the positive context, -s(x) for a noise sample.
double coefficient(double x, bool positive) { return positive ? 1.0 - sigmoid(x) : -sigmoid(x); }

}  // namespace

double negative_sampling_objective(const EmbeddingMatrix& emb, std::uint32_t center,
                                   std::uint32_t context, std::span<const std::uint32_t> negatives) {
  check_row(emb, center);
  check_row(emb, context);
  auto fu = emb.input(center);
  double obj = log_sigmoid(dot(emb.output(context), fu));
  for (std::uint32_t w : negatives) {
    check_row(emb, w);
    obj += log_sigmoid(-dot(emb.output(w), fu));
  }
  return obj;
}

NegativeSamplingGradient negative_sampling_gradient(const EmbeddingMatrix& emb, std::uint32_t center,
                                                    std::uint32_t context,
                                                    std::span<const std::uint32_t> negatives) {
  check_row(emb, center);
  check_row(emb, context);
  const std::size_t d = emb.dim();
  auto fu = emb.input(center);
  NegativeSamplingGradient grad;
  grad.center_input.assign(d, 0.0);
  std::map<std::uint32_t, std::vector<double>> outputs;

  auto accumulate = [&](std::uint32_t t, bool positive) {
    auto ft = emb.output(t);
    double g = coefficient(dot(ft, fu), positive);
    for (std::size_t k = 0; k < d; ++k) grad.center_input[k] += g * ft[k];
    auto& row = outputs[t];
    row.resize(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) row[k] += g * fu[k];
  };
  accumulate(context, true);
  for (std::uint32_t w : negatives) {
    check_row(emb, w);
    accumulate(w, false);
  }
  for (auto& [t, row] : outputs) grad.outputs.emplace_back(t, std::move(row));
  return grad;
}

void negative_sampling_update(EmbeddingMatrix& emb, std::uint32_t center, std::uint32_t context,
                              std::span<const std::uint32_t> negatives, double lr,
                              std::span<double> scratch) {
  const std::size_t d = emb.dim();
  auto fu = emb.input(center);
  std::fill(scratch.begin(), scratch.end(), 0.0);
  auto apply = [&](std::uint32_t t, bool positive) {
    auto ft = emb.output(t);
    double x = dot(ft, fu);
    if (!std::isfinite(x))
      throw NumericalError("non-finite score for pair (" + std::to_string(center) + ", " +
                           std::to_string(t) + "); lower the learning rate");
    double g = lr * coefficient(x, positive);
    for (std::size_t k = 0; k < d; ++k) scratch[k] += g * ft[k];
    for (std::size_t k = 0; k < d; ++k) ft[k] += g * fu[k];
  };
  apply(context, true);
  for (std::uint32_t w : negatives) apply(w, false);
  for (std::size_t k = 0; k < d; ++k) fu[k] += scratch[k];
}

namespace {

struct Schedule {
  double lr0;
  double total;
  double at(double done) const {
    double floor = lr0 / 100.0;
    double p = total > 0.0 ? std::min(1.0, done / total) : 1.0;
    return lr0 - (lr0 - floor) * p;
  }
};

AliasTable noise_table(const Vocabulary& vocab, double exponent) {
  std::vector<double> w(vocab.size());
  for (std::size_t k = 0; k < vocab.size(); ++k)
    w[k] = std::pow(static_cast<double>(vocab.counts[k]), exponent);
  return AliasTable(w);
}

// Trains on walks [begin, end) for one epoch. `done` counts processed
// positions across all workers and drives the learning rate.
void train_range(EmbeddingMatrix& emb, const Sequences& seqs, std::size_t begin, std::size_t end,
                 const TrainConfig& cfg, const AliasTable& noise, const Schedule& schedule,
                 SplitMix64& rng, std::atomic<std::size_t>& done) {
  std::vector<double> scratch(emb.dim());
  std::vector<std::uint32_t> negs;
  negs.reserve(cfg.negatives);
  std::size_t local = 0;
  double lr = schedule.at(static_cast<double>(done.load(std::memory_order_relaxed)));
  for (std::size_t w = begin; w < end; ++w) {
    auto walk = seqs[w];
    const std::size_t n = walk.size();
    for (std::size_t t = 0; t < n; ++t) {
      if (++local == 256) {
        lr = schedule.at(static_cast<double>(done.fetch_add(local, std::memory_order_relaxed) + local));
        local = 0;
      }
      const std::size_t lo = t > cfg.window ? t - cfg.window : 0;
      const std::size_t hi = std::min(n - 1, t + cfg.window);
      for (std::size_t s = lo; s <= hi; ++s) {
        if (s == t) continue;
        negs.clear();
        for (std::size_t m = 0; m < cfg.negatives; ++m) {
          auto nw = static_cast<std::uint32_t>(noise.sample(rng));
          if (nw != walk[s]) negs.push_back(nw);
        }
        negative_sampling_update(emb, walk[t], walk[s], negs, lr, scratch);
      }
    }
  }
  done.fetch_add(local, std::memory_order_relaxed);
}

}  // namespace

EmbeddingMatrix train(const Sequences& encoded, const Vocabulary& vocab, const TrainConfig& cfg) {
  cfg.validate(vocab.size());
  for (std::uint32_t id : encoded.ids())
    if (id >= vocab.size()) throw IndexError("encoded corpus refers to token " + std::to_string(id));

  EmbeddingMatrix emb = initialize_embedding(vocab.size(), cfg.dim, cfg.seed);
  const AliasTable noise = noise_table(vocab, cfg.noise_exponent);
  const Schedule schedule{cfg.learning_rate,
                          static_cast<double>(cfg.epochs) * static_cast<double>(encoded.total_ids())};
  std::atomic<std::size_t> done{0};

  std::size_t threads = cfg.deterministic ? 1 : cfg.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<std::size_t>(1, std::min(threads, encoded.size()));

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (threads == 1) {
      SplitMix64 rng(derive_seed(cfg.seed, {0x5eed, epoch}));
      train_range(emb, encoded, 0, encoded.size(), cfg, noise, schedule, rng, done);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t p = 0; p < threads; ++p) {
        pool.emplace_back([&, p] {
          SplitMix64 rng(derive_seed(cfg.seed, {0x5eed, epoch, p}));
          std::size_t b = encoded.size() * p / threads;
          std::size_t e = encoded.size() * (p + 1) / threads;
          train_range(emb, encoded, b, e, cfg, noise, schedule, rng, done);
        });
      }
      for (auto& th : pool) th.join();
    }
  }
  if (!emb.all_finite()) throw NumericalError("training produced non-finite embedding values");
  return emb;
}

Embedding train(const WalkCorpus& corpus, const TrainConfig& cfg) {
  Embedding out;
  out.vocab = build_vocab(corpus);
  out.matrix = train(encode(corpus, out.vocab), out.vocab, cfg);
  return out;
}

namespace {

// log sum_w exp(f'(w).f(u)), with max subtraction.
double log_partition(const EmbeddingMatrix& emb, std::uint32_t u, std::vector<double>& scores) {
  auto fu = emb.input(u);
  scores.resize(emb.rows());
  double mx = -INFINITY;
  for (std::size_t w = 0; w < emb.rows(); ++w) {
    scores[w] = dot(emb.output(w), fu);
    mx = std::max(mx, scores[w]);
  }
  double s = 0.0;
  for (double x : scores) s += std::exp(x - mx);
  return mx + std::log(s);
}

void require_small(const EmbeddingMatrix& emb) {
  if (emb.rows() > kExactSoftmaxMaxVocab)
    throw ValidationError("exact softmax is limited to " + std::to_string(kExactSoftmaxMaxVocab) +
                          " tokens (got " + std::to_string(emb.rows()) +
                          "); it is a test oracle, train with negative sampling instead");
}

// Per-center pair counts: center -> (number of pairs, context -> count).
std::map<std::uint32_t, std::pair<double, std::map<std::uint32_t, double>>> pair_counts(
    const Sequences& encoded, std::size_t window) {
  std::map<std::uint32_t, std::pair<double, std::map<std::uint32_t, double>>> counts;
  for (std::size_t w = 0; w < encoded.size(); ++w) {
    for (auto [u, v] : context_pairs(encoded[w], window)) {
      auto& entry = counts[u];
      entry.first += 1.0;
      entry.second[v] += 1.0;
    }
  }
  return counts;
}

}  // namespace

double softmax_prob(const EmbeddingMatrix& emb, std::uint32_t v, std::uint32_t u) {
  check_row(emb, u);
  check_row(emb, v);
  std::vector<double> scores;
  double lz = log_partition(emb, u, scores);
  return std::exp(scores[v] - lz);
}

double log_likelihood(const EmbeddingMatrix& emb, const Sequences& encoded, std::size_t window) {
  require_small(emb);
  std::vector<double> scores;
  double total = 0.0;
  for (const auto& [u, entry] : pair_counts(encoded, window)) {
    check_row(emb, u);
    double lz = log_partition(emb, u, scores);
    for (const auto& [v, c] : entry.second) {
      check_row(emb, v);
      total += c * (scores[v] - lz);
    }
  }
  return total;
}

void log_likelihood_gradient(const EmbeddingMatrix& emb, const Sequences& encoded, std::size_t window,
                             std::vector<double>& grad_input, std::vector<double>& grad_output) {
  require_small(emb);
  const std::size_t d = emb.dim();
  grad_input.assign(emb.rows() * d, 0.0);
  grad_output.assign(emb.rows() * d, 0.0);
  std::vector<double> scores;
  for (const auto& [u, entry] : pair_counts(encoded, window)) {
    const double n_u = entry.first;
    double lz = log_partition(emb, u, scores);
    auto fu = emb.input(u);
    double* gu = grad_input.data() + u * d;
    for (std::size_t w = 0; w < emb.rows(); ++w) {
      double p = std::exp(scores[w] - lz);
      auto it = entry.second.find(static_cast<std::uint32_t>(w));
      double c = it == entry.second.end() ? 0.0 : it->second;
      double coef = c - n_u * p;
      auto fw = emb.output(w);
      double* gw = grad_output.data() + w * d;
      for (std::size_t k = 0; k < d; ++k) {
        gu[k] += coef * fw[k];
        gw[k] += coef * fu[k];
      }
    }
  }
}

std::vector<double> train_exact_softmax(EmbeddingMatrix& emb, const Sequences& encoded,
                                        std::size_t window, std::size_t epochs, double lr) {
  std::vector<double> history{log_likelihood(emb, encoded, window)};
  std::vector<double> gi, go;
  for (std::size_t e = 0; e < epochs; ++e) {
    log_likelihood_gradient(emb, encoded, window, gi, go);
    auto& in = emb.input_data();
    auto& out = emb.output_data();
    for (std::size_t k = 0; k < in.size(); ++k) in[k] += lr * gi[k];
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += lr * go[k];
    history.push_back(log_likelihood(emb, encoded, window));
  }
  return history;
}

std::string format_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab) {
  if (emb.rows() != vocab.size()) throw ValidationError("embedding rows do not match vocabulary size");
  std::string out = std::to_string(emb.rows()) + " " + std::to_string(emb.dim()) + "\n";
  char buf[32];
  for (std::size_t r = 0; r < emb.rows(); ++r) {
    out += vocab.tokens[r];
    for (double x : emb.input(r)) {
      std::snprintf(buf, sizeof(buf), " %.9g", x);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void save_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab, const std::filesystem::path& path) {
  std::string text = format_embeddings(emb, vocab);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write embedding file '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing embedding file '" + path.string() + "'");
}

Embedding parse_embeddings(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("embedding file is empty");
  std::size_t count = 0, dim = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> count >> dim) || (header >> extra) || dim == 0)
      throw ParseError("embedding header must be '<count> <dim>', got '" + line + "'");
  }
  Embedding e;
  e.matrix = EmbeddingMatrix(count, dim);
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> values;
    std::string f;
    while (fields >> f) {
      double x = 0.0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || p != f.data() + f.size())
        throw ParseError("embedding row " + std::to_string(row + 1) + " (line " + std::to_string(line_no) +
                         "): '" + f + "' is not a number");
      values.push_back(x);
    }
    if (values.size() != dim)
      throw ParseError("embedding row " + std::to_string(row + 1) + " (line " + std::to_string(line_no) +
                       ", token '" + token + "') has " + std::to_string(values.size()) +
                       " values, expected " + std::to_string(dim));
    if (row >= count)
      throw ParseError("embedding file has more rows than the header count " + std::to_string(count));
    if (!e.vocab.index.emplace(token, static_cast<std::uint32_t>(row)).second)
      throw ParseError("embedding row " + std::to_string(row + 1) + ": duplicate token '" + token + "'");
    e.vocab.tokens.push_back(token);
    e.vocab.counts.push_back(0);
    std::copy(values.begin(), values.end(), e.matrix.input(row).begin());
    ++row;
  }
  if (row != count)
    throw ParseError("embedding header promises " + std::to_string(count) + " rows, file has " +
                     std::to_string(row));
  e.vocab.from_corpus_id.resize(count);
  for (std::size_t k = 0; k < count; ++k) e.vocab.from_corpus_id[k] = static_cast<std::int64_t>(k);
  return e;
}

Embedding load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str());
}

}  // namespace multinet

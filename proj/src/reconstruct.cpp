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
#include "multinet/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "multinet/error.hpp"

namespace multinet {

TargetSplit split_target(const MultiplexGraph& g, LayerIndex target) {
  if (g.num_layers() < 2)
    throw ValidationError("reconstruction needs at least two layers (got " + std::to_string(g.num_layers()) + ")");
  if (target >= g.num_layers())
    throw ValidationError("target layer index " + std::to_string(target) + " out of range");
  if (g.num_edges(target) == 0)
    throw ValidationError("target layer " + std::to_string(g.layer_label(target)) + " has no edges");
  std::vector<LayerIndex> keep;
  for (LayerIndex a = 0; a < g.num_layers(); ++a)
    if (a != target) keep.push_back(a);
  TargetSplit split;
  split.train_graph = select_layers(g, keep);
  split.target = target;
  for (const Edge& e : g.edges(target)) split.target_edges.emplace_back(e.src, e.dst);
  return split;
}

std::size_t LabeledPairs::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

namespace {

std::uint64_t pair_key(NodeIndex u, NodeIndex v, bool directed) {
  if (!directed && v < u) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

SampledExamples sample_examples(std::span<const NodePair> target_edges, std::span<const NodeIndex> eligible,
                                bool directed, const SampleConfig& cfg, SplitMix64& rng) {
  if (!(cfg.ratio > 0.0)) throw ValidationError("negative ratio must be positive");
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
    throw ValidationError("split fraction must lie strictly between 0 and 1");

  SampledExamples out;
  std::vector<NodeIndex> nodes(eligible.begin(), eligible.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto is_eligible = [&](NodeIndex v) { return std::binary_search(nodes.begin(), nodes.end(), v); };

  std::unordered_set<std::uint64_t> edge_keys;
  std::vector<NodePair> positives;
  for (auto [u, v] : target_edges) {
    if (u == v) continue;
    if (!is_eligible(u) || !is_eligible(v)) {
      ++out.positive_edges_excluded;
      continue;
    }
    if (edge_keys.insert(pair_key(u, v, directed)).second) {
      if (!directed && v < u) std::swap(u, v);
      positives.emplace_back(u, v);
    }
  }
  if (positives.empty()) throw ValidationError("no target edges between nodes that have embeddings");

  const double m = static_cast<double>(nodes.size());
  const double all_pairs = directed ? m * (m - 1.0) : m * (m - 1.0) / 2.0;
  const auto available = static_cast<std::size_t>(all_pairs) - positives.size();
  auto wanted = static_cast<std::size_t>(std::llround(cfg.ratio * static_cast<double>(positives.size())));
  if (wanted > available) {
    out.warnings.push_back("only " + std::to_string(available) + " non-edges available, wanted " +
                           std::to_string(wanted));
    wanted = available;
  }
  if (wanted == 0)
    throw ValidationError("the target layer is complete on the eligible nodes; no non-edges to sample");

  std::vector<NodePair> negatives;
  negatives.reserve(wanted);
  if (2 * wanted >= available) {
    // Dense target layer: enumerate the complement and take a random subset.
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = directed ? 0 : a + 1; b < nodes.size(); ++b)
        if (a != b && !edge_keys.count(pair_key(nodes[a], nodes[b], directed)))
          negatives.emplace_back(nodes[a], nodes[b]);
    shuffle(negatives, rng);
    negatives.resize(wanted);
  } else {
    std::unordered_set<std::uint64_t> chosen;
    while (negatives.size() < wanted) {
      NodeIndex u = nodes[uniform_index(rng, nodes.size())];
      NodeIndex v = nodes[uniform_index(rng, nodes.size())];
      if (u == v) continue;
      std::uint64_t key = pair_key(u, v, directed);
      if (edge_keys.count(key) || !chosen.insert(key).second) continue;
      if (!directed && v < u) std::swap(u, v);
      negatives.emplace_back(u, v);
    }
  }

  shuffle(positives, rng);
  auto split_into = [&](const std::vector<NodePair>& items, int label) {
    auto n_train = static_cast<std::size_t>(std::llround(cfg.split_fraction * static_cast<double>(items.size())));
    for (std::size_t k = 0; k < items.size(); ++k) {
      LabeledPairs& dst = k < n_train ? out.train : out.test;
      dst.pairs.push_back(items[k]);
      dst.labels.push_back(label);
    }
  };
  split_into(positives, 1);
  split_into(negatives, 0);
  return out;
}

ExampleSet featurize(const LabeledPairs& pairs, const EmbeddingMatrix& emb,
                     std::span<const std::int64_t> row_of_node, EdgeOperator op) {
  ExampleSet set;
  set.dim = emb.dim();
  set.features.resize(pairs.size() * emb.dim());
  set.labels = pairs.labels;
  set.pairs = pairs.pairs;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    auto [u, v] = pairs.pairs[r];
    if (u >= row_of_node.size() || v >= row_of_node.size() || row_of_node[u] < 0 || row_of_node[v] < 0)
      throw ValidationError("pair (" + std::to_string(u) + ", " + std::to_string(v) + ") has no embedding");
    edge_feature(op, emb.input(static_cast<std::size_t>(row_of_node[u])),
                 emb.input(static_cast<std::size_t>(row_of_node[v])),
                 std::span<double>(set.features.data() + r * set.dim, set.dim));
  }
  return set;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// log(1 + exp(-m))
double logistic_loss(double m) { return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m)); }

// s(-m)
double logistic_tail(double m) {
  if (m >= 0.0) {
    double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

double signed_label(int y) { return y == 1 ? 1.0 : -1.0; }

double half_sq_norm(std::span<const double> w) { return 0.5 * dot(w, w); }

}  // namespace

double LogRegModel::decision(std::span<const double> x) const { return dot(weights, x) + bias; }

double LogRegModel::probability(std::span<const double> x) const {
  double z = decision(x);
  return 1.0 / (1.0 + std::exp(-z));
}

double logreg_loss(const ExampleSet& data, std::span<const double> w, double b, double lambda) {
  double total = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r)
    total += logistic_loss(signed_label(data.labels[r]) * (dot(w, data.row(r)) + b));
  return total / static_cast<double>(data.size()) + lambda * half_sq_norm(w);
}

std::vector<double> logreg_gradient(const ExampleSet& data, std::span<const double> w, double b, double lambda) {
  const std::size_t d = data.dim;
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t r = 0; r < data.size(); ++r) {
    double y = signed_label(data.labels[r]);
    auto x = data.row(r);
    double coef = -y * logistic_tail(y * (dot(w, x) + b));
    for (std::size_t k = 0; k < d; ++k) g[k] += coef * x[k];
    g[d] += coef;
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t k = 0; k < d; ++k) g[k] = g[k] * inv_n + lambda * w[k];
  g[d] *= inv_n;
  return g;
}

LogRegModel train_logreg(const ExampleSet& data, double lambda, const LogRegOptions& options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be positive");
  if (data.size() == 0) throw ValidationError("logistic regression needs training examples");
  std::size_t pos = static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), 1));
  if (pos == 0 || pos == data.size()) throw ValidationError("logistic regression needs both classes");

  const std::size_t d = data.dim;
  LogRegModel model;
  model.lambda = lambda;
  model.weights.assign(d, 0.0);
  std::vector<double> w_try(d);

  double loss = logreg_loss(data, model.weights, model.bias, lambda);
  std::vector<double> g = logreg_gradient(data, model.weights, model.bias, lambda);
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  double step = 1.0;
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    if (inf_norm(g) < options.tolerance) break;
    const double g_sq = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    double next_loss = loss;
    double b_try = model.bias;
    bool accepted = false;
    while (step > 1e-20) {
      for (std::size_t k = 0; k < d; ++k) w_try[k] = model.weights[k] - step * g[k];
      b_try = model.bias - step * g[d];
      next_loss = logreg_loss(data, w_try, b_try, lambda);
      if (next_loss <= loss - 0.5 * step * g_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    model.weights.swap(w_try);
    model.bias = b_try;
    loss = next_loss;
    g = logreg_gradient(data, model.weights, model.bias, lambda);
    step = std::min(step * 2.0, 1e6);
  }
  model.iterations = it;
  model.gradient_norm = inf_norm(g);
  return model;
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ValidationError("auroc: scores and labels differ in length");
  std::size_t n_pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw ValidationError("auroc: labels must be 0 or 1");
    n_pos += y == 1 ? 1 : 0;
  }
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ValidationError("auroc is undefined without both classes");
  for (double s : scores)
    if (std::isnan(s)) throw ValidationError("auroc: NaN score");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of (1-based, tie-averaged) ranks of positives, kept doubled so it stays integral.
  std::uint64_t twice_rank_sum = 0;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi + 1 < order.size() && scores[order[hi + 1]] == scores[order[lo]]) ++hi;
    std::uint64_t twice_mid = (lo + 1) + (hi + 1);
    for (std::size_t k = lo; k <= hi; ++k)
      if (labels[order[k]] == 1) twice_rank_sum += twice_mid;
    lo = hi + 1;
  }
  const std::uint64_t twice_u = twice_rank_sum - n_pos * (n_pos + 1);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double EvalReport::best_auroc() const {
  double best = 0.0;
  for (const auto& s : scores) best = std::max(best, s.auroc);
  return best;
}

double EvalReport::auroc_of(EdgeOperator op) const {
  for (const auto& s : scores)
    if (s.op == op) return s.auroc;
  throw ValidationError("report has no score for operator " + std::string(to_string(op)));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

EvalReport evaluate_embedding(const MultiplexGraph& g, LayerIndex target, const Embedding& emb,
                              const EvalConfig& cfg) {
  if (cfg.operators.empty()) throw ValidationError("no edge operators requested");
  if (target >= g.num_layers())
    throw ValidationError("target layer index " + std::to_string(target) + " out of range");
  if (emb.matrix.rows() != emb.vocab.size()) throw ValidationError("embedding rows do not match vocabulary");

  EvalReport report;
  std::vector<std::int64_t> row_of_node(g.num_nodes(), -1);
  std::vector<NodeIndex> eligible;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    if (auto r = emb.vocab.find(g.token(i))) {
      row_of_node[i] = *r;
      eligible.push_back(i);
    } else {
      ++report.nodes_without_embedding;
    }
  }
  std::vector<NodePair> target_edges;
  for (const Edge& e : g.edges(target)) target_edges.emplace_back(e.src, e.dst);
  if (target_edges.empty())
    throw ValidationError("target layer " + std::to_string(g.layer_label(target)) + " has no edges");

  SplitMix64 rng(derive_seed(cfg.seed, {0x5a4d}));
  SampledExamples examples = sample_examples(target_edges, eligible, g.directed(), cfg.sampling, rng);
  report.positive_edges_excluded = examples.positive_edges_excluded;
  report.warnings = examples.warnings;
  report.train_rows = examples.train.size();
  report.test_rows = examples.test.size();
  if (examples.test.positives() == 0 || examples.test.positives() == examples.test.size())
    throw ValidationError("test split lacks one of the classes; the target layer is too small");

  for (EdgeOperator op : cfg.operators) {
    ExampleSet train_set = featurize(examples.train, emb.matrix, row_of_node, op);
    ExampleSet test_set = featurize(examples.test, emb.matrix, row_of_node, op);
    LogRegModel model = train_logreg(train_set, cfg.lambda);
    std::vector<double> scores(test_set.size());
    for (std::size_t r = 0; r < test_set.size(); ++r) scores[r] = model.decision(test_set.row(r));
    report.scores.push_back({op, auroc(scores, test_set.labels)});
  }
  return report;
}

EvalReport run_reconstruction(const MultiplexGraph& g, const ReconstructionConfig& cfg,
                              ReconstructionArtifacts* artifacts) {
  WalkConfig walk_cfg = cfg.walk;
  walk_cfg.seed = cfg.seed;
  TrainConfig train_cfg = cfg.train;
  train_cfg.seed = cfg.seed;
  EvalConfig eval_cfg = cfg.eval;
  eval_cfg.seed = cfg.seed;

  TargetSplit split = split_target(g, cfg.target);
  MultiplexGraph walk_graph = cfg.strategy == WalkStrategy::SingleLayerUniform
                                  ? collapse(split.train_graph)
                                  : std::move(split.train_graph);

  auto t0 = Clock::now();
  StrengthTable st = strengths(walk_graph);
  WalkCorpus corpus = generate_corpus(walk_graph, st, cfg.strategy, walk_cfg);
  double walk_seconds = seconds_since(t0);

  t0 = Clock::now();
  Embedding emb = train(corpus, train_cfg);
  double embed_seconds = seconds_since(t0);

  t0 = Clock::now();
  EvalReport report = evaluate_embedding(g, cfg.target, emb, eval_cfg);
  double eval_seconds = seconds_since(t0);

  report.dataset = cfg.dataset;
  report.strategy = std::string(to_string(cfg.strategy));
  report.timings = {{"walk", walk_seconds}, {"embed", embed_seconds}, {"eval", eval_seconds}};
  std::string ops;
  for (EdgeOperator op : eval_cfg.operators) ops += (ops.empty() ? "" : ",") + std::string(to_string(op));
  report.config = {
      {"target", std::to_string(g.layer_label(cfg.target))},
      {"strategy", report.strategy},
      {"l", std::to_string(walk_cfg.walk_length)},
      {"n", std::to_string(walk_cfg.walks_per_node)},
      {"d", std::to_string(train_cfg.dim)},
      {"window", std::to_string(train_cfg.window)},
      {"epochs", std::to_string(train_cfg.epochs)},
      {"lr", fmt_double(train_cfg.learning_rate)},
      {"negatives", std::to_string(train_cfg.negatives)},
      {"operators", ops},
      {"lambda", fmt_double(eval_cfg.lambda)},
      {"seed", std::to_string(cfg.seed)},
      {"deterministic", train_cfg.deterministic ? "true" : "false"},
  };
  if (artifacts) {
    artifacts->corpus = std::move(corpus);
    artifacts->embedding = std::move(emb);
  }
  return report;
}

EvalReport run_reconstruction(const std::filesystem::path& graph_path, const LoadOptions& options,
                              const ReconstructionConfig& cfg, ReconstructionArtifacts* artifacts) {
  auto t0 = Clock::now();
  MultiplexGraph g = load_multiplex(graph_path, options);
  double load_seconds = seconds_since(t0);
  EvalReport report = run_reconstruction(g, cfg, artifacts);
  report.timings.insert(report.timings.begin(), {"load", load_seconds});
  return report;
}

std::string format_report_csv(std::span<const EvalReport> reports, bool with_timings) {
  std::string out = "dataset,strategy,operator,auroc,stage,seconds\n";
  char buf[64];
  for (const EvalReport& r : reports) {
    for (const auto& s : r.scores) {
      std::snprintf(buf, sizeof(buf), "%.6f", s.auroc);
      out += r.dataset + "," + r.strategy + "," + std::string(to_string(s.op)) + "," + buf + ",,\n";
    }
    if (!with_timings) continue;
    for (const auto& t : r.timings) {
      std::snprintf(buf, sizeof(buf), "%.6f", t.seconds);
      out += r.dataset + "," + r.strategy + ",,," + t.stage + "," + buf + "\n";
    }
  }
  return out;
}

std::string format_report_table(const EvalReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "dataset: %s   strategy: %s\n", r.dataset.c_str(), r.strategy.c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf), "examples: %zu train / %zu test, %zu nodes without embedding\n", r.train_rows,
                r.test_rows, r.nodes_without_embedding);
  out += buf;
  out += "  operator    AUROC\n";
  for (const auto& s : r.scores) {
    std::snprintf(buf, sizeof(buf), "  %-10s  %.4f\n", std::string(to_string(s.op)).c_str(), s.auroc);
    out += buf;
  }
  out += "  stage       seconds\n";
  for (const auto& t : r.timings) {
    std::snprintf(buf, sizeof(buf), "  %-10s  %.3f\n", t.stage.c_str(), t.seconds);
    out += buf;
  }
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace multinet

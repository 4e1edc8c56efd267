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
// multinet: multiplex random walks, skip-gram embeddings and layer
// reconstruction from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 validation, 3 I/O.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "multinet/edge_ops.hpp"
#include "multinet/error.hpp"
#include "multinet/graph.hpp"
#include "multinet/reconstruct.hpp"
#include "multinet/skipgram.hpp"
#include "multinet/walk.hpp"

namespace fs = std::filesystem;
using namespace multinet;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct GraphArgs {
  std::string path;
  bool directed = false;
  bool weighted = false;
  double coupling = 1.0;
};

struct WalkArgs {
  std::string strategy = "multinet";
  std::size_t l = 10;
  std::size_t n = 5;
};

struct EmbedArgs {
  std::size_t d = 150;
  std::size_t window = 10;
  std::size_t epochs = 5;
  double lr = 0.025;
  std::size_t negatives = 5;
  bool deterministic = false;
};

struct EvalArgs {
  std::string operators = "hadamard,average,l1,l2";
  double lambda = 1.0;
  std::string dataset;
};

struct Common {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string config;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("MULTINET_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void add_graph_options(CLI::App* app, GraphArgs& g, bool required = true) {
  auto* opt = app->add_option("--graph", g.path, "Multiplex edge list: 'layer src dst [weight]' per line");
  if (required) opt->required();
  app->add_flag("--directed", g.directed, "Treat edges as directed");
  app->add_flag("--weighted", g.weighted, "Read the optional fourth column as the edge weight");
  app->add_option("--coupling", g.coupling, "Inter-layer coupling weight D for active node replicas")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_walk_options(CLI::App* app, WalkArgs& w) {
  app->add_option("--strategy", w.strategy, "classical | diffusive | physical | multinet | collapsed")
      ->capture_default_str();
  app->add_option("--l", w.l, "Walk length (steps per walk)")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--n", w.n, "Walks per node per layer")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_embed_options(CLI::App* app, EmbedArgs& e) {
  app->add_option("--d", e.d, "Embedding dimension")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--window", e.window, "Context window")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--epochs", e.epochs, "Passes over the corpus")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--lr", e.lr, "Initial learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--negatives", e.negatives, "Negative samples per pair")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_flag("--deterministic", e.deterministic, "Single-threaded, bit-reproducible training");
}

void add_eval_options(CLI::App* app, EvalArgs& e) {
  app->add_option("--operators", e.operators, "Comma-separated edge operators: hadamard,average,l1,l2")
      ->capture_default_str();
  app->add_option("--lambda", e.lambda, "L2 strength of the logistic regression")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--dataset", e.dataset, "Dataset name written to the report (default: graph file stem)");
}

void add_common_options(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores; env MULTINET_THREADS)")
      ->capture_default_str();
  app->add_option("--config", c.config, "key=value file with defaults for any of these flags");
}

MultiplexGraph load_graph(const GraphArgs& g, double* seconds = nullptr) {
  auto t0 = Clock::now();
  LoadReport report;
  MultiplexGraph graph = load_multiplex(g.path, {g.directed, g.weighted}, report);
  if (seconds) *seconds = seconds_since(t0);
  if (report.self_loops_dropped)
    std::cerr << "warning: dropped " << report.self_loops_dropped << " self-loop(s)\n";
  if (report.zero_weights_dropped)
    std::cerr << "warning: dropped " << report.zero_weights_dropped << " zero-weight edge(s)\n";
  if (report.empty_intersection) std::cerr << "warning: no node is active in every layer\n";
  if (g.coupling != 1.0) {
    GraphBuilder b(graph.num_layers(), graph.directed());
    for (const auto& t : graph.tokens()) b.add_node(t);
    b.set_layer_labels(graph.layer_labels());
    b.set_coupling_weight(g.coupling);
    for (LayerIndex a = 0; a < graph.num_layers(); ++a)
      for (const Edge& e : graph.edges(a)) b.add_edge(a, e.src, e.dst, e.weight);
    graph = b.build();
  }
  return graph;
}

LayerIndex resolve_layer(const MultiplexGraph& g, std::int64_t label) {
  auto a = g.find_layer(label);
  if (!a) {
    std::string known;
    for (auto l : g.layer_labels()) known += (known.empty() ? "" : ",") + std::to_string(l);
    throw ValidationError("layer " + std::to_string(label) + " not in graph (layers: " + known + ")");
  }
  return *a;
}

std::string dataset_name(const EvalArgs& e, const GraphArgs& g) {
  return e.dataset.empty() ? fs::path(g.path).stem().string() : e.dataset;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) out.push_back(tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

WalkCorpus walk_graph(const MultiplexGraph& g, WalkStrategy strategy, const WalkArgs& w, const Common& c) {
  WalkConfig cfg;
  cfg.walk_length = w.l;
  cfg.walks_per_node = w.n;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  if (strategy == WalkStrategy::SingleLayerUniform && g.num_layers() > 1) {
    MultiplexGraph flat = collapse(g);
    return generate_corpus(flat, strengths(flat), strategy, cfg);
  }
  return generate_corpus(g, strengths(g), strategy, cfg);
}

TrainConfig train_config(const EmbedArgs& e, const Common& c) {
  TrainConfig cfg;
  cfg.dim = e.d;
  cfg.window = e.window;
  cfg.epochs = e.epochs;
  cfg.learning_rate = e.lr;
  cfg.negatives = e.negatives;
  cfg.seed = c.seed;
  cfg.deterministic = e.deterministic;
  cfg.threads = e.deterministic ? 1 : c.threads;
  return cfg;
}

EvalConfig eval_config(const EvalArgs& e, const Common& c) {
  EvalConfig cfg;
  cfg.operators = parse_operator_list(e.operators);
  cfg.lambda = e.lambda;
  cfg.seed = c.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplex network embedding via random walks and skip-gram, with layer reconstruction", "multinet"};
  app.require_subcommand(1);

  Common common;
  common.threads = default_threads();
  GraphArgs graph_args;
  WalkArgs walk_args;
  EmbedArgs embed_args;
  EvalArgs eval_args;

  // walk
  std::string corpus_out = "corpus.txt";
  std::vector<std::int64_t> exclude_layers;
  auto* walk = app.add_subcommand("walk", "Generate a random-walk corpus");
  add_graph_options(walk, graph_args);
  add_walk_options(walk, walk_args);
  walk->add_option("--exclude-layer", exclude_layers, "Drop these layers before walking (e.g. the target)");
  walk->add_option("--out", corpus_out, "Corpus file to write")->capture_default_str();
  add_common_options(walk, common);

  // embed
  std::string corpus_in;
  std::string embed_out = "embeddings.txt";
  auto* embed = app.add_subcommand("embed", "Train skip-gram embeddings on a corpus");
  embed->add_option("--corpus", corpus_in, "Corpus file from 'walk'")->required();
  add_embed_options(embed, embed_args);
  embed->add_option("--out", embed_out, "Embedding file to write (word2vec text)")->capture_default_str();
  add_common_options(embed, common);

  // eval
  std::string embeddings_in;
  std::int64_t target_label = -1;
  std::string report_out = "report.csv";
  auto* eval = app.add_subcommand("eval", "Score embeddings on reconstructing a held-out layer");
  add_graph_options(eval, graph_args);
  eval->add_option("--embeddings", embeddings_in, "Embedding file from 'embed'")->required();
  eval->add_option("--target", target_label, "Layer id to reconstruct")->required();
  add_eval_options(eval, eval_args);
  eval->add_option("--out", report_out, "Report CSV to write")->capture_default_str();
  add_common_options(eval, common);

  // pipeline
  std::string output_dir = "multinet_out";
  auto* pipeline = app.add_subcommand("pipeline", "Hold out a layer, walk, embed and evaluate in one run");
  add_graph_options(pipeline, graph_args);
  add_walk_options(pipeline, walk_args);
  add_embed_options(pipeline, embed_args);
  add_eval_options(pipeline, eval_args);
  pipeline->add_option("--target", target_label, "Layer id to reconstruct (default: last layer)");
  pipeline->add_option("--output-dir", output_dir, "Directory for corpus, embeddings and report")
      ->capture_default_str();
  add_common_options(pipeline, common);
  pipeline->footer("--strategy also accepts a comma-separated list, e.g. classical,physical,multinet,collapsed");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::string config_path = cli::find_flag_value(args, "--config");
    if (!config_path.empty() && !args.empty()) {
      auto entries = cli::read_config_file(config_path);
      CLI::App* sub = nullptr;
      for (auto* s : {walk, embed, eval, pipeline})
        if (s->get_name() == args.front()) sub = s;
      if (sub) {
        for (const auto& [key, value] : entries) {
          if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr)
            throw cli::ConfigError("unknown config key '" + key + "' for '" + sub->get_name() + "'");
        }
      }
      args = cli::merge_config(std::move(args), entries);
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (walk->parsed()) {
      MultiplexGraph g = load_graph(graph_args);
      if (!exclude_layers.empty()) {
        std::vector<LayerIndex> keep;
        for (LayerIndex a = 0; a < g.num_layers(); ++a) {
          bool drop = false;
          for (auto label : exclude_layers) drop = drop || g.layer_label(a) == label;
          if (!drop) keep.push_back(a);
        }
        for (auto label : exclude_layers) resolve_layer(g, label);
        if (keep.empty()) throw ValidationError("every layer was excluded");
        g = select_layers(g, keep);
      }
      WalkCorpus corpus = walk_graph(g, parse_strategy(walk_args.strategy), walk_args, common);
      save_corpus(corpus, corpus_out);
      std::cout << "wrote " << corpus.walks.size() << " walks to " << corpus_out << "\n";
    } else if (embed->parsed()) {
      WalkCorpus corpus = load_corpus(corpus_in);
      Embedding emb = train(corpus, train_config(embed_args, common));
      save_embeddings(emb.matrix, emb.vocab, embed_out);
      std::cout << "wrote " << emb.vocab.size() << " x " << emb.matrix.dim() << " embeddings to " << embed_out
                << "\n";
    } else if (eval->parsed()) {
      EvalConfig cfg = eval_config(eval_args, common);
      double load_seconds = 0.0;
      MultiplexGraph g = load_graph(graph_args, &load_seconds);
      LayerIndex target = resolve_layer(g, target_label);
      Embedding emb = load_embeddings(embeddings_in);
      auto t0 = Clock::now();
      EvalReport report = evaluate_embedding(g, target, emb, cfg);
      report.dataset = dataset_name(eval_args, graph_args);
      report.strategy = "embedding";
      report.timings = {{"load", load_seconds}, {"eval", seconds_since(t0)}};
      write_file(report_out, format_report_csv(std::span<const EvalReport>(&report, 1)));
      std::cout << format_report_table(report);
    } else if (pipeline->parsed()) {
      std::vector<WalkStrategy> strategies;
      for (const auto& tok : split_list(walk_args.strategy)) strategies.push_back(parse_strategy(tok));
      if (strategies.empty()) throw ValidationError("no walk strategy given");
      EvalConfig eval_cfg = eval_config(eval_args, common);

      double load_seconds = 0.0;
      MultiplexGraph g = load_graph(graph_args, &load_seconds);
      LayerIndex target = target_label < 0 ? static_cast<LayerIndex>(g.num_layers() - 1)
                                           : resolve_layer(g, target_label);
      std::error_code ec;
      fs::create_directories(output_dir, ec);
      if (ec) throw IoError("cannot create output directory '" + output_dir + "': " + ec.message());

      std::vector<EvalReport> reports;
      for (WalkStrategy s : strategies) {
        ReconstructionConfig cfg;
        cfg.dataset = dataset_name(eval_args, graph_args);
        cfg.target = target;
        cfg.strategy = s;
        cfg.walk.walk_length = walk_args.l;
        cfg.walk.walks_per_node = walk_args.n;
        cfg.walk.threads = common.threads;
        cfg.train = train_config(embed_args, common);
        cfg.eval = eval_cfg;
        cfg.seed = common.seed;
        ReconstructionArtifacts artifacts;
        EvalReport report = run_reconstruction(g, cfg, &artifacts);
        report.timings.insert(report.timings.begin(), {"load", load_seconds});
        const std::string name(to_string(s));
        save_corpus(artifacts.corpus, fs::path(output_dir) / ("corpus_" + name + ".txt"));
        save_embeddings(artifacts.embedding.matrix, artifacts.embedding.vocab,
                        fs::path(output_dir) / ("embeddings_" + name + ".txt"));
        std::cout << format_report_table(report) << "\n";
        reports.push_back(std::move(report));
      }
      write_file(fs::path(output_dir) / "report.csv", format_report_csv(reports));

      std::string echo;
      echo += "graph=" + graph_args.path + "\n";
      if (graph_args.directed) echo += "directed=true\n";
      if (graph_args.weighted) echo += "weighted=true\n";
      for (const auto& [k, v] : reports.front().config) {
        if (k == "strategy") echo += "strategy=" + walk_args.strategy + "\n";
        else if (k != "deterministic") echo += k + "=" + v + "\n";
      }
      if (embed_args.deterministic) echo += "deterministic=true\n";
      write_file(fs::path(output_dir) / "config.txt", echo);
      std::cout << "artifacts in " << output_dir << "\n";
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}

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
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "multinet/edge_ops.hpp"
#include "multinet/error.hpp"
#include "multinet/graph.hpp"
#include "multinet/reconstruct.hpp"
#include "multinet/skipgram.hpp"
#include "multinet/synthetic.hpp"
#include "multinet/walk.hpp"

namespace py = pybind11;
using namespace multinet;

namespace {

py::array_t<double> vectors_of(const Embedding& e) {
  const auto& m = e.matrix;
  py::array_t<double> out({m.rows(), m.dim()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.dim(); ++k) v(r, k) = m.input(r)[k];
  return out;
}

std::vector<std::vector<std::string>> walks_of(const WalkCorpus& c) {
  std::vector<std::vector<std::string>> out;
  out.reserve(c.walks.size());
  for (std::size_t k = 0; k < c.walks.size(); ++k) {
    std::vector<std::string> w;
    for (auto id : c.walks[k]) w.push_back(c.tokens[id]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiplex random walks, skip-gram embeddings and layer reconstruction";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<InvalidStart>(m, "InvalidStart", validation.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<IndexError>(m, "OutOfRangeError", PyExc_IndexError);
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::enum_<WalkStrategy>(m, "WalkStrategy")
      .value("Classical", WalkStrategy::Classical)
      .value("Diffusive", WalkStrategy::Diffusive)
      .value("Physical", WalkStrategy::Physical)
      .value("MultiNetUniform", WalkStrategy::MultiNetUniform)
      .value("SingleLayerUniform", WalkStrategy::SingleLayerUniform);
  m.def("parse_strategy", [](const std::string& s) { return parse_strategy(s); });

  py::enum_<EdgeOperator>(m, "EdgeOperator")
      .value("Hadamard", EdgeOperator::Hadamard)
      .value("Average", EdgeOperator::Average)
      .value("WeightedL1", EdgeOperator::WeightedL1)
      .value("WeightedL2", EdgeOperator::WeightedL2);
  m.def("parse_operator", [](const std::string& s) { return parse_operator(s); });

  py::class_<MultiplexGraph>(m, "MultiplexGraph")
      .def_property_readonly("num_nodes", &MultiplexGraph::num_nodes)
      .def_property_readonly("num_layers", &MultiplexGraph::num_layers)
      .def_property_readonly("directed", &MultiplexGraph::directed)
      .def_property_readonly("tokens", &MultiplexGraph::tokens)
      .def_property_readonly("layer_labels", &MultiplexGraph::layer_labels)
      .def("num_edges", py::overload_cast<>(&MultiplexGraph::num_edges, py::const_))
      .def("layer_edges", py::overload_cast<LayerIndex>(&MultiplexGraph::num_edges, py::const_), py::arg("layer"))
      .def("find", &MultiplexGraph::find, py::arg("token"))
      .def("degree", &MultiplexGraph::degree, py::arg("node"), py::arg("layer"))
      .def(
          "neighbors",
          [](const MultiplexGraph& g, NodeIndex i, LayerIndex a) {
            std::vector<std::pair<NodeIndex, double>> out;
            for (const auto& nb : g.neighbors(i, a)) out.emplace_back(nb.node, nb.weight);
            return out;
          },
          py::arg("node"), py::arg("layer"))
      .def(
          "edges",
          [](const MultiplexGraph& g, LayerIndex a) {
            std::vector<std::tuple<NodeIndex, NodeIndex, double>> out;
            for (const auto& e : g.edges(a)) out.emplace_back(e.src, e.dst, e.weight);
            return out;
          },
          py::arg("layer"))
      .def("fingerprint", &MultiplexGraph::fingerprint)
      .def("__repr__", [](const MultiplexGraph& g) {
        return "<MultiplexGraph nodes=" + std::to_string(g.num_nodes()) + " layers=" +
               std::to_string(g.num_layers()) + " edges=" + std::to_string(g.num_edges()) + ">";
      });

  m.def(
      "load_multiplex",
      [](const std::filesystem::path& path, bool directed, bool weighted) {
        return load_multiplex(path, {directed, weighted});
      },
      py::arg("path"), py::arg("directed") = false, py::arg("weighted") = false);
  m.def(
      "parse_multiplex",
      [](const std::string& text, bool directed, bool weighted) {
        LoadReport report;
        return parse_multiplex(text, {directed, weighted}, report);
      },
      py::arg("text"), py::arg("directed") = false, py::arg("weighted") = false);
  m.def("save_multiplex", &save_multiplex, py::arg("graph"), py::arg("path"));
  m.def("collapse", &collapse, py::arg("graph"));

  m.def(
      "strengths",
      [](const MultiplexGraph& g) {
        auto st = strengths(g);
        py::array_t<double> intra({g.num_nodes(), g.num_layers()});
        py::array_t<double> total({g.num_nodes(), g.num_layers()});
        auto vi = intra.mutable_unchecked<2>();
        auto vt = total.mutable_unchecked<2>();
        for (NodeIndex i = 0; i < g.num_nodes(); ++i)
          for (LayerIndex a = 0; a < g.num_layers(); ++a) {
            vi(i, a) = st.intra(i, a);
            vt(i, a) = st.total(i, a);
          }
        return py::make_tuple(intra, total, st.s_max());
      },
      py::arg("graph"), "Returns (intra, total, s_max); arrays are nodes x layers.");

  m.def(
      "transition_row",
      [](const MultiplexGraph& g, WalkStrategy s, NodeIndex node, LayerIndex layer) {
        auto st = strengths(g);
        std::vector<std::tuple<NodeIndex, LayerIndex, double>> out;
        for (const auto& t : transition_row(g, st, s, {node, layer}))
          out.emplace_back(t.to.node, t.to.layer, t.probability);
        return out;
      },
      py::arg("graph"), py::arg("strategy"), py::arg("node"), py::arg("layer"),
      "List of (node, layer, probability) for one walk state.");

  py::class_<WalkCorpus>(m, "WalkCorpus")
      .def_property_readonly("walks", &walks_of)
      .def_property_readonly("strategy", [](const WalkCorpus& c) { return c.meta.strategy; })
      .def("__len__", [](const WalkCorpus& c) { return c.walks.size(); })
      .def("to_text", &format_corpus)
      .def("save", [](const WalkCorpus& c, const std::filesystem::path& p) { save_corpus(c, p); });
  m.def("load_corpus", &load_corpus, py::arg("path"));

  m.def(
      "generate_corpus",
      [](const MultiplexGraph& g, WalkStrategy s, std::size_t walk_length, std::size_t walks_per_node,
         std::uint64_t seed, std::size_t threads) {
        WalkConfig cfg;
        cfg.walk_length = walk_length;
        cfg.walks_per_node = walks_per_node;
        cfg.seed = seed;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return generate_corpus(g, strengths(g), s, cfg);
      },
      py::arg("graph"), py::arg("strategy") = WalkStrategy::MultiNetUniform, py::arg("walk_length") = 10,
      py::arg("walks_per_node") = 5, py::arg("seed") = 0, py::arg("threads") = 1);

  py::class_<Embedding>(m, "Embedding")
      .def_property_readonly("tokens", [](const Embedding& e) { return e.vocab.tokens; })
      .def_property_readonly("vectors", &vectors_of)
      .def_property_readonly("dim", [](const Embedding& e) { return e.matrix.dim(); })
      .def("vector",
           [](const Embedding& e, const std::string& token) {
             auto r = e.vocab.find(token);
             if (!r) throw IndexError("no embedding for '" + token + "'");
             auto v = e.matrix.input(*r);
             return std::vector<double>(v.begin(), v.end());
           })
      .def("to_text", [](const Embedding& e) { return format_embeddings(e.matrix, e.vocab); })
      .def("save", [](const Embedding& e, const std::filesystem::path& p) { save_embeddings(e.matrix, e.vocab, p); });
  m.def("load_embeddings", &load_embeddings, py::arg("path"));

  m.def(
      "train",
      [](const WalkCorpus& corpus, std::size_t dim, std::size_t window, std::size_t epochs, double learning_rate,
         std::size_t negatives, std::uint64_t seed, bool deterministic, std::size_t threads) {
        TrainConfig cfg;
        cfg.dim = dim;
        cfg.window = window;
        cfg.epochs = epochs;
        cfg.learning_rate = learning_rate;
        cfg.negatives = negatives;
        cfg.seed = seed;
        cfg.deterministic = deterministic;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return train(corpus, cfg);
      },
      py::arg("corpus"), py::arg("dim") = 150, py::arg("window") = 10, py::arg("epochs") = 5,
      py::arg("learning_rate") = 0.025, py::arg("negatives") = 5, py::arg("seed") = 0,
      py::arg("deterministic") = true, py::arg("threads") = 1);

  m.def(
      "edge_feature",
      [](EdgeOperator op, const std::vector<double>& fu, const std::vector<double>& fv) {
        return edge_feature(op, fu, fv);
      },
      py::arg("op"), py::arg("fu"), py::arg("fv"));

  m.def(
      "auroc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) { return auroc(scores, labels); },
      py::arg("scores"), py::arg("labels"));

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("dataset", &EvalReport::dataset)
      .def_readonly("strategy", &EvalReport::strategy)
      .def_readonly("train_rows", &EvalReport::train_rows)
      .def_readonly("test_rows", &EvalReport::test_rows)
      .def_readonly("warnings", &EvalReport::warnings)
      .def_property_readonly("scores",
                             [](const EvalReport& r) {
                               py::dict d;
                               for (const auto& s : r.scores) d[py::str(std::string(to_string(s.op)))] = s.auroc;
                               return d;
                             })
      .def_property_readonly("timings",
                             [](const EvalReport& r) {
                               py::dict d;
                               for (const auto& t : r.timings) d[py::str(t.stage)] = t.seconds;
                               return d;
                             })
      .def("best_auroc", &EvalReport::best_auroc)
      .def("to_csv",
           [](const EvalReport& r, bool with_timings) { return format_report_csv(std::span(&r, 1), with_timings); },
           py::arg("with_timings") = true)
      .def("__str__", &format_report_table);

  m.def(
      "run_reconstruction",
      [](const MultiplexGraph& g, LayerIndex target, WalkStrategy strategy, std::size_t walk_length,
         std::size_t walks_per_node, std::size_t dim, std::size_t window, std::size_t epochs,
         const std::vector<EdgeOperator>& operators, double lam, std::uint64_t seed, std::string dataset) {
        ReconstructionConfig cfg;
        cfg.dataset = std::move(dataset);
        cfg.target = target;
        cfg.strategy = strategy;
        cfg.walk.walk_length = walk_length;
        cfg.walk.walks_per_node = walks_per_node;
        cfg.train.dim = dim;
        cfg.train.window = window;
        cfg.train.epochs = epochs;
        if (!operators.empty()) cfg.eval.operators = operators;
        cfg.eval.lambda = lam;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return run_reconstruction(g, cfg);
      },
      py::arg("graph"), py::arg("target"), py::arg("strategy") = WalkStrategy::MultiNetUniform,
      py::arg("walk_length") = 10, py::arg("walks_per_node") = 5, py::arg("dim") = 150, py::arg("window") = 10,
      py::arg("epochs") = 5, py::arg("operators") = std::vector<EdgeOperator>{}, py::arg("lam") = 1.0,
      py::arg("seed") = 0, py::arg("dataset") = "graph",
      "Hold out layer index `target`, embed the rest and score every operator.");

  m.def(
      "planted_multiplex",
      [](std::size_t nodes, std::size_t communities, std::size_t layers, double target_noise, bool null_target,
         std::uint64_t seed) {
        PlantedConfig cfg;
        cfg.nodes = nodes;
        cfg.communities = communities;
        cfg.layers = layers;
        cfg.target_noise = target_noise;
        cfg.null_target = null_target;
        cfg.seed = seed;
        return planted_multiplex(cfg);
      },
      py::arg("nodes") = 200, py::arg("communities") = 5, py::arg("layers") = 3, py::arg("target_noise") = 0.1,
      py::arg("null_target") = false, py::arg("seed") = 0);
}

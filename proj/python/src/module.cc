// Copyright 2026 The EMN Linker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.h"
#include "emn/corpus.h"
#include "emn/errors.h"
#include "emn/eval.h"
#include "emn/graph.h"
#include "emn/linker.h"
#include "emn/ranker.h"
#include "emn/textprep.h"

namespace py = pybind11;

namespace emn {
namespace {

// Owns everything a Linker references so that Python never sees a dangling
// reference.
class PyLinker {
 public:
  PyLinker(std::shared_ptr<const EmnGraph> graph,
           std::optional<std::string> phrases,
           std::optional<std::string> stopwords, int k)
      : graph_(std::move(graph)) {
    if (phrases) dict_ = LoadPhraseDictionary(*phrases);
    if (stopwords) stopwords_ = LoadStopwords(*stopwords);
    LinkOptions options;
    options.k = k;
    linker_ = std::make_unique<Linker>(*graph_, dict_, stopwords_, options);
  }

  std::vector<std::pair<std::string, double>> Candidates(
      const std::string &text) const {
    std::vector<std::pair<std::string, double>> out;
    try {
      for (const auto &c : linker_->Prepare(text).candidates) {
        out.emplace_back(c.entity_id, c.evidence);
      }
    } catch (const NoCandidateError &) {
    }
    return out;
  }

  std::vector<std::pair<std::string, double>> Link(
      const TrainedRanker &ranker, const std::string &text,
      const std::string &entity_type) const {
    std::vector<std::pair<std::string, double>> out;
    try {
      for (const auto &r : linker_->Link(ranker, {entity_type, text})) {
        out.emplace_back(r.entity_id, r.score);
      }
    } catch (const NoCandidateError &) {
    }
    return out;
  }

  TrainedRanker Train(const std::string &gold_path, uint64_t seed) const {
    TrainOptions options;
    options.seed = seed;
    return TrainFromTweets(*linker_, ImplicitGold(LoadTweets(gold_path)),
                           options);
  }

  double Recall(const std::string &gold_path, int k) const {
    return RecallAtK(*linker_, ImplicitGold(LoadTweets(gold_path)), k)
        .recall_at_k;
  }

  py::dict CrossValidate(const std::string &gold_path, int folds,
                         uint64_t seed) const {
    CrossValidationOptions options;
    options.folds = folds;
    options.seed = seed;
    options.train.seed = seed;
    EvalReport r =
        emn::CrossValidate(*linker_, ImplicitGold(LoadTweets(gold_path)),
                           options);
    py::dict d;
    d["tweets"] = r.tweets;
    d["k"] = r.k;
    d["recall_at_k"] = r.recall_at_k;
    d["disambiguation_accuracy"] = *r.disambiguation_accuracy;
    return d;
  }

 private:
  std::shared_ptr<const EmnGraph> graph_;
  PhraseDictionary dict_;
  StopwordSet stopwords_;
  std::unique_ptr<Linker> linker_;
};

std::tuple<int, std::string, std::string> RunCliArgs(
    const std::vector<std::string> &args) {
  std::vector<const char *> argv = {"emn-linker"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace
}  // namespace emn

PYBIND11_MODULE(_core, m) {
  using namespace emn;
  m.doc() = "Implicit entity linking with an Entity Model Network.";

  static py::exception<Error> error(m, "EmnError");
  static py::exception<ConfigError> config_error(m, "ConfigError",
                                                 error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError &e) {
      py::set_error(config_error, e.what());
    } catch (const Error &e) {
      py::set_error(error, e.what());
    }
  });

  m.def("clean", [](const std::string &text) { return Clean(text).tokens; },
        "Normalized tokens of a tweet.");
  m.def("decompose_tag", &DecomposeTag, py::arg("tag"));

  py::class_<EmnGraph, std::shared_ptr<EmnGraph>>(m, "Graph")
      .def_static("load",
                  [](const std::string &path) {
                    return std::make_shared<EmnGraph>(
                        EmnGraph::LoadFromFile(path));
                  })
      .def("save", &EmnGraph::SaveToFile, py::arg("path"))
      .def_property_readonly("num_entities", &EmnGraph::num_entities)
      .def_property_readonly("num_clues", &EmnGraph::num_clues)
      .def_property_readonly("num_edges", &EmnGraph::num_edges)
      .def_property_readonly("entity_type", &EmnGraph::entity_type)
      .def("specificity",
           [](const EmnGraph &g, const std::string &clue)
               -> std::optional<double> {
             auto index = g.FindClue(clue);
             if (!index) return std::nullopt;
             return g.clues()[*index].specificity;
           })
      .def("entity_vector", &EmnGraph::EntityVector, py::arg("entity_id"));

  py::class_<TrainedRanker>(m, "Ranker")
      .def_static("load", &TrainedRanker::LoadFromFile, py::arg("path"))
      .def("save", &TrainedRanker::SaveToFile, py::arg("path"))
      .def_property_readonly("weights", &TrainedRanker::weights)
      .def_property_readonly("trained_on", &TrainedRanker::trained_on);

  py::class_<PyLinker>(m, "Linker")
      .def(py::init([](std::shared_ptr<EmnGraph> graph,
                       std::optional<std::string> phrases,
                       std::optional<std::string> stopwords, int k) {
             return std::make_unique<PyLinker>(std::move(graph), phrases,
                                               stopwords, k);
           }),
           py::arg("graph"), py::arg("phrases") = py::none(),
           py::arg("stopwords") = py::none(), py::arg("k") = kDefaultCandidates)
      .def("candidates", &PyLinker::Candidates, py::arg("text"))
      .def("link", &PyLinker::Link, py::arg("ranker"), py::arg("text"),
           py::arg("entity_type") = "")
      .def("train", &PyLinker::Train, py::arg("gold"), py::arg("seed") = 7)
      .def("recall_at_k", &PyLinker::Recall, py::arg("gold"),
           py::arg("k") = kDefaultCandidates)
      .def("cross_validate", &PyLinker::CrossValidate, py::arg("gold"),
           py::arg("folds") = kDefaultFolds, py::arg("seed") = 7);

  m.def("run_cli", &RunCliArgs, py::arg("args"),
        "Runs the command line tool in-process; returns (code, stdout, "
        "stderr).");
}

// Copyright 2026 The Authors.
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "billboard/baselines.h"
#include "billboard/domain.h"
#include "billboard/errors.h"
#include "billboard/experiment.h"
#include "billboard/influence.h"
#include "billboard/ingest.h"
#include "billboard/instance_index.h"
#include "billboard/serialization.h"
#include "billboard/solvers.h"

namespace py = pybind11;

namespace billboard {
namespace {

// An instance together with its solver index, built once on construction.
class Model {
 public:
  explicit Model(InfluenceInstance instance)
      : instance_(std::move(instance)), index_(instance_) {}

  const InfluenceInstance& instance() const { return instance_; }
  const InstanceIndex& index() const { return index_; }

 private:
  InfluenceInstance instance_;
  InstanceIndex index_;
};

std::shared_ptr<Model> Wrap(InfluenceInstance instance) {
  if (auto problems = ValidateInstance(instance); !problems.empty()) {
    throw ValidationError(problems.front());
  }
  return std::make_shared<Model>(std::move(instance));
}

std::vector<SlotId> SlotBillboards(const Model& model) {
  std::vector<SlotId> out;
  for (const Slot& s : model.instance().slots) out.push_back(s.billboard);
  return out;
}

SolveResult Solve(const Model& model, const std::string& algorithm, int k,
                  int l, double epsilon, std::uint64_t seed,
                  std::uint64_t cap) {
  const auto parsed = ParseAlgorithm(algorithm);
  if (!parsed) throw Error("unknown algorithm '" + algorithm + "'");
  RunOptions options;
  options.algorithm = *parsed;
  options.k = k;
  options.l = l;
  options.epsilon = epsilon;
  options.seed = seed;
  options.cap = cap;
  return RunAlgorithm(model.index(), options);
}

py::dict ResultRecord(const Model& model, const std::string& algorithm, int k,
                      int l, double epsilon, std::uint64_t seed,
                      const SolveResult& result) {
  RunOptions options;
  options.algorithm = *ParseAlgorithm(algorithm);
  options.k = k;
  options.l = l;
  options.epsilon = epsilon;
  options.seed = seed;
  const RunRecord record = MakeRecord(options, model.instance().meta.lambda_m,
                                      result, InstanceDigest(model.instance()));
  return py::module_::import("json").attr("loads")(RecordToJson(record).dump());
}

}  // namespace
}  // namespace billboard

PYBIND11_MODULE(_core, m) {
  using namespace billboard;
  m.doc() = "Context-dependent billboard slot and tag selection.";

  auto error = py::register_exception<Error>(m, "BillboardError");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error);
  py::register_exception<CapExceededError>(m, "CapExceededError", error);

  py::class_<Model, std::shared_ptr<Model>>(m, "Instance")
      .def_property_readonly(
          "num_users", [](const Model& x) { return x.index().num_users(); })
      .def_property_readonly(
          "num_slots", [](const Model& x) { return x.index().num_slots(); })
      .def_property_readonly(
          "num_tags", [](const Model& x) { return x.index().num_tags(); })
      .def_property_readonly(
          "num_pairs", [](const Model& x) { return x.index().num_pairs(); })
      .def_property_readonly(
          "lambda_m", [](const Model& x) { return x.instance().meta.lambda_m; })
      .def_property_readonly(
          "slot_duration",
          [](const Model& x) { return x.instance().meta.delta; })
      .def_property_readonly("slot_billboards", &SlotBillboards)
      .def("digest",
           [](const Model& x) { return InstanceDigest(x.instance()); })
      .def("to_json",
           [](const Model& x) { return SerializeInstance(x.instance()); })
      .def(
          "prob",
          [](const Model& x, UserId u, SlotId s, TagId c) {
            const InstanceIndex& index = x.index();
            if (!index.IsUser(u) || !index.IsSlot(s) || !index.IsTag(c)) {
              throw py::index_error("user, slot or tag out of range");
            }
            return index.Prob(u, s, c);
          },
          py::arg("user"), py::arg("slot"), py::arg("tag"))
      .def("__repr__", [](const Model& x) {
        return "<Instance users=" + std::to_string(x.index().num_users()) +
               " slots=" + std::to_string(x.index().num_slots()) +
               " tags=" + std::to_string(x.index().num_tags()) + ">";
      });

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly(
          "slots", [](const SolveResult& r) { return r.selection.slots; })
      .def_property_readonly(
          "tags", [](const SolveResult& r) { return r.selection.tags; })
      .def_readonly("influence", &SolveResult::value)
      .def_readonly("eval_count", &SolveResult::eval_count)
      .def_readonly("wall_time_ms", &SolveResult::wall_time_ms)
      .def_property_readonly(
          "branch", [](const SolveResult& r) { return BranchName(r.branch); })
      .def("__repr__", [](const SolveResult& r) {
        return "<SolveResult influence=" + FormatDouble(r.value) +
               " slots=" + std::to_string(r.selection.slots.size()) +
               " tags=" + std::to_string(r.selection.tags.size()) + ">";
      });

  m.def(
      "generate_synthetic",
      [](int users, int billboards, int tags, int tuples, std::uint64_t seed,
         double tag_skew, std::int64_t t1, std::int64_t t2,
         std::int64_t slot_duration, double lambda_m) {
        SyntheticSpec spec;
        spec.n_users = users;
        spec.n_billboards = billboards;
        spec.n_tags = tags;
        spec.n_tuples = tuples;
        spec.seed = seed;
        spec.tag_skew = tag_skew;
        spec.horizon = {t1, t2};
        if (auto problems = spec.Validate(); !problems.empty()) {
          throw ValidationError(problems.front());
        }
        IngestConfig config;
        config.horizon = {t1, t2};
        config.slot_duration = slot_duration;
        config.lambda_m = lambda_m;
        config.prob_mode = ProbMode::kSynthetic;
        return Wrap(GenerateSynthetic(spec, config));
      },
      py::arg("users") = 100, py::arg("billboards") = 10, py::arg("tags") = 5,
      py::arg("tuples") = 500, py::arg("seed") = 1, py::arg("tag_skew") = 2.0,
      py::arg("t1") = 0, py::arg("t2") = 99, py::arg("slot_duration") = 10,
      py::arg("lambda_m") = 100.0);

  m.def(
      "load_instance",
      [](const std::string& path) { return Wrap(LoadInstance(path)); },
      py::arg("path"));
  m.def(
      "save_instance",
      [](const Model& model, const std::string& path) {
        SaveInstance(path, model.instance());
      },
      py::arg("instance"), py::arg("path"));
  m.def(
      "validate_selection",
      [](const Model& model, std::vector<SlotId> slots,
         std::vector<TagId> tags) {
        return ValidateSelection(model.instance(),
                                 Selection{std::move(slots), std::move(tags)});
      },
      py::arg("instance"), py::arg("slots"), py::arg("tags"));

  m.def(
      "influence",
      [](const Model& model, std::vector<SlotId> slots,
         std::vector<TagId> tags) {
        const Selection selection{std::move(slots), std::move(tags)};
        if (auto problems = ValidateSelection(model.instance(), selection);
            !problems.empty()) {
          throw ValidationError(problems.front());
        }
        return AggregatedInfluence(model.index(), selection);
      },
      py::arg("instance"), py::arg("slots"), py::arg("tags"));

  m.def(
      "greedy",
      [](const Model& model, int k, int l, bool lazy) {
        py::gil_scoped_release release;
        return OrthantGreedy(
            model.index(), k, l,
            lazy ? GreedyMode::kLazy : GreedyMode::kIncremental);
      },
      py::arg("instance"), py::arg("k"), py::arg("l"), py::arg("lazy") = true);
  m.def(
      "stochastic_greedy",
      [](const Model& model, int k, int l, double epsilon, std::uint64_t seed) {
        py::gil_scoped_release release;
        StochasticParams params;
        params.epsilon = epsilon;
        params.seed = seed;
        return StochasticGreedy(model.index(), k, l, params);
      },
      py::arg("instance"), py::arg("k"), py::arg("l"),
      py::arg("epsilon") = 0.01, py::arg("seed") = 0);
  m.def(
      "exhaustive",
      [](const Model& model, int k, int l, std::uint64_t cap) {
        py::gil_scoped_release release;
        return ExhaustiveSearch(model.index(), k, l, cap);
      },
      py::arg("instance"), py::arg("k"), py::arg("l"),
      py::arg("cap") = kDefaultExhaustiveCap);
  m.def(
      "baseline",
      [](const Model& model, const std::string& name, int k, int l,
         std::uint64_t seed) {
        const auto kind = ParseBaseline(name);
        if (!kind) throw Error("unknown baseline '" + name + "'");
        py::gil_scoped_release release;
        return RunBaseline(model.index(), *kind, k, l, seed);
      },
      py::arg("instance"), py::arg("name"), py::arg("k"), py::arg("l"),
      py::arg("seed") = 0);
  m.def(
      "solve",
      [](const Model& model, const std::string& algorithm, int k, int l,
         double epsilon, std::uint64_t seed, std::uint64_t cap) {
        const SolveResult result =
            Solve(model, algorithm, k, l, epsilon, seed, cap);
        return ResultRecord(model, algorithm, k, l, epsilon, seed, result);
      },
      py::arg("instance"), py::arg("algorithm"), py::arg("k"), py::arg("l"),
      py::arg("epsilon") = 0.01, py::arg("seed") = 0,
      py::arg("cap") = kDefaultExhaustiveCap);

  std::vector<std::string> baselines;
  for (BaselineKind kind : kAllBaselines)
    baselines.push_back(BaselineName(kind));
  m.attr("BASELINES") = baselines;
}

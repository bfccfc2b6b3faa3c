// Copyright 2026 The qgns Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <filesystem>
#include <numbers>

#include <catch_amalgamated.hpp>

#include <qgns/io.hpp>

#include "helpers.hpp"

using namespace qgns;
using json = nlohmann::json;

TEST_CASE("graph JSON forms", "[io]") {
    const Graph g(3, {{0, 1, 0.25}, {1, 2, std::numbers::pi}});
    CHECK(io::graph_from_json(io::graph_to_json(g)) == g);
    CHECK(io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1]]})")) ==
          Graph::unweighted(2, {{0, 1}}));
    CHECK(io::graph_from_json(json("qgraph v1 n=2\n0 1\n")) ==
          Graph::unweighted(2, {{0, 1}}));
    CHECK(io::graph_from_json(json("k2.qg"), QGNS_DATA_DIR) ==
          Graph::unweighted(2, {{0, 1}}));
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"edges": []})")), Error);
    CHECK_THROWS_AS(io::graph_from_json(json("missing.qg"), QGNS_DATA_DIR), Error);
}

TEST_CASE("checkpoint round trip", "[io]") {
    ModelSpec m = make_model(fig1_graph(), 2, Formalism::Registered);
    m.convention = EdgeConvention::IsingZZ;
    randomize_parameters(m, 5);
    m.schedule.push_back({MessagePassStep{0, 0.5}, 1, std::nullopt});
    m.schedule.push_back({PoolMeasureStep{{0, 1}}, 0, std::nullopt});
    m.schedule.push_back({GateStep{GateOp::cry(0, 2, 0.3)}, 1, StepCondition{1, -1}});
    m.schedule.push_back({EntangleStep{{0, 2}, {0.1, 0.2}}, 0, std::nullopt});
    m.schedule.push_back({PoolPhaseStep{{0, 1, 3}, 1.0}, 0, std::nullopt});
    m.schedule.push_back({PoolCRotStep{{0, 1}, 2, 0.7}, 1, std::nullopt});

    const json j = io::model_to_json(m);
    CHECK(j["version"] == "qgns-1");
    CHECK(j["m"] == 2);
    const ModelSpec back = io::model_from_json(json::parse(j.dump()));
    CHECK(back.parameters() == m.parameters());
    CHECK(back.graph == m.graph);
    CHECK(back.formalism == m.formalism);
    CHECK(back.convention == m.convention);
    CHECK(back.seed == m.seed);
    REQUIRE(back.schedule.size() == m.schedule.size());
    CHECK(io::model_to_json(back) == j);

    json bad = j;
    bad["version"] = "other";
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
    bad = j;
    bad["theta"] = json::array();
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
}

TEST_CASE("datasets", "[io]") {
    const auto toy = io::read_dataset(std::filesystem::path(QGNS_DATA_DIR) / "toy.json");
    CHECK(toy.graph == fig1_graph());
    REQUIRE(toy.data.items.size() == 1);
    CHECK(toy.data.task == Task::Node);
    const Dataset bundled = toy_node_dataset();
    CHECK(toy.data.items[0].features == bundled.items[0].features);
    CHECK(toy.data.items[0].node_labels == bundled.items[0].node_labels);

    const auto edge = io::dataset_from_json(json::parse(R"({
        "task": "edge",
        "graph": {"n": 2, "edges": [[0, 1, 0.5]]},
        "items": [{"labels": [0.25]}]
    })"));
    CHECK(edge.data.items[0].edge_targets == std::vector<double>{0.25});

    const auto graph = io::dataset_from_json(json::parse(R"({
        "task": "graph",
        "graph": "qgraph v1 n=2\n0 1",
        "classes": [{"n": 2, "edges": []}, "qgraph v1 n=2\n0 1"],
        "items": [{"labels": 1}, {"graph": {"n": 2, "edges": []}, "labels": 0}]
    })"));
    CHECK(graph.data.class_graphs.size() == 2);
    CHECK(graph.data.items[1].graph_class == 0);
    CHECK(graph.data.items[1].graph.has_value());

    const auto partial = io::dataset_from_json(json::parse(R"({
        "task": "node", "graph": {"n": 3, "edges": []},
        "items": [{"labels": [1, null, -1]}]
    })"));
    CHECK(partial.data.items[0].node_labels ==
          std::vector<std::optional<int>>{1, std::nullopt, std::nullopt});

    CHECK_THROWS_AS(io::dataset_from_json(json::parse(R"({"task": "what", "items": []})")),
                    Error);
    CHECK_THROWS_AS(io::dataset_from_json(json::parse(
                        R"({"task": "node", "graph": {"n": 1}, "items": [{"labels": [2]}]})")),
                    Error);
}

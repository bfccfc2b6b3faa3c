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
/**
 * @file
 * JSON and text serialization: model checkpoints, datasets, reports.
 * Requires nlohmann/json on the include path.
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "graph.hpp"
#include "graphstate.hpp"
#include "qgnn.hpp"
#include "sim.hpp"
#include "train.hpp"

namespace qgns::io {

using json = nlohmann::json;

inline constexpr const char *kCheckpointVersion = "qgns-1";

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot write " + path.string());
    out << text;
    require(static_cast<bool>(out), ErrorKind::Io, "write failed: " + path.string());
}

inline Graph read_graph(const std::filesystem::path &path) {
    return from_edge_list(read_file(path));
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

inline json graph_to_json(const Graph &g) {
    json edges = json::array();
    for (const Edge &e : g.edges()) {
        edges.push_back({e.u, e.v, e.weight});
    }
    return {{"n", g.n_vertices()}, {"edges", edges}};
}

/**
 * Accepts an inline object {n, edges: [[u, v, (w)], ...]}, a string of
 * `qgraph v1` text, or a string path (resolved against `base_dir`).
 */
inline Graph graph_from_json(const json &j, const std::filesystem::path &base_dir = {}) {
    try {
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s.starts_with("qgraph")) {
                return from_edge_list(s);
            }
            const std::filesystem::path p(s);
            return read_graph(p.is_absolute() ? p : base_dir / p);
        }
        require(j.is_object(), ErrorKind::Parse,
                "graph must be an object, path, or edge-list text");
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto &e : j.value("edges", json::array())) {
            require(e.is_array() && (e.size() == 2 || e.size() == 3),
                    ErrorKind::Parse, "edge must be [u, v] or [u, v, w]");
            edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                             e.size() == 3 ? e[2].get<double>() : kDefaultEdgeWeight});
        }
        return Graph(n, std::move(edges));
    } catch (const json::exception &ex) {
        throw Error(ErrorKind::Parse, std::string("graph: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Gates and schedules
// ---------------------------------------------------------------------------

namespace detail {

struct GateName {
    GateKind kind;
    const char *name;
};

inline constexpr GateName kGateNames[] = {
    {GateKind::H, "h"},         {GateKind::X, "x"},          {GateKind::Y, "y"},
    {GateKind::Z, "z"},         {GateKind::S, "s"},          {GateKind::Sdg, "sdg"},
    {GateKind::Ry, "ry"},       {GateKind::Rz, "rz"},        {GateKind::CP, "cp"},
    {GateKind::IsingZZ, "ising_zz"}, {GateKind::CRy, "cry"}, {GateKind::MCZ, "mcz"},
    {GateKind::SWAP, "swap"},   {GateKind::CSWAP, "cswap"},
};

inline std::string gate_name(GateKind k) {
    for (const auto &g : kGateNames) {
        if (g.kind == k) {
            return g.name;
        }
    }
    throw Error(ErrorKind::Unsupported, "gate cannot be serialized");
}

inline GateKind gate_kind(const std::string &name) {
    for (const auto &g : kGateNames) {
        if (name == g.name) {
            return g.kind;
        }
    }
    throw Error(ErrorKind::Parse, "unknown gate '" + name + "'");
}

} // namespace detail

inline json step_to_json(const LayerStep &step) {
    json j = std::visit(
        [](const auto &op) -> json {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, EntangleStep>) {
                return {{"kind", "entangle"}, {"edges", op.edges}, {"weights", op.weights}};
            } else if constexpr (std::is_same_v<T, MessagePassStep>) {
                return {{"kind", "message_pass"}, {"vertex", op.vertex}, {"phase", op.phase}};
            } else if constexpr (std::is_same_v<T, PoolMeasureStep>) {
                return {{"kind", "pool_measure"}, {"group", op.group}};
            } else if constexpr (std::is_same_v<T, PoolPhaseStep>) {
                return {{"kind", "pool_phase"}, {"group", op.group}, {"phase", op.phase}};
            } else if constexpr (std::is_same_v<T, PoolCRotStep>) {
                return {{"kind", "pool_crot"},
                        {"group", op.group},
                        {"target", op.target},
                        {"angle", op.angle}};
            } else {
                return {{"kind", "gate"},
                        {"gate", detail::gate_name(op.gate.kind)},
                        {"wires", op.gate.wires},
                        {"param", op.gate.param}};
            }
        },
        step.op);
    j["layer"] = step.layer;
    if (step.condition) {
        j["condition"] = {{"record", step.condition->record},
                          {"outcome", step.condition->outcome}};
    }
    return j;
}

inline LayerStep step_from_json(const json &j) {
    try {
        LayerStep step;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "entangle") {
            step.op = EntangleStep{j.value("edges", std::vector<std::size_t>{}),
                                   j.value("weights", std::vector<double>{})};
        } else if (kind == "message_pass") {
            step.op = MessagePassStep{j.at("vertex").get<std::size_t>(),
                                      j.at("phase").get<double>()};
        } else if (kind == "pool_measure") {
            step.op = PoolMeasureStep{j.at("group").get<std::vector<std::size_t>>()};
        } else if (kind == "pool_phase") {
            step.op = PoolPhaseStep{j.at("group").get<std::vector<std::size_t>>(),
                                    j.at("phase").get<double>()};
        } else if (kind == "pool_crot") {
            step.op = PoolCRotStep{j.at("group").get<std::vector<std::size_t>>(),
                                   j.at("target").get<std::size_t>(),
                                   j.at("angle").get<double>()};
        } else if (kind == "gate") {
            GateOp g;
            g.kind = detail::gate_kind(j.at("gate").get<std::string>());
            g.wires = j.at("wires").get<std::vector<std::size_t>>();
            g.param = j.value("param", 0.0);
            step.op = GateStep{g};
        } else {
            throw Error(ErrorKind::Parse, "unknown schedule step '" + kind + "'");
        }
        step.layer = j.value("layer", std::size_t{0});
        if (j.contains("condition")) {
            step.condition = StepCondition{j["condition"].at("record").get<std::size_t>(),
                                           j["condition"].at("outcome").get<int>()};
        }
        return step;
    } catch (const json::exception &ex) {
        throw Error(ErrorKind::Parse, std::string("schedule step: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Model checkpoints
// ---------------------------------------------------------------------------

inline Formalism formalism_from_string(const std::string &s) {
    if (s == "superposed") {
        return Formalism::Superposed;
    }
    if (s == "registered") {
        return Formalism::Registered;
    }
    require(s == "sequential", ErrorKind::Parse, "unknown formalism '" + s + "'");
    return Formalism::Sequential;
}

inline EdgeConvention convention_from_string(const std::string &s) {
    if (s == "ising") {
        return EdgeConvention::IsingZZ;
    }
    require(s == "cp", ErrorKind::Parse, "unknown convention '" + s + "'");
    return EdgeConvention::ControlledPhase;
}

inline json model_to_json(const ModelSpec &m) {
    json schedule = json::array();
    for (const auto &step : m.schedule) {
        schedule.push_back(step_to_json(step));
    }
    return {{"version", kCheckpointVersion},
            {"graph", graph_to_json(m.graph)},
            {"m", m.layers},
            {"formalism", std::string(to_string(m.formalism))},
            {"convention", std::string(to_string(m.convention))},
            {"theta", m.theta},
            {"weights", m.weights},
            {"shared_weights", m.shared_weights},
            {"interlayer_phase", m.interlayer_phase},
            {"schedule", schedule},
            {"seed", m.seed}};
}

inline ModelSpec model_from_json(const json &j) {
    try {
        require(j.at("version").get<std::string>() == kCheckpointVersion,
                ErrorKind::Parse, "unsupported checkpoint version");
        ModelSpec m;
        m.graph = graph_from_json(j.at("graph"));
        m.layers = j.at("m").get<std::size_t>();
        m.formalism = formalism_from_string(j.at("formalism").get<std::string>());
        m.convention = convention_from_string(j.value("convention", std::string("cp")));
        m.theta = j.at("theta").get<std::vector<std::vector<double>>>();
        m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        m.shared_weights = j.value("shared_weights", false);
        m.interlayer_phase = j.value("interlayer_phase", std::numbers::pi);
        for (const auto &s : j.value("schedule", json::array())) {
            m.schedule.push_back(step_from_json(s));
        }
        m.seed = j.value("seed", std::uint64_t{0});
        m.validate();
        return m;
    } catch (const json::exception &ex) {
        throw Error(ErrorKind::Parse, std::string("checkpoint: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

inline Task task_from_string(const std::string &s) {
    if (s == "edge") {
        return Task::Edge;
    }
    if (s == "graph") {
        return Task::Graph;
    }
    require(s == "node", ErrorKind::Parse, "unknown task '" + s + "'");
    return Task::Node;
}

/**
 * @brief Dataset plus the model graph it is defined on.
 *
 * JSON: {task, graph, encoding?: "angle"|"pairs", classes?: [graph, ...],
 * items: [{graph?, features?, labels}]}. Node labels are 0/1 per vertex with
 * null (or -1) for unlabeled vertices; edge labels are one target per edge;
 * graph labels are a class index.
 */
struct DatasetFile {
    Graph graph;
    Dataset data;
};

inline DatasetFile dataset_from_json(const json &j,
                                     const std::filesystem::path &base_dir = {}) {
    try {
        DatasetFile out;
        out.data.task = task_from_string(j.at("task").get<std::string>());
        const auto enc = j.value("encoding", std::string("angle"));
        require(enc == "angle" || enc == "pairs", ErrorKind::Parse,
                "unknown encoding '" + enc + "'");
        out.data.encoding =
            enc == "angle" ? FeatureEncoding::Angle : FeatureEncoding::AmplitudePairs;
        const auto &items = j.at("items");
        require(items.is_array() && !items.empty(), ErrorKind::Parse,
                "dataset needs a nonempty item list");
        if (j.contains("graph")) {
            out.graph = graph_from_json(j["graph"], base_dir);
        } else {
            require(items[0].contains("graph"), ErrorKind::Parse,
                    "dataset needs a graph");
            out.graph = graph_from_json(items[0]["graph"], base_dir);
        }
        for (const auto &c : j.value("classes", json::array())) {
            out.data.class_graphs.push_back(graph_from_json(c, base_dir));
        }
        for (const auto &it : items) {
            DataItem item;
            if (it.contains("graph")) {
                item.graph = graph_from_json(it["graph"], base_dir);
            }
            item.features = it.value("features", std::vector<double>{});
            const auto &labels = it.at("labels");
            switch (out.data.task) {
            case Task::Node:
                for (const auto &l : labels) {
                    if (l.is_null() || l.get<int>() < 0) {
                        item.node_labels.push_back(std::nullopt);
                    } else {
                        const int bit = l.get<int>();
                        require(bit == 0 || bit == 1, ErrorKind::Parse,
                                "node labels must be 0, 1, or null");
                        item.node_labels.push_back(bit);
                    }
                }
                break;
            case Task::Edge:
                item.edge_targets = labels.get<std::vector<double>>();
                break;
            case Task::Graph:
                item.graph_class = labels.get<std::size_t>();
                break;
            }
            out.data.items.push_back(std::move(item));
        }
        return out;
    } catch (const json::exception &ex) {
        throw Error(ErrorKind::Parse, std::string("dataset: ") + ex.what());
    }
}

inline DatasetFile read_dataset(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error &ex) {
        throw Error(ErrorKind::Parse, path.string() + ": " + ex.what());
    }
    return dataset_from_json(j, path.parent_path());
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json stabilizer_report_json(const std::string &graph_name, EdgeConvention c,
                                   const StabilizerReport &r) {
    return {{"graph", graph_name},
            {"convention", std::string(to_string(c))},
            {"residuals", r.residuals},
            {"max_residual", r.max_residual},
            {"pass", r.pass}};
}

/// One line per amplitude: `index real imag`.
inline std::string state_dump(const State &s) {
    std::ostringstream out;
    dump_state(out, s);
    return out.str();
}

} // namespace qgns::io

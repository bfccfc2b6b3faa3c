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
 * Classical optimization of QGNN rotation angles and edge phases: losses,
 * finite-difference and parameter-shift gradients, and plain gradient descent.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "graphstate.hpp"
#include "qgnn.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "tasks.hpp"

namespace qgns {

enum class Task { Node, Edge, Graph };

constexpr std::string_view to_string(Task t) {
    switch (t) {
    case Task::Node:
        return "node";
    case Task::Edge:
        return "edge";
    case Task::Graph:
        return "graph";
    }
    return "unknown";
}

struct DataItem {
    /// Item-specific graph; the model graph when empty.
    std::optional<Graph> graph;
    /// Empty means |+> on every vertex.
    std::vector<double> features;
    /// Node task: one entry per vertex, nullopt for unlabeled vertices.
    std::vector<std::optional<int>> node_labels;
    /// Edge task: one target <Z_u Z_v> per edge of the item graph.
    std::vector<double> edge_targets;
    /// Graph task: class index into `Dataset::class_graphs`.
    std::size_t graph_class{0};
};

struct Dataset {
    Task task{Task::Node};
    FeatureEncoding encoding{FeatureEncoding::Angle};
    std::vector<DataItem> items;
    /// Graph task: one prototype graph per class; its graph state is the
    /// class reference.
    std::vector<Graph> class_graphs;
};

enum class GradMethod { FiniteDiff, ParamShift };
enum class LossKind { Bce, Mse };

struct TrainConfig {
    double learning_rate{0.3};
    std::size_t epochs{100};
    std::uint64_t seed{0};
    std::size_t shots{0};
    GradMethod grad{GradMethod::FiniteDiff};
    double fd_epsilon{1e-5};
    LossKind loss{LossKind::Bce};
    Basis node_basis{Basis::Y};

    void validate() const {
        require(learning_rate >= 0.0 && std::isfinite(learning_rate),
                ErrorKind::InvalidArgument, "learning rate must be >= 0");
        require(epochs >= 1, ErrorKind::InvalidArgument, "epochs must be >= 1");
        require(fd_epsilon > 0.0, ErrorKind::InvalidArgument,
                "finite-difference step must be > 0");
        require(node_basis != Basis::X, ErrorKind::InvalidArgument,
                "node readout uses the Y or Z basis");
    }
};

/// BCE probabilities are clamped to [kProbClamp, 1 - kProbClamp].
inline constexpr double kProbClamp = 1e-7;

namespace detail {

inline double item_loss_term(double p, double target, LossKind kind) {
    if (kind == LossKind::Mse) {
        return (p - target) * (p - target);
    }
    const double q = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return -(target * std::log(q) + (1.0 - target) * std::log(1.0 - q));
}

inline double item_loss_slope(double p, double target, LossKind kind) {
    if (kind == LossKind::Mse) {
        return 2.0 * (p - target);
    }
    if (p < kProbClamp || p > 1.0 - kProbClamp) {
        return 0.0;
    }
    return -target / p + (1.0 - target) / (1.0 - p);
}

/**
 * Model specialized to an item's graph: edges shared with the model graph
 * keep the model's (per-layer) weights, other edges keep the item's weights.
 */
inline ModelSpec model_for_item(const ModelSpec &m, const DataItem &item) {
    if (!item.graph || *item.graph == m.graph) {
        return m;
    }
    const Graph &g = *item.graph;
    require(g.n_vertices() == m.graph.n_vertices(), ErrorKind::SizeMismatch,
            "item graph vertex count differs from the model");
    ModelSpec out = m;
    out.graph = g;
    for (std::size_t row = 0; row < m.weights.size(); ++row) {
        std::vector<double> w;
        for (const Edge &e : g.edges()) {
            const auto idx = m.graph.edge_index(e.u, e.v);
            w.push_back(idx ? m.weights[row][*idx] : e.weight);
        }
        out.weights[row] = std::move(w);
    }
    std::erase_if(out.schedule, [](const LayerStep &s) {
        return std::holds_alternative<EntangleStep>(s.op);
    });
    return out;
}

inline GraphStateInit item_init(const Dataset &d, const DataItem &item) {
    if (item.features.empty()) {
        return PlusInit{};
    }
    return encode_features(item.features, d.encoding);
}

} // namespace detail

/// Readout values of one item and the targets they are scored against.
struct ItemReadout {
    std::vector<double> values;
    std::vector<double> targets;
};

/**
 * @brief Runs the model on one item and collects its readouts.
 *
 * Node task: p(-1) of each labeled vertex. Edge task: <Z_u Z_v> per item
 * edge. Graph task: swap-test overlap with every class reference state.
 */
inline ItemReadout evaluate_item(const ModelSpec &m, const Dataset &d,
                                 const DataItem &item, const TrainConfig &cfg,
                                 Rng &rng) {
    const ModelSpec local = detail::model_for_item(m, item);
    Rng sched_rng(derive_seed(cfg.seed, 0x5c4edULL));
    const ForwardResult fw = forward(local, detail::item_init(d, item), sched_rng);
    const std::size_t n = local.graph.n_vertices();
    Rng *shot_rng = cfg.shots > 0 ? &rng : nullptr;
    ItemReadout out;
    switch (d.task) {
    case Task::Node:
        require(item.node_labels.size() == n, ErrorKind::SizeMismatch,
                "node labels must cover every vertex");
        for (std::size_t v = 0; v < n; ++v) {
            if (!item.node_labels[v]) {
                continue;
            }
            out.values.push_back(node_readout(fw.state, fw.readout_offset + v,
                                              cfg.node_basis, cfg.shots, shot_rng)
                                     .p1);
            out.targets.push_back(static_cast<double>(*item.node_labels[v]));
        }
        break;
    case Task::Edge: {
        const auto &edges = local.graph.edges();
        require(item.edge_targets.size() == edges.size(), ErrorKind::SizeMismatch,
                "edge targets must cover every edge");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            out.values.push_back(edge_readout(fw.state, fw.readout_offset + edges[e].u,
                                              fw.readout_offset + edges[e].v,
                                              cfg.shots, shot_rng));
            out.targets.push_back(item.edge_targets[e]);
        }
        break;
    }
    case Task::Graph: {
        require(!d.class_graphs.empty(), ErrorKind::InvalidArgument,
                "graph task needs class reference graphs");
        require(item.graph_class < d.class_graphs.size(), ErrorKind::IndexOutOfRange,
                "graph class label out of range");
        require(fw.state.num_qubits() == n, ErrorKind::Unsupported,
                "graph task needs a single-register formalism");
        for (std::size_t c = 0; c < d.class_graphs.size(); ++c) {
            const State ref = build_graph_state(d.class_graphs[c], local.convention);
            out.values.push_back(
                swap_test_overlap(fw.state, ref, cfg.shots, shot_rng).overlap_sq);
            out.targets.push_back(c == item.graph_class ? 1.0 : 0.0);
        }
        break;
    }
    }
    return out;
}

namespace detail {

inline double readout_loss(const ItemReadout &r, Task task, LossKind kind) {
    if (r.values.empty()) {
        return 0.0;
    }
    // Edge readouts live in [-1, 1] and are always scored with MSE.
    const LossKind k = task == Task::Edge ? LossKind::Mse : kind;
    double acc = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        acc += item_loss_term(r.values[i], r.targets[i], k);
    }
    return acc / static_cast<double>(r.values.size());
}

inline bool readout_correct(const ItemReadout &r, Task task, std::size_t i) {
    switch (task) {
    case Task::Node:
        return (r.values[i] > 0.5 ? 1.0 : 0.0) == r.targets[i];
    case Task::Edge:
        return (r.values[i] >= 0.0) == (r.targets[i] >= 0.0);
    case Task::Graph:
        break;
    }
    return false;
}

inline void check_compatible(const ModelSpec &m, const Dataset &d) {
    m.validate();
    require(!d.items.empty(), ErrorKind::InvalidArgument, "dataset has no items");
    for (const auto &item : d.items) {
        const std::size_t n =
            item.graph ? item.graph->n_vertices() : m.graph.n_vertices();
        require(n == m.graph.n_vertices(), ErrorKind::SizeMismatch,
                "dataset graph does not match the model");
        if (!item.features.empty()) {
            const std::size_t expect =
                d.encoding == FeatureEncoding::Angle ? n : 2 * n;
            require(item.features.size() == expect, ErrorKind::SizeMismatch,
                    "feature length does not match vertex count");
        }
        switch (d.task) {
        case Task::Node:
            require(item.node_labels.size() == n, ErrorKind::SizeMismatch,
                    "node task items need one label per vertex");
            break;
        case Task::Edge:
            require(!item.edge_targets.empty(), ErrorKind::InvalidArgument,
                    "edge task items need edge targets");
            break;
        case Task::Graph:
            require(item.node_labels.empty() && item.edge_targets.empty(),
                    ErrorKind::InvalidArgument,
                    "graph task items carry a class index only");
            break;
        }
    }
}

} // namespace detail

/// Mean per-item loss; `stream` selects the shot-noise rng stream.
inline double loss(const ModelSpec &m, const Dataset &d, const TrainConfig &cfg,
                   std::uint64_t stream = 0) {
    detail::check_compatible(m, d);
    Rng rng(derive_seed(cfg.seed, stream));
    double acc = 0.0;
    for (const auto &item : d.items) {
        acc += detail::readout_loss(evaluate_item(m, d, item, cfg, rng), d.task,
                                    cfg.loss);
    }
    return acc / static_cast<double>(d.items.size());
}

/// Fraction of labeled readouts predicted correctly (graph task: argmax).
inline double accuracy(const ModelSpec &m, const Dataset &d, const TrainConfig &cfg,
                       std::uint64_t stream = 0) {
    detail::check_compatible(m, d);
    Rng rng(derive_seed(cfg.seed, stream));
    std::size_t hits = 0;
    std::size_t total = 0;
    for (const auto &item : d.items) {
        const ItemReadout r = evaluate_item(m, d, item, cfg, rng);
        if (d.task == Task::Graph) {
            const auto best = std::max_element(r.values.begin(), r.values.end()) -
                              r.values.begin();
            hits += static_cast<std::size_t>(best) == item.graph_class ? 1 : 0;
            ++total;
            continue;
        }
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            hits += detail::readout_correct(r, d.task, i) ? 1 : 0;
            ++total;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

struct Gradient {
    std::vector<double> values;
    GradMethod method{GradMethod::FiniteDiff};
    /// Set when parameter shift was requested but some components fell back
    /// to finite differences.
    std::string fallback_reason;
};

namespace detail {

struct ShiftRule {
    double shift;
    double coefficient;
};

/// Two-term shift rule for parameter k, if the model admits one.
inline std::optional<ShiftRule> shift_rule(const ModelSpec &m, std::size_t k) {
    if (m.is_rotation_parameter(k)) {
        return ShiftRule{std::numbers::pi / 2.0, 0.5};
    }
    if (m.shared_weights && m.layers > 1) {
        return std::nullopt; // one phase drives several gates
    }
    if (m.convention == EdgeConvention::IsingZZ) {
        return ShiftRule{std::numbers::pi / 4.0, 1.0};
    }
    return ShiftRule{std::numbers::pi / 2.0, 0.5};
}

inline std::string param_shift_blocker(const ModelSpec &m, const Dataset &d) {
    if (d.task == Task::Graph) {
        return "graph readout is a swap-test overlap, not a Pauli expectation";
    }
    for (const auto &step : m.schedule) {
        if (std::holds_alternative<PoolMeasureStep>(step.op) || step.condition) {
            return "schedule contains mid-circuit measurements";
        }
    }
    return {};
}

} // namespace detail

/**
 * @brief Parameter-shift derivative of every item readout with respect to
 * flattened parameter `k`; result[i][o] matches `evaluate_item(...).values[o]`
 * of item i.
 *
 * Throws Unsupported when the readout or the parameter admits no shift rule.
 */
inline std::vector<std::vector<double>> readout_derivative(const ModelSpec &m,
                                                           const Dataset &d,
                                                           const TrainConfig &cfg,
                                                           std::size_t k,
                                                           std::uint64_t stream = 0) {
    detail::check_compatible(m, d);
    require(k < m.parameter_count(), ErrorKind::IndexOutOfRange,
            "parameter index out of range");
    const std::string blocker = detail::param_shift_blocker(m, d);
    require(blocker.empty(), ErrorKind::Unsupported, blocker);
    const auto rule = detail::shift_rule(m, k);
    require(rule.has_value(), ErrorKind::Unsupported,
            "shared edge phases drive several gates");
    const std::vector<double> p0 = m.parameters();
    ModelSpec plus = m;
    ModelSpec minus = m;
    auto pp = p0;
    auto pm = p0;
    pp[k] += rule->shift;
    pm[k] -= rule->shift;
    plus.set_parameters(pp);
    minus.set_parameters(pm);
    Rng rng_p(derive_seed(cfg.seed, stream));
    Rng rng_m(derive_seed(cfg.seed, stream));
    std::vector<std::vector<double>> out;
    for (const auto &item : d.items) {
        const ItemReadout rp = evaluate_item(plus, d, item, cfg, rng_p);
        const ItemReadout rm = evaluate_item(minus, d, item, cfg, rng_m);
        std::vector<double> dv(rp.values.size());
        for (std::size_t o = 0; o < dv.size(); ++o) {
            dv[o] = rule->coefficient * (rp.values[o] - rm.values[o]);
        }
        out.push_back(std::move(dv));
    }
    return out;
}

/**
 * @brief Gradient over the flattened (theta, weights) parameters.
 *
 * Finite differences: (loss(p + eps) - loss(p - eps)) / (2 eps).
 * Parameter shift: exact derivatives of every readout expectation, chained
 * through the analytic loss slope. Components without a valid shift rule
 * fall back to finite differences and `fallback_reason` says why.
 */
inline Gradient gradient(const ModelSpec &m, const Dataset &d, const TrainConfig &cfg,
                         std::uint64_t stream = 0) {
    detail::check_compatible(m, d);
    const std::vector<double> p0 = m.parameters();
    Gradient g;
    g.values.assign(p0.size(), 0.0);
    g.method = cfg.grad;

    auto fd_component = [&](std::size_t k) {
        ModelSpec plus = m;
        ModelSpec minus = m;
        auto pp = p0;
        auto pm = p0;
        pp[k] += cfg.fd_epsilon;
        pm[k] -= cfg.fd_epsilon;
        plus.set_parameters(pp);
        minus.set_parameters(pm);
        return (loss(plus, d, cfg, stream) - loss(minus, d, cfg, stream)) /
               (2.0 * cfg.fd_epsilon);
    };

    std::string blocker;
    if (cfg.grad == GradMethod::ParamShift) {
        blocker = detail::param_shift_blocker(m, d);
    }
    if (cfg.grad == GradMethod::FiniteDiff || !blocker.empty()) {
        for (std::size_t k = 0; k < p0.size(); ++k) {
            g.values[k] = fd_component(k);
        }
        g.fallback_reason = blocker;
        return g;
    }

    // Base readouts for the loss slopes.
    const LossKind kind = d.task == Task::Edge ? LossKind::Mse : cfg.loss;
    std::vector<ItemReadout> base;
    {
        Rng rng(derive_seed(cfg.seed, stream));
        for (const auto &item : d.items) {
            base.push_back(evaluate_item(m, d, item, cfg, rng));
        }
    }
    for (std::size_t k = 0; k < p0.size(); ++k) {
        if (!detail::shift_rule(m, k)) {
            g.values[k] = fd_component(k);
            g.fallback_reason = "shared edge phases drive several gates";
            continue;
        }
        const auto jac = readout_derivative(m, d, cfg, k, stream);
        double acc = 0.0;
        for (std::size_t i = 0; i < d.items.size(); ++i) {
            const auto &b = base[i];
            if (b.values.empty()) {
                continue;
            }
            double item_acc = 0.0;
            for (std::size_t o = 0; o < b.values.size(); ++o) {
                item_acc += detail::item_loss_slope(b.values[o], b.targets[o], kind) *
                            jac[i][o];
            }
            acc += item_acc / static_cast<double>(b.values.size());
        }
        g.values[k] = acc / static_cast<double>(d.items.size());
    }
    return g;
}

struct EpochStats {
    std::size_t epoch;
    double loss;
    double accuracy;
};

struct FitResult {
    ModelSpec model;
    /// Row 0 is the initial model; row e follows the e-th update.
    std::vector<EpochStats> history;
    std::string fallback_reason;
};

/// Plain gradient descent p <- p - lr * grad for `cfg.epochs` updates.
inline FitResult fit(ModelSpec m, const Dataset &d, const TrainConfig &cfg) {
    cfg.validate();
    detail::check_compatible(m, d);
    FitResult out;
    auto record = [&](std::size_t epoch) {
        const double l = loss(m, d, cfg, 2 * epoch);
        require(std::isfinite(l), ErrorKind::Divergence,
                "loss diverged at epoch " + std::to_string(epoch));
        out.history.push_back({epoch, l, accuracy(m, d, cfg, 2 * epoch)});
    };
    record(0);
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const Gradient g = gradient(m, d, cfg, 2 * epoch + 1);
        if (!g.fallback_reason.empty()) {
            out.fallback_reason = g.fallback_reason;
        }
        std::vector<double> p = m.parameters();
        for (std::size_t k = 0; k < p.size(); ++k) {
            p[k] -= cfg.learning_rate * g.values[k];
            require(std::isfinite(p[k]), ErrorKind::Divergence,
                    "parameters diverged at epoch " + std::to_string(epoch));
        }
        m.set_parameters(p);
        record(epoch);
    }
    out.model = std::move(m);
    return out;
}

/// Vertex ids of the bundled toy graph: A=0, B=1, C=2, D=3, E=4.
inline Graph fig1_graph() {
    return Graph::unweighted(5, {{0, 1}, {1, 2}, {0, 3}, {3, 2}, {0, 4}, {3, 4}});
}

/**
 * Toy node task on `fig1_graph`: {A, C, E} labeled 1, {B, D} labeled 0;
 * features are vertex degrees.
 */
inline Dataset toy_node_dataset() {
    const Graph g = fig1_graph();
    DataItem item;
    for (std::size_t v = 0; v < g.n_vertices(); ++v) {
        item.features.push_back(static_cast<double>(g.neighborhood(v).size()));
    }
    item.node_labels = {1, 0, 1, 0, 1};
    Dataset d;
    d.task = Task::Node;
    d.encoding = FeatureEncoding::Angle;
    d.items.push_back(std::move(item));
    return d;
}

} // namespace qgns

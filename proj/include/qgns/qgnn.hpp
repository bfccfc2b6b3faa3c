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
 * Quantum graph neural network assembly on top of graph states: feature
 * encoding, the superposed / registered / sequential layer formalisms,
 * message passing, and the three pooling operations.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "graphstate.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace qgns {

/// Largest group the pooling operations accept by default; readout cost grows
/// as 2^(group size).
inline constexpr std::size_t kPoolGroupCap = 10;

enum class FeatureEncoding { Angle, AmplitudePairs };

/**
 * @brief Maps a feature vector to the per-qubit initial state.
 *
 * Angle: theta_i = pi * (x_i - min) / (max - min), pi/2 for constant vectors.
 * AmplitudePairs: x holds (alpha_0, beta_0, alpha_1, beta_1, ...).
 */
inline GraphStateInit encode_features(std::span<const double> x,
                                      FeatureEncoding method) {
    require(!x.empty(), ErrorKind::InvalidArgument, "empty feature vector");
    for (double v : x) {
        require(std::isfinite(v), ErrorKind::InvalidArgument,
                "non-finite feature value");
    }
    if (method == FeatureEncoding::Angle) {
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        const double range = *hi - *lo;
        RyInit init;
        init.angles.reserve(x.size());
        for (double v : x) {
            init.angles.push_back(range > 0.0
                                      ? std::numbers::pi * (v - *lo) / range
                                      : std::numbers::pi / 2.0);
        }
        return init;
    }
    require(x.size() % 2 == 0, ErrorKind::SizeMismatch,
            "amplitude pairs need an even number of values");
    ProductInit init;
    for (std::size_t i = 0; i < x.size(); i += 2) {
        require(std::abs(x[i] * x[i] + x[i + 1] * x[i + 1] - 1.0) <= 1e-9,
                ErrorKind::Unnormalized, "amplitude pair is not normalized");
        init.pairs.emplace_back(x[i], x[i + 1]);
    }
    return init;
}

// ---------------------------------------------------------------------------
// Primitive operations
// ---------------------------------------------------------------------------

namespace detail {

inline void check_group(std::span<const std::size_t> group, std::size_t n_qubits,
                        std::size_t cap) {
    require(!group.empty(), ErrorKind::InvalidArgument, "empty pooling group");
    require(group.size() <= cap, ErrorKind::CapExceeded,
            "pooling group larger than " + std::to_string(cap) + " qubits");
    std::set<std::size_t> seen;
    for (std::size_t q : group) {
        require(q < n_qubits, ErrorKind::IndexOutOfRange,
                "pooling qubit out of range");
        require(seen.insert(q).second, ErrorKind::InvalidArgument,
                "duplicate qubit in pooling group");
    }
}

} // namespace detail

/// CP(w) from u to every neighbor of u; `offset` shifts qubit indices.
inline void message_pass(State &s, const Graph &g, std::size_t u, double w,
                         std::size_t offset = 0) {
    for (std::size_t v : g.neighborhood(u)) {
        s.apply(GateOp::cp(offset + u, offset + v, w));
    }
}

/// {v} plus N(v), ascending; the default pooling group of vertex v.
inline std::vector<std::size_t> closed_neighborhood(const Graph &g, std::size_t v) {
    std::vector<std::size_t> group = g.neighborhood(v);
    group.insert(std::upper_bound(group.begin(), group.end(), v), v);
    return group;
}

struct PoolMeasureResult {
    std::vector<int> readout;
    std::vector<MeasurementRecord> records;
    /// The last measured qubit's outcome.
    int global_readout{1};
};

/// Z-measures each group qubit in ascending order, collapsing `s`.
inline PoolMeasureResult pool_measure(State &s, std::vector<std::size_t> group,
                                      Rng &rng, std::size_t cap = kPoolGroupCap) {
    detail::check_group(group, s.num_qubits(), cap);
    std::sort(group.begin(), group.end());
    PoolMeasureResult out;
    for (std::size_t q : group) {
        const auto rec = measure_qubit(s, q, Basis::Z, rng);
        out.readout.push_back(rec.outcome);
        out.records.push_back(rec);
    }
    out.global_readout = out.readout.back();
    return out;
}

/**
 * @brief Hadamard test: P(ancilla = 0) for |+>_a controlling U on `s`.
 *
 * The ancilla is appended as the highest qubit. After controlled-U the
 * register holds (|0>|s> + |1>U|s>)/sqrt(2); `apply_u` mutates its argument
 * into U|s>.
 */
template <class ApplyU> double hadamard_test_p0(const State &s, ApplyU &&apply_u) {
    detail::require_normalized(s);
    require(s.num_qubits() + 1 <= kMaxQubits, ErrorKind::CapExceeded,
            "Hadamard test ancilla exceeds qubit cap");
    State branch = s;
    apply_u(branch);
    std::vector<std::complex<double>> amps(2 * s.size());
    const double r = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < s.size(); ++i) {
        amps[i] = r * s[i];
        amps[s.size() + i] = r * branch[i];
    }
    State joint = State::from_amplitudes(std::move(amps));
    const std::size_t ancilla = s.num_qubits();
    joint.apply(GateOp::h(ancilla));
    return std::clamp(1.0 - joint.probability_one(ancilla), 0.0, 1.0);
}

struct PoolPhaseResult {
    double p0;
    double estimate; ///< Re<s|U|s> = 2 p0 - 1
};

/// Hadamard-test phase pooling over the product of CP(w) on edges inside `group`.
inline PoolPhaseResult pool_phase(const State &s, const Graph &g,
                                  std::vector<std::size_t> group, double w,
                                  std::size_t offset = 0,
                                  std::size_t cap = kPoolGroupCap) {
    detail::check_group(group, s.num_qubits(), cap);
    std::set<std::size_t> members;
    for (std::size_t q : group) {
        require(q >= offset && q - offset < g.n_vertices(),
                ErrorKind::IndexOutOfRange, "pooling qubit is not a graph vertex");
        members.insert(q - offset);
    }
    const double p0 = hadamard_test_p0(s, [&](State &t) {
        for (const Edge &e : g.edges()) {
            if (members.contains(e.u) && members.contains(e.v)) {
                t.apply(GateOp::cp(offset + e.u, offset + e.v, w));
            }
        }
    });
    return {p0, 2.0 * p0 - 1.0};
}

/// CRy(theta) from each group qubit (ascending) onto `target`.
inline void pool_crot(State &s, std::vector<std::size_t> group, std::size_t target,
                      double theta) {
    detail::check_group(group, s.num_qubits(), s.num_qubits());
    require(std::find(group.begin(), group.end(), target) == group.end(),
            ErrorKind::InvalidArgument, "rotation target is inside the group");
    std::sort(group.begin(), group.end());
    for (std::size_t c : group) {
        s.apply(GateOp::cry(c, target, theta));
    }
}

enum class PostMap { None, Sigmoid, Step };

/**
 * (1 + cos phase) / 2, the measurement statistic of a phase-encoded qubit.
 * Sigmoid and Step instead apply the aperiodic map to cos(phase).
 */
inline double periodic_readout(double phase, PostMap post = PostMap::None) {
    const double c = std::cos(phase);
    switch (post) {
    case PostMap::None:
        break;
    case PostMap::Sigmoid:
        return 1.0 / (1.0 + std::exp(-c));
    case PostMap::Step:
        return c >= 0.0 ? 1.0 : 0.0;
    }
    return 0.5 * (1.0 + c);
}

// ---------------------------------------------------------------------------
// Model description
// ---------------------------------------------------------------------------

enum class Formalism { Superposed, Registered, Sequential };

constexpr std::string_view to_string(Formalism f) {
    switch (f) {
    case Formalism::Superposed:
        return "superposed";
    case Formalism::Registered:
        return "registered";
    case Formalism::Sequential:
        return "sequential";
    }
    return "unknown";
}

/// Entangle a subset of edges (indices into `graph.edges()`, empty = all)
/// with explicit weights (empty = the graph's weights).
struct EntangleStep {
    std::vector<std::size_t> edges;
    std::vector<double> weights;
};
struct MessagePassStep {
    std::size_t vertex;
    double phase;
};
struct PoolMeasureStep {
    std::vector<std::size_t> group;
};
struct PoolPhaseStep {
    std::vector<std::size_t> group;
    double phase;
};
struct PoolCRotStep {
    std::vector<std::size_t> group;
    std::size_t target;
    double angle;
};
/// Arbitrary gate on the layer's register (wires are vertex indices).
struct GateStep {
    GateOp gate;
};

/// Run the step only if trace[record] has outcome `outcome`.
struct StepCondition {
    std::size_t record;
    int outcome;
};

struct LayerStep {
    std::variant<EntangleStep, MessagePassStep, PoolMeasureStep, PoolPhaseStep,
                 PoolCRotStep, GateStep>
        op;
    /// Layer after which the step runs.
    std::size_t layer{0};
    std::optional<StepCondition> condition;
};

/**
 * @brief Trainable QGNN description.
 *
 * Layer i on an n-qubit register applies Ry(theta[i][v]) to every vertex
 * qubit and then the edge entangler with `layer_weights(i)`; the layer's
 * schedule steps follow.
 */
struct ModelSpec {
    Graph graph;
    std::size_t layers{1};
    Formalism formalism{Formalism::Sequential};
    EdgeConvention convention{EdgeConvention::ControlledPhase};
    std::vector<std::vector<double>> theta;
    std::vector<std::vector<double>> weights;
    bool shared_weights{false};
    /// CP phase coupling vertex v of register i-1 to vertex v of register i.
    double interlayer_phase{std::numbers::pi};
    std::vector<LayerStep> schedule;
    std::uint64_t seed{0};

    [[nodiscard]] const std::vector<double> &layer_weights(std::size_t i) const {
        return weights[shared_weights ? 0 : i];
    }

    void validate() const {
        require(layers >= 1, ErrorKind::InvalidArgument, "model needs >= 1 layer");
        require(theta.size() == layers, ErrorKind::SizeMismatch,
                "theta must have one row per layer");
        for (const auto &row : theta) {
            require(row.size() == graph.n_vertices(), ErrorKind::SizeMismatch,
                    "theta row length must equal vertex count");
        }
        require(weights.size() == (shared_weights ? 1 : layers),
                ErrorKind::SizeMismatch,
                "weights must have one row per layer (or one when shared)");
        for (const auto &row : weights) {
            require(row.size() == graph.n_edges(), ErrorKind::SizeMismatch,
                    "weight row length must equal edge count");
        }
        for (const auto &step : schedule) {
            require(step.layer < layers, ErrorKind::IndexOutOfRange,
                    "schedule step refers to a missing layer");
        }
    }

    [[nodiscard]] std::size_t parameter_count() const {
        return layers * graph.n_vertices() + weights.size() * graph.n_edges();
    }

    /// Flattened (theta row-major, then weights row-major).
    [[nodiscard]] std::vector<double> parameters() const {
        std::vector<double> p;
        p.reserve(parameter_count());
        for (const auto &row : theta) {
            p.insert(p.end(), row.begin(), row.end());
        }
        for (const auto &row : weights) {
            p.insert(p.end(), row.begin(), row.end());
        }
        return p;
    }

    void set_parameters(std::span<const double> p) {
        require(p.size() == parameter_count(), ErrorKind::SizeMismatch,
                "parameter vector has the wrong length");
        std::size_t k = 0;
        for (auto &row : theta) {
            for (double &x : row) {
                x = p[k++];
            }
        }
        for (auto &row : weights) {
            for (double &x : row) {
                x = p[k++];
            }
        }
    }

    /// True when flattened parameter `k` is a rotation angle.
    [[nodiscard]] bool is_rotation_parameter(std::size_t k) const {
        return k < layers * graph.n_vertices();
    }
};

/// theta = 0, every layer's weights copied from the graph.
inline ModelSpec make_model(Graph g, std::size_t layers,
                            Formalism formalism = Formalism::Sequential,
                            bool shared_weights = false) {
    ModelSpec m;
    m.layers = layers;
    m.formalism = formalism;
    m.shared_weights = shared_weights;
    m.theta.assign(layers, std::vector<double>(g.n_vertices(), 0.0));
    std::vector<double> w;
    for (const Edge &e : g.edges()) {
        w.push_back(e.weight);
    }
    m.weights.assign(shared_weights ? 1 : layers, w);
    m.graph = std::move(g);
    m.validate();
    return m;
}

/// theta ~ U(-pi, pi), weights ~ U(0, 2 pi), drawn from `seed`.
inline void randomize_parameters(ModelSpec &m, std::uint64_t seed) {
    Rng rng(seed);
    for (auto &row : m.theta) {
        for (double &x : row) {
            x = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
    }
    for (auto &row : m.weights) {
        for (double &x : row) {
            x = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }
    m.seed = seed;
}

// ---------------------------------------------------------------------------
// Formalisms
// ---------------------------------------------------------------------------

/// Applies layer i's rotations and entanglers to the register at `offset`.
inline void apply_layer(State &s, const ModelSpec &m, std::size_t i,
                        std::size_t offset = 0) {
    const auto &theta = m.theta[i];
    for (std::size_t v = 0; v < theta.size(); ++v) {
        if (theta[v] != 0.0) {
            s.apply(GateOp::ry(offset + v, theta[v]));
        }
    }
    const auto &w = m.layer_weights(i);
    const auto &edges = m.graph.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        s.apply(edge_gate(m.convention, offset + edges[e].u, offset + edges[e].v,
                          w[e]));
    }
}

/// Outputs of running a schedule.
struct ScheduleTrace {
    std::vector<MeasurementRecord> records;
    std::vector<double> phase_estimates;
};

/// Runs one schedule step on the register at `offset`.
inline void apply_step(State &s, const ModelSpec &m, const LayerStep &step,
                       std::size_t offset, ScheduleTrace &trace, Rng &rng) {
    if (step.condition) {
        require(step.condition->record < trace.records.size(),
                ErrorKind::InvalidArgument,
                "condition references a measurement not yet produced");
        if (trace.records[step.condition->record].outcome !=
            step.condition->outcome) {
            return;
        }
    }
    const Graph &g = m.graph;
    auto shift = [offset](std::vector<std::size_t> qs) {
        for (auto &q : qs) {
            q += offset;
        }
        return qs;
    };
    std::visit(
        [&](const auto &op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, EntangleStep>) {
                const auto &edges = g.edges();
                std::vector<std::size_t> idx = op.edges;
                if (idx.empty()) {
                    for (std::size_t e = 0; e < edges.size(); ++e) {
                        idx.push_back(e);
                    }
                }
                require(op.weights.empty() || op.weights.size() == idx.size(),
                        ErrorKind::SizeMismatch,
                        "entangle weights do not match its edges");
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    require(idx[k] < edges.size(), ErrorKind::IndexOutOfRange,
                            "entangle edge index out of range");
                    const Edge &e = edges[idx[k]];
                    const double w = op.weights.empty() ? e.weight : op.weights[k];
                    s.apply(edge_gate(m.convention, offset + e.u, offset + e.v, w));
                }
            } else if constexpr (std::is_same_v<T, MessagePassStep>) {
                message_pass(s, g, op.vertex, op.phase, offset);
            } else if constexpr (std::is_same_v<T, PoolMeasureStep>) {
                auto r = pool_measure(s, shift(op.group), rng);
                trace.records.insert(trace.records.end(), r.records.begin(),
                                     r.records.end());
            } else if constexpr (std::is_same_v<T, PoolPhaseStep>) {
                trace.phase_estimates.push_back(
                    pool_phase(s, g, shift(op.group), op.phase, offset).estimate);
            } else if constexpr (std::is_same_v<T, PoolCRotStep>) {
                pool_crot(s, shift(op.group), offset + op.target, op.angle);
            } else {
                GateOp gate = op.gate;
                gate.wires = shift(gate.wires);
                s.apply(gate);
            }
        },
        step.op);
}

/// Runs `steps` (ignoring their layer tags) on `s` from a fresh trace.
inline ScheduleTrace apply_schedule(State &s, const ModelSpec &m,
                                    std::span<const LayerStep> steps, Rng &rng,
                                    std::size_t offset = 0) {
    ScheduleTrace trace;
    for (const auto &step : steps) {
        apply_step(s, m, step, offset, trace, rng);
    }
    return trace;
}

namespace detail {

inline void run_layer_steps(State &s, const ModelSpec &m, std::size_t layer,
                            std::size_t offset, ScheduleTrace &trace, Rng &rng) {
    for (const auto &step : m.schedule) {
        if (step.layer == layer) {
            apply_step(s, m, step, offset, trace, rng);
        }
    }
}

inline std::size_t index_width(std::size_t layers) {
    std::size_t a = 0;
    while ((std::size_t{1} << a) < layers) {
        ++a;
    }
    return a;
}

} // namespace detail

struct SequentialResult {
    State final;
    ScheduleTrace trace;
};

/**
 * @brief Sequential formalism: one n-qubit register evolved layer by layer.
 *
 * Measurement steps collapse the register; later steps may be conditioned on
 * their outcomes.
 */
inline SequentialResult run_sequential(const ModelSpec &m,
                                       const GraphStateInit &init, Rng &rng) {
    m.validate();
    SequentialResult out{initial_product_state(m.graph.n_vertices(), init), {}};
    for (std::size_t i = 0; i < m.layers; ++i) {
        apply_layer(out.final, m, i);
        detail::run_layer_steps(out.final, m, i, 0, out.trace, rng);
    }
    return out;
}

/// Vertex-aligned CP(phase) from register i-1 onto register i.
inline void apply_interlayer(State &s, const ModelSpec &m, std::size_t i) {
    const std::size_t n = m.graph.n_vertices();
    require(i >= 1 && i < m.layers, ErrorKind::IndexOutOfRange,
            "interlayer index out of range");
    for (std::size_t v = 0; v < n; ++v) {
        s.apply(GateOp::cp((i - 1) * n + v, i * n + v, m.interlayer_phase));
    }
}

/**
 * @brief Registered formalism: |G_1>...|G_m> on m disjoint registers, register
 * i on qubits [i n, (i+1) n).
 *
 * With `couple`, `apply_interlayer` runs for i = 1..m-1 after all registers
 * are prepared.
 */
inline State build_registered(const ModelSpec &m, const GraphStateInit &init,
                              Rng &rng, bool couple = true,
                              ScheduleTrace *trace_out = nullptr) {
    m.validate();
    const std::size_t n = m.graph.n_vertices();
    require(m.layers * n <= kMaxQubits, ErrorKind::CapExceeded,
            "registered model exceeds qubit cap");
    const State base = initial_product_state(n, init);
    State s = base;
    for (std::size_t i = 1; i < m.layers; ++i) {
        s = tensor(s, base);
    }
    ScheduleTrace trace;
    for (std::size_t i = 0; i < m.layers; ++i) {
        apply_layer(s, m, i, i * n);
        detail::run_layer_steps(s, m, i, i * n, trace, rng);
    }
    if (couple) {
        for (std::size_t i = 1; i < m.layers; ++i) {
            apply_interlayer(s, m, i);
        }
    }
    if (trace_out != nullptr) {
        *trace_out = std::move(trace);
    }
    return s;
}

/**
 * @brief Superposed formalism: (1/sqrt m) sum_i |i> (x) |G_i>.
 *
 * The data register holds qubits [0, n); the ceil(log2 m)-qubit layer index
 * sits above it. Branch i is layer i applied to the initial state, followed
 * by its unitary schedule steps; measurement steps are rejected.
 */
inline State build_superposed(const ModelSpec &m, const GraphStateInit &init) {
    m.validate();
    const std::size_t n = m.graph.n_vertices();
    const std::size_t a = detail::index_width(m.layers);
    require(n + a <= kMaxQubits, ErrorKind::CapExceeded,
            "superposed model exceeds qubit cap");
    for (const auto &step : m.schedule) {
        require(!std::holds_alternative<PoolMeasureStep>(step.op) &&
                    !step.condition,
                ErrorKind::Unsupported,
                "measurement steps cannot run inside a superposed branch");
    }
    const State base = initial_product_state(n, init);
    std::vector<std::complex<double>> amps(std::size_t{1} << (n + a));
    const double scale = 1.0 / std::sqrt(static_cast<double>(m.layers));
    Rng unused(0);
    for (std::size_t i = 0; i < m.layers; ++i) {
        State branch = base;
        apply_layer(branch, m, i);
        ScheduleTrace trace;
        detail::run_layer_steps(branch, m, i, 0, trace, unused);
        for (std::size_t k = 0; k < branch.size(); ++k) {
            amps[(i << n) | k] = scale * branch[k];
        }
    }
    return State::from_amplitudes(std::move(amps));
}

/// Final state of any formalism plus the qubit offset of the readout register.
struct ForwardResult {
    State state;
    std::size_t readout_offset{0};
    ScheduleTrace trace;
};

inline ForwardResult forward(const ModelSpec &m, const GraphStateInit &init,
                             Rng &rng) {
    switch (m.formalism) {
    case Formalism::Superposed:
        return {build_superposed(m, init), 0, {}};
    case Formalism::Registered: {
        ScheduleTrace trace;
        State s = build_registered(m, init, rng, true, &trace);
        return {std::move(s), (m.layers - 1) * m.graph.n_vertices(),
                std::move(trace)};
    }
    case Formalism::Sequential:
        break;
    }
    auto r = run_sequential(m, init, rng);
    return {std::move(r.final), 0, std::move(r.trace)};
}

} // namespace qgns

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
 * Node-, edge- and graph-level readouts. Every estimator takes `shots`;
 * zero means the exact value computed from amplitudes.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "graphstate.hpp"
#include "qgnn.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace qgns {

namespace detail {

/// Exact p when shots == 0, otherwise the sample frequency of `shots` draws.
inline double estimate_probability(double p, std::size_t shots, Rng &rng) {
    p = std::clamp(p, 0.0, 1.0);
    if (shots == 0) {
        return p;
    }
    return static_cast<double>(sample_binomial(p, shots, rng)) /
           static_cast<double>(shots);
}

} // namespace detail

struct NodeReadout {
    double p1;     ///< probability of outcome -1
    int class_bit; ///< 1 iff p1 > 0.5
};

/// Binary node label from measuring `qubit` in the Y (default) or Z basis.
inline NodeReadout node_readout(const State &s, std::size_t qubit,
                                Basis basis = Basis::Y, std::size_t shots = 0,
                                Rng *rng = nullptr) {
    detail::require_normalized(s);
    require(basis != Basis::X, ErrorKind::InvalidArgument,
            "node readout uses the Y or Z basis");
    require(qubit < s.num_qubits(), ErrorKind::IndexOutOfRange,
            "readout qubit out of range");
    require(shots == 0 || rng != nullptr, ErrorKind::InvalidArgument,
            "shot-based readout needs an rng");
    const double exact = probability_minus(s, qubit, basis);
    Rng fallback(0);
    const double p1 =
        detail::estimate_probability(exact, shots, rng ? *rng : fallback);
    return {p1, p1 > 0.5 ? 1 : 0};
}

/**
 * @brief Multi-class node readout over several qubits.
 *
 * Class c is the joint outcome pattern whose bit t is 1 when qubit t read -1.
 * Returns the exact class distribution (length 2^k).
 */
inline std::vector<double> node_class_distribution(const State &s,
                                                   const std::vector<std::size_t> &qubits,
                                                   Basis basis = Basis::Y) {
    detail::require_normalized(s);
    State rotated = s;
    for (std::size_t q : qubits) {
        require(q < s.num_qubits(), ErrorKind::IndexOutOfRange,
                "readout qubit out of range");
        detail::rotate_to_z(rotated, q, basis);
    }
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < rotated.size(); ++i) {
        std::size_t c = 0;
        for (std::size_t t = 0; t < qubits.size(); ++t) {
            if ((i >> qubits[t]) & 1U) {
                c |= std::size_t{1} << t;
            }
        }
        dist[c] += std::norm(rotated[i]);
    }
    return dist;
}

/// Estimate of <Z_u Z_v>.
inline double edge_readout(const State &s, std::size_t u, std::size_t v,
                           std::size_t shots = 0, Rng *rng = nullptr) {
    detail::require_normalized(s);
    require(u != v, ErrorKind::InvalidArgument, "edge readout needs u != v");
    require(shots == 0 || rng != nullptr, ErrorKind::InvalidArgument,
            "shot-based readout needs an rng");
    const double exact =
        expectation_pauli(s, {{u, Pauli::Z}, {v, Pauli::Z}});
    if (shots == 0) {
        return exact;
    }
    // P(Z_u Z_v = +1) = (1 + <ZZ>) / 2
    const double p = detail::estimate_probability(0.5 * (1.0 + exact), shots, *rng);
    return 2.0 * p - 1.0;
}

/**
 * Hadamard-test estimate of Re<s|Uz(u, v, w_uv)|s> for graph edge (u, v),
 * with Uz the entangler of `convention`.
 */
inline double edge_phase_estimate(const State &s, const Graph &g, std::size_t u,
                                  std::size_t v, std::size_t shots = 0,
                                  Rng *rng = nullptr,
                                  EdgeConvention convention =
                                      EdgeConvention::ControlledPhase) {
    const auto idx = g.edge_index(u, v);
    require(idx.has_value(), ErrorKind::MissingEdge,
            "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    require(shots == 0 || rng != nullptr, ErrorKind::InvalidArgument,
            "shot-based readout needs an rng");
    const double w = g.edges()[*idx].weight;
    const double p0 = hadamard_test_p0(
        s, [&](State &t) { t.apply(edge_gate(convention, u, v, w)); });
    Rng fallback(0);
    return 2.0 * detail::estimate_probability(p0, shots, rng ? *rng : fallback) -
           1.0;
}

struct SwapTestResult {
    double p0;
    double overlap_sq;
};

/**
 * @brief Swap test between `a` and `b`.
 *
 * Qubits [0, n) hold `a`, [n, 2n) hold `b`, qubit 2n is the ancilla:
 * H(anc), CSWAP(anc; k, n + k) for every k, H(anc). P(anc = 0) is
 * (1 + |<a|b>|^2) / 2.
 */
inline SwapTestResult swap_test_overlap(const State &a, const State &b,
                                        std::size_t shots = 0, Rng *rng = nullptr) {
    require(a.num_qubits() == b.num_qubits(), ErrorKind::SizeMismatch,
            "swap test needs states of equal size");
    const std::size_t n = a.num_qubits();
    require(2 * n + 1 <= kMaxQubits, ErrorKind::CapExceeded,
            "swap test register exceeds qubit cap");
    require(shots == 0 || rng != nullptr, ErrorKind::InvalidArgument,
            "shot-based swap test needs an rng");
    detail::require_normalized(a);
    detail::require_normalized(b);
    State joint = tensor(tensor(a, b), State(1));
    const std::size_t anc = 2 * n;
    joint.apply(GateOp::h(anc));
    for (std::size_t k = 0; k < n; ++k) {
        joint.apply(GateOp::cswap(anc, k, n + k));
    }
    joint.apply(GateOp::h(anc));
    const double exact = std::clamp(1.0 - joint.probability_one(anc), 0.0, 1.0);
    Rng fallback(0);
    const double p0 =
        detail::estimate_probability(exact, shots, rng ? *rng : fallback);
    return {p0, std::clamp(2.0 * p0 - 1.0, 0.0, 1.0)};
}

struct Classification {
    std::vector<double> scores;
    std::size_t argmax{0};
};

/// Per-class swap tests; ties resolve to the lowest class index.
inline Classification classify_graph(const State &s,
                                     const std::vector<State> &class_states,
                                     std::size_t shots = 0, Rng *rng = nullptr) {
    require(!class_states.empty(), ErrorKind::InvalidArgument,
            "classification needs at least one class");
    Classification out;
    for (const State &c : class_states) {
        out.scores.push_back(swap_test_overlap(s, c, shots, rng).overlap_sq);
    }
    for (std::size_t k = 1; k < out.scores.size(); ++k) {
        if (out.scores[k] > out.scores[out.argmax]) {
            out.argmax = k;
        }
    }
    return out;
}

} // namespace qgns

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
 * Graph-state preparation and the stabilizer / basis-decomposition checks
 * that characterize it.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace qgns {

/**
 * @brief Two-qubit entangler used for each weighted edge.
 *
 * ControlledPhase is diag(1, 1, 1, e^{iw}), so w = pi is CZ and the basis
 * decomposition e^{i W.A.W / 2} holds exactly. IsingZZ is e^{-iw Z(x)Z}; the
 * two differ by single-qubit phases and a global phase (see
 * `ising_as_controlled_phase`).
 */
enum class EdgeConvention { ControlledPhase, IsingZZ };

constexpr std::string_view to_string(EdgeConvention c) {
    return c == EdgeConvention::ControlledPhase ? "cp" : "ising";
}

inline GateOp edge_gate(EdgeConvention c, std::size_t u, std::size_t v,
                        double w) {
    return c == EdgeConvention::ControlledPhase ? GateOp::cp(u, v, w)
                                                : GateOp::ising_zz(u, v, w);
}

/**
 * e^{-iw ZZ} = e^{-iw} * P_u(2w) * P_v(2w) * CP(-4w), with P(phi) =
 * diag(1, e^{i phi}).
 */
struct IsingDecomposition {
    double global_phase;
    double local_phase;
    double cp_weight;
};

inline IsingDecomposition ising_as_controlled_phase(double w) {
    return {-w, 2.0 * w, -4.0 * w};
}

/// Initial single-qubit product for `build_graph_state`.
struct PlusInit {};
struct ProductInit {
    std::vector<std::pair<std::complex<double>, std::complex<double>>> pairs;
};
struct RyInit {
    std::vector<double> angles;
};
using GraphStateInit = std::variant<PlusInit, ProductInit, RyInit>;

inline State initial_product_state(std::size_t n, const GraphStateInit &init) {
    if (std::holds_alternative<PlusInit>(init)) {
        return State::all_plus(n);
    }
    if (const auto *p = std::get_if<ProductInit>(&init)) {
        require(p->pairs.size() == n, ErrorKind::SizeMismatch,
                "product init length does not match vertex count");
        return State::product(p->pairs);
    }
    const auto &angles = std::get<RyInit>(init).angles;
    require(angles.size() == n, ErrorKind::SizeMismatch,
            "Ry init length does not match vertex count");
    State s(n);
    for (std::size_t q = 0; q < n; ++q) {
        s.apply(GateOp::ry(q, angles[q]));
    }
    return s;
}

/// Applies the entangler of every edge of `g` to `s` (qubit v = vertex v).
inline void entangle_edges(State &s, const Graph &g, EdgeConvention c,
                           std::size_t offset = 0) {
    for (const Edge &e : g.edges()) {
        s.apply(edge_gate(c, offset + e.u, offset + e.v, e.weight));
    }
}

inline State build_graph_state(const Graph &g,
                               EdgeConvention c = EdgeConvention::ControlledPhase,
                               const GraphStateInit &init = PlusInit{}) {
    State s = initial_product_state(g.n_vertices(), init);
    entangle_edges(s, g, c);
    return s;
}

/// Pauli string with an overall sign.
struct PauliString {
    std::map<std::size_t, Pauli> ops;
    int sign{1};

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// S_v = X_v prod_{u in N(v)} Z_u.
inline PauliString stabilizer_of(const Graph &g, std::size_t v) {
    require(g.is_unweighted(), ErrorKind::Unsupported,
            "Pauli stabilizers exist only for unweighted graphs");
    PauliString p;
    p.ops[v] = Pauli::X;
    for (std::size_t u : g.neighborhood(v)) {
        p.ops[u] = Pauli::Z;
    }
    return p;
}

struct StabilizerReport {
    std::vector<double> residuals;
    bool pass{false};
    double max_residual{0.0};
};

/// Residual ||S_v s - s|| for every vertex; passes when all are below `tol`.
inline StabilizerReport verify_stabilizers(const Graph &g, const State &s,
                                           double tol) {
    require(s.num_qubits() == g.n_vertices(), ErrorKind::SizeMismatch,
            "state qubit count does not match vertex count");
    StabilizerReport report;
    for (std::size_t v = 0; v < g.n_vertices(); ++v) {
        const PauliString p = stabilizer_of(g, v);
        State image = s;
        apply_pauli(image, p.ops);
        double acc = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            acc += std::norm(static_cast<double>(p.sign) * image[i] - s[i]);
        }
        const double r = std::sqrt(acc);
        report.residuals.push_back(r);
        report.max_residual = std::max(report.max_residual, r);
    }
    report.pass = report.max_residual < tol;
    return report;
}

/// e^{i W.A.W / 2} / sqrt(2^n) for the vertex-indicator vector W of `basis_index`.
inline std::complex<double> decomposition_amplitude(const Graph &g,
                                                    std::size_t basis_index) {
    const std::size_t n = g.n_vertices();
    require(n <= kMaxQubits && basis_index < (std::size_t{1} << n),
            ErrorKind::IndexOutOfRange, "basis index out of range");
    const RealMatrix a = adjacency_matrix(g);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!((basis_index >> i) & 1U)) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if ((basis_index >> j) & 1U) {
                quad += a(i, j);
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << n));
    return std::polar(scale, 0.5 * quad);
}

struct ConstraintRound {
    std::vector<MeasurementRecord> records;
    int product{1};
};

/**
 * @brief Measures v in X and each neighbor in Z on a fresh graph state.
 *
 * For a graph state the outcome product m_x(v) * prod m_z(u) is always +1.
 */
inline ConstraintRound constraint_round(const Graph &g, std::size_t v, Rng &rng) {
    require(g.is_unweighted(), ErrorKind::Unsupported,
            "measurement constraints hold only for unweighted graphs");
    State s = build_graph_state(g);
    ConstraintRound round;
    round.records.push_back(measure_qubit(s, v, Basis::X, rng));
    for (std::size_t u : g.neighborhood(v)) {
        round.records.push_back(measure_qubit(s, u, Basis::Z, rng));
    }
    for (const auto &r : round.records) {
        round.product *= r.outcome;
    }
    return round;
}

/// Moves qubit q of `s` to position perm[q].
inline State permute_qubits(const State &s, const std::vector<std::size_t> &perm) {
    require(perm.size() == s.num_qubits(), ErrorKind::SizeMismatch,
            "permutation length does not match qubit count");
    std::vector<std::complex<double>> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t q = 0; q < perm.size(); ++q) {
            if ((i >> q) & 1U) {
                j |= std::size_t{1} << perm[q];
            }
        }
        out[j] = s[i];
    }
    return State::from_amplitudes(std::move(out), s.normalized());
}

} // namespace qgns

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
// Shared test utilities: random graphs and states, conversions to oracle types.
#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include <qgns/qgns.hpp>

#include "oracle.hpp"

namespace testing {

inline oracle::Vec amplitudes(const qgns::State &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

inline std::vector<oracle::EdgeSpec> edge_specs(const qgns::Graph &g) {
    std::vector<oracle::EdgeSpec> out;
    for (const auto &e : g.edges()) {
        out.push_back({e.u, e.v, e.weight});
    }
    return out;
}

/// Erdos-Renyi graph with edge probability p; weights pi unless `weighted`.
inline qgns::Graph random_graph(std::mt19937_64 &gen, std::size_t n, double p,
                                bool weighted = false) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<qgns::Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (unit(gen) < p) {
                const double w = weighted ? 2.0 * std::numbers::pi * unit(gen)
                                          : qgns::kDefaultEdgeWeight;
                edges.push_back({u, v, w});
            }
        }
    }
    return qgns::Graph(n, std::move(edges));
}

inline qgns::State random_state(std::mt19937_64 &gen, std::size_t n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::complex<double>> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = {normal(gen), normal(gen)};
    }
    qgns::State s = qgns::State::from_amplitudes(std::move(a), false);
    s.renormalize();
    return s;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64 &gen,
                                                   std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = i;
    }
    std::shuffle(p.begin(), p.end(), gen);
    return p;
}

} // namespace testing

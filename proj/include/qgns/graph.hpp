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
 * Undirected weighted graphs, the `qgraph v1` text format, and the dense
 * adjacency/Laplacian matrices derived from them.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qgns {

/// Weight used for edges listed without one; CP(pi) is the controlled-Z.
inline constexpr double kDefaultEdgeWeight = std::numbers::pi;

struct Edge {
    std::size_t u;
    std::size_t v;
    double weight;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/**
 * @brief Dense row-major real matrix.
 */
class RealMatrix {
  public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_{rows}, cols_{cols}, data_(rows * cols, 0.0) {}

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static RealMatrix from_rows(const std::vector<std::vector<double>> &rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        RealMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            require(rows[i].size() == c, ErrorKind::SizeMismatch,
                    "ragged matrix rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    double &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] const std::vector<double> &data() const noexcept {
        return data_;
    }

    friend RealMatrix operator*(const RealMatrix &a, const RealMatrix &b) {
        require(a.cols_ == b.rows_, ErrorKind::SizeMismatch,
                "matrix product dimension mismatch");
        RealMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend RealMatrix operator+(RealMatrix a, const RealMatrix &b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_,
                ErrorKind::SizeMismatch, "matrix sum dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] += b.data_[i];
        }
        return a;
    }

    friend RealMatrix operator*(double s, RealMatrix a) {
        for (double &x : a.data_) {
            x *= s;
        }
        return a;
    }

    [[nodiscard]] std::vector<double> apply(const std::vector<double> &x) const {
        require(x.size() == cols_, ErrorKind::SizeMismatch,
                "matrix-vector dimension mismatch");
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                acc += (*this)(i, j) * x[j];
            }
            y[i] = acc;
        }
        return y;
    }

    [[nodiscard]] RealMatrix transpose() const {
        RealMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    friend bool operator==(const RealMatrix &, const RealMatrix &) = default;

  private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<double> data_;
};

/**
 * @brief Immutable undirected graph with per-edge phase weights.
 *
 * Edges are stored normalized (u < v) in insertion order. Self-loops and
 * duplicate edges are rejected at construction.
 */
class Graph {
  public:
    Graph() = default;

    Graph(std::size_t n_vertices, std::vector<Edge> edges)
        : n_{n_vertices}, edges_{std::move(edges)}, adjacency_(n_vertices) {
        require(n_ > 0, ErrorKind::InvalidArgument,
                "graph needs at least one vertex");
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (Edge &e : edges_) {
            require(e.u < n_ && e.v < n_, ErrorKind::IndexOutOfRange,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") out of range for n=" + std::to_string(n_));
            require(e.u != e.v, ErrorKind::SelfLoop,
                    "self-loop on vertex " + std::to_string(e.u));
            require(std::isfinite(e.weight), ErrorKind::InvalidArgument,
                    "non-finite edge weight");
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
            require(seen.emplace(e.u, e.v).second, ErrorKind::DuplicateEdge,
                    "duplicate edge (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ")");
            adjacency_[e.u].push_back(e.v);
            adjacency_[e.v].push_back(e.u);
        }
        for (auto &nbrs : adjacency_) {
            std::sort(nbrs.begin(), nbrs.end());
        }
    }

    /// Convenience for unweighted graphs: every edge gets the default weight.
    static Graph unweighted(std::size_t n_vertices,
                            const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
        std::vector<Edge> edges;
        edges.reserve(pairs.size());
        for (auto [u, v] : pairs) {
            edges.push_back({u, v, kDefaultEdgeWeight});
        }
        return Graph(n_vertices, std::move(edges));
    }

    [[nodiscard]] std::size_t n_vertices() const noexcept { return n_; }
    [[nodiscard]] std::size_t n_edges() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge> &edges() const noexcept {
        return edges_;
    }

    /// Sorted neighbor list N(v).
    [[nodiscard]] const std::vector<std::size_t> &neighborhood(std::size_t v) const {
        require(v < n_, ErrorKind::IndexOutOfRange,
                "vertex " + std::to_string(v) + " out of range");
        return adjacency_[v];
    }

    /// Position of edge {u, v} in `edges()`, if present.
    [[nodiscard]] std::optional<std::size_t> edge_index(std::size_t u,
                                                        std::size_t v) const {
        if (u > v) {
            std::swap(u, v);
        }
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (edges_[i].u == u && edges_[i].v == v) {
                return i;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_unweighted(double tol = 1e-12) const {
        return std::all_of(edges_.begin(), edges_.end(), [tol](const Edge &e) {
            return std::abs(e.weight - kDefaultEdgeWeight) <= tol;
        });
    }

    /// Same topology, new per-edge weights (in `edges()` order).
    [[nodiscard]] Graph with_weights(const std::vector<double> &weights) const {
        require(weights.size() == edges_.size(), ErrorKind::SizeMismatch,
                "weight vector length does not match edge count");
        std::vector<Edge> e = edges_;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i].weight = weights[i];
        }
        return Graph(n_, std::move(e));
    }

    /// Vertex v becomes perm[v].
    [[nodiscard]] Graph relabeled(const std::vector<std::size_t> &perm) const {
        require(perm.size() == n_, ErrorKind::SizeMismatch,
                "permutation length does not match vertex count");
        std::vector<Edge> e;
        e.reserve(edges_.size());
        for (const Edge &edge : edges_) {
            e.push_back({perm[edge.u], perm[edge.v], edge.weight});
        }
        return Graph(n_, std::move(e));
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    std::size_t n_{0};
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

inline RealMatrix adjacency_matrix(const Graph &g) {
    RealMatrix a(g.n_vertices(), g.n_vertices());
    for (const Edge &e : g.edges()) {
        a(e.u, e.v) = e.weight;
        a(e.v, e.u) = e.weight;
    }
    return a;
}

/// L = D - A with the weighted degree D(v,v) = sum_u A(v,u).
inline RealMatrix laplacian(const Graph &g) {
    const std::size_t n = g.n_vertices();
    RealMatrix l(n, n);
    for (const Edge &e : g.edges()) {
        l(e.u, e.v) -= e.weight;
        l(e.v, e.u) -= e.weight;
        l(e.u, e.u) += e.weight;
        l(e.v, e.v) += e.weight;
    }
    return l;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <class T> std::optional<T> parse_number(std::string_view token) {
    T value{};
    const char *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

} // namespace detail

/**
 * @brief Parses the `qgraph v1` text format.
 *
 * The first non-blank, non-comment line must be `qgraph v1 n=<n>`; each
 * following line is `u v [w]`. `#` starts a comment.
 */
inline Graph from_edge_list(std::string_view text) {
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        const auto tokens = detail::split_ws(line);
        if (!n) {
            require(tokens.size() == 3 && tokens[0] == "qgraph" &&
                        tokens[1] == "v1" && tokens[2].starts_with("n="),
                    ErrorKind::Parse, where + "expected header 'qgraph v1 n=<n>'");
            n = detail::parse_number<std::size_t>(tokens[2].substr(2));
            require(n.has_value() && *n > 0, ErrorKind::Parse,
                    where + "bad vertex count");
            continue;
        }
        require(tokens.size() == 2 || tokens.size() == 3, ErrorKind::Parse,
                where + "expected 'u v [w]'");
        const auto u = detail::parse_number<std::size_t>(tokens[0]);
        const auto v = detail::parse_number<std::size_t>(tokens[1]);
        require(u && v, ErrorKind::Parse, where + "bad vertex index");
        double w = kDefaultEdgeWeight;
        if (tokens.size() == 3) {
            const auto parsed = detail::parse_number<double>(tokens[2]);
            require(parsed && std::isfinite(*parsed), ErrorKind::Parse,
                    where + "bad weight");
            w = *parsed;
        }
        edges.push_back({*u, *v, w});
    }
    require(n.has_value(), ErrorKind::Parse, "missing 'qgraph v1' header");
    return Graph(*n, std::move(edges));
}

/// Inverse of `from_edge_list`; weights are written with round-trip precision.
inline std::string to_edge_list(const Graph &g) {
    std::ostringstream out;
    out.precision(17);
    out << "qgraph v1 n=" << g.n_vertices() << '\n';
    for (const Edge &e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    }
    return out.str();
}

} // namespace qgns

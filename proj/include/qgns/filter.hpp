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
 * Laplacian polynomial filters p_w(L) = sum_i w_i L^i.
 *
 * `polynomial_filter_matrix` evaluates the polynomial classically.
 * `apply_filter_lcu` emulates the circuit: the coefficients are loaded as
 * signed amplitudes of an index register, a cascade of controlled powers
 * L^(2^k) realizes the block-diagonal select operator sum_j |j><j| (x) L^j,
 * and projecting the index register onto the uniform state leaves
 * p_w(L) x up to a known scale.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "sim.hpp"

namespace qgns {

struct FilterSpec {
    std::vector<double> coefficients; ///< w_0 ... w_d

    [[nodiscard]] std::size_t degree() const { return coefficients.size() - 1; }

    void validate() const {
        require(!coefficients.empty(), ErrorKind::InvalidArgument,
                "filter needs at least one coefficient");
        require(std::any_of(coefficients.begin(), coefficients.end(),
                            [](double w) { return w != 0.0; }),
                ErrorKind::InvalidArgument,
                "filter needs a nonzero coefficient");
        for (double w : coefficients) {
            require(std::isfinite(w), ErrorKind::InvalidArgument,
                    "non-finite filter coefficient");
        }
    }
};

/// Horner evaluation of sum_i w_i L^i.
inline RealMatrix polynomial_filter_matrix(const RealMatrix &l,
                                           const std::vector<double> &w) {
    require(l.square(), ErrorKind::SizeMismatch, "Laplacian must be square");
    require(!w.empty(), ErrorKind::InvalidArgument,
            "filter needs at least one coefficient");
    const RealMatrix eye = RealMatrix::identity(l.rows());
    RealMatrix p = w.back() * eye;
    for (std::size_t i = w.size() - 1; i-- > 0;) {
        p = p * l + w[i] * eye;
    }
    return p;
}

/// Smallest a with 2^a >= count.
inline std::size_t register_width(std::size_t count) {
    std::size_t a = 0;
    while ((std::size_t{1} << a) < count) {
        ++a;
    }
    return a;
}

/// Pads L to 2^v x 2^v (v >= 1) with identity on the extra coordinates.
inline RealMatrix pad_to_power_of_two(const RealMatrix &l) {
    require(l.square() && l.rows() > 0, ErrorKind::SizeMismatch,
            "Laplacian must be square and nonempty");
    const std::size_t dim = std::size_t{1} << std::max<std::size_t>(
                                1, register_width(l.rows()));
    RealMatrix p = RealMatrix::identity(dim);
    for (std::size_t i = 0; i < l.rows(); ++i) {
        for (std::size_t j = 0; j < l.cols(); ++j) {
            p(i, j) = l(i, j);
        }
    }
    return p;
}

/**
 * @brief Block-diagonal select operator sum_{j < 2^a} |j><j| (x) L^j.
 *
 * Built as the product of controlled powers: index qubit k applies L^(2^k)
 * to the data register when set, so index j accumulates L^j. The data
 * register occupies the low qubits, the index register the high ones.
 */
inline RealMatrix select_powers_operator(const RealMatrix &l, std::size_t a) {
    require(l.square() && l.rows() >= 1 && (l.rows() & (l.rows() - 1)) == 0,
            ErrorKind::SizeMismatch,
            "select operator needs L padded to a power-of-two dimension");
    const std::size_t d = l.rows();
    const std::size_t blocks = std::size_t{1} << a;
    require(register_width(d) + a <= kMaxQubits, ErrorKind::CapExceeded,
            "select operator exceeds qubit cap");
    RealMatrix op = RealMatrix::identity(d * blocks);
    RealMatrix power = l; // L^(2^k)
    for (std::size_t k = 0; k < a; ++k) {
        RealMatrix factor(d * blocks, d * blocks);
        const RealMatrix eye = RealMatrix::identity(d);
        for (std::size_t j = 0; j < blocks; ++j) {
            const RealMatrix &block = ((j >> k) & 1U) ? power : eye;
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    factor(j * d + r, j * d + c) = block(r, c);
                }
            }
        }
        op = factor * op;
        power = power * power;
    }
    return op;
}

struct FilterResult {
    std::vector<double> y; ///< unit vector along p_w(L) x
    double scale;          ///< scale * y == p_w(L) x
};

/**
 * @brief Emulated LCU application of p_w(L) to x.
 *
 * @param index_width Index-register width; defaults to the smallest width
 * holding every coefficient.
 */
inline FilterResult apply_filter_lcu(const std::vector<double> &x,
                                     const RealMatrix &l,
                                     const std::vector<double> &w,
                                     std::optional<std::size_t> index_width = {}) {
    FilterSpec{w}.validate();
    require(l.square() && l.rows() == x.size(), ErrorKind::SizeMismatch,
            "Laplacian and vector dimensions differ");
    const double xnorm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    const double wnorm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    require(xnorm > 0.0, ErrorKind::InvalidArgument, "input vector is zero");
    const std::size_t a = index_width.value_or(register_width(w.size()));
    require(w.size() <= (std::size_t{1} << a), ErrorKind::InvalidArgument,
            "index register too narrow for the coefficient count");

    const RealMatrix lp = pad_to_power_of_two(l);
    const std::size_t d = lp.rows();
    const std::size_t v = register_width(d);
    const std::size_t blocks = std::size_t{1} << a;

    std::vector<std::complex<double>> amps(d * blocks, 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            amps[j * d + i] = (w[j] / wnorm) * (x[i] / xnorm);
        }
    }
    State s = State::from_amplitudes(std::move(amps));

    const RealMatrix select = select_powers_operator(lp, a);
    std::vector<std::complex<double>> matrix(select.data().begin(),
                                             select.data().end());
    std::vector<std::size_t> targets(v + a);
    std::iota(targets.begin(), targets.end(), 0);
    s = apply_linear_operator(std::move(s), matrix, targets, false).state;

    // Norm of the largest possible cancellation-free projection.
    double reference = 0.0;
    for (std::size_t j = 0; j < blocks; ++j) {
        double block = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            block += std::norm(s[j * d + i]);
        }
        reference += std::sqrt(block);
    }
    reference /= std::sqrt(static_cast<double>(blocks));

    for (std::size_t k = 0; k < a; ++k) {
        s.apply(GateOp::h(v + k));
    }
    std::vector<double> r(d);
    double rnorm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        r[i] = std::real(s[i]);
        rnorm += r[i] * r[i];
    }
    rnorm = std::sqrt(rnorm);
    require(rnorm > 1e-12 * reference && rnorm > 0.0, ErrorKind::ZeroNorm,
            "filter annihilates the input vector");

    FilterResult out;
    out.y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.y[i] = r[i] / rnorm;
    }
    out.scale = rnorm * wnorm * xnorm * std::sqrt(static_cast<double>(blocks));
    return out;
}

} // namespace qgns

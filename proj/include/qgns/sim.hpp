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
 * Dense state-vector simulator: gate kernels, measurement, sampling, Pauli
 * expectations and non-unitary linear operators.
 *
 * Basis convention: qubit q is bit q of the basis index (qubit 0 is the least
 * significant bit).
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace qgns {

/// Largest register the dense simulator will allocate (2^24 amplitudes).
inline constexpr std::size_t kMaxQubits = 24;

enum class Pauli : std::uint8_t { I, X, Y, Z };

enum class GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    Ry,
    Rz,
    CP,
    IsingZZ,
    CRy,
    MCZ,
    SWAP,
    CSWAP,
    LinOp,
};

/**
 * @brief Gate descriptor.
 *
 * `wires` lists controls first, then targets: CP/CRy are (control, target),
 * CSWAP is (control, a, b), MCZ flips the sign of the all-ones component of
 * every listed wire. For LinOp, `wires[t]` is bit t of the local matrix index
 * and `matrix` is row-major 2^k x 2^k.
 */
struct GateOp {
    GateKind kind{GateKind::H};
    std::vector<std::size_t> wires;
    double param{0.0};
    std::vector<std::complex<double>> matrix;

    static GateOp h(std::size_t q) { return make(GateKind::H, {q}); }
    static GateOp x(std::size_t q) { return make(GateKind::X, {q}); }
    static GateOp y(std::size_t q) { return make(GateKind::Y, {q}); }
    static GateOp z(std::size_t q) { return make(GateKind::Z, {q}); }
    static GateOp s(std::size_t q) { return make(GateKind::S, {q}); }
    static GateOp sdg(std::size_t q) { return make(GateKind::Sdg, {q}); }
    static GateOp ry(std::size_t q, double theta) {
        return make(GateKind::Ry, {q}, theta);
    }
    static GateOp rz(std::size_t q, double theta) {
        return make(GateKind::Rz, {q}, theta);
    }
    static GateOp cp(std::size_t control, std::size_t target, double w) {
        return make(GateKind::CP, {control, target}, w);
    }
    static GateOp ising_zz(std::size_t a, std::size_t b, double w) {
        return make(GateKind::IsingZZ, {a, b}, w);
    }
    static GateOp cry(std::size_t control, std::size_t target, double theta) {
        return make(GateKind::CRy, {control, target}, theta);
    }
    static GateOp mcz(std::vector<std::size_t> wires) {
        return make(GateKind::MCZ, std::move(wires));
    }
    static GateOp swap(std::size_t a, std::size_t b) {
        return make(GateKind::SWAP, {a, b});
    }
    static GateOp cswap(std::size_t control, std::size_t a, std::size_t b) {
        return make(GateKind::CSWAP, {control, a, b});
    }
    static GateOp make(GateKind kind, std::vector<std::size_t> wires,
                       double param = 0.0) {
        return {kind, std::move(wires), param, {}};
    }
    static GateOp linop(std::vector<std::complex<double>> matrix,
                        std::vector<std::size_t> targets) {
        return {GateKind::LinOp, std::move(targets), 0.0, std::move(matrix)};
    }
};

enum class Basis : std::uint8_t { X, Y, Z };

struct MeasurementRecord {
    std::size_t qubit;
    Basis basis;
    int outcome; ///< +1 or -1
    double probability;
};

namespace detail {

/// Inserts a zero at bit position `q` of `k`.
constexpr std::size_t insert_zero_bit(std::size_t k, std::size_t q) {
    const std::size_t low = k & ((std::size_t{1} << q) - 1);
    return ((k >> q) << (q + 1)) | low;
}

/// Inserts zeros at every position in `sorted_wires` (ascending).
inline std::size_t insert_zero_bits(std::size_t k,
                                    std::span<const std::size_t> sorted_wires) {
    for (std::size_t q : sorted_wires) {
        k = insert_zero_bit(k, q);
    }
    return k;
}

} // namespace detail

/**
 * @brief Dense amplitude vector over `n` qubits.
 *
 * Owns its storage; copies are independent clones. Single-writer: kernels
 * mutate in place.
 *
 * @tparam PrecisionT Floating point type of the real and imaginary parts.
 */
template <class PrecisionT = double> class StateVector {
  public:
    using ComplexT = std::complex<PrecisionT>;

    StateVector() = default;

    /// |0...0>
    explicit StateVector(std::size_t n_qubits) : n_{n_qubits} {
        check_cap(n_qubits);
        data_.assign(std::size_t{1} << n_qubits, ComplexT{0, 0});
        data_[0] = ComplexT{1, 0};
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    static StateVector from_amplitudes(std::vector<ComplexT> amps,
                                       bool normalized = true) {
        require(!amps.empty() && (amps.size() & (amps.size() - 1)) == 0,
                ErrorKind::SizeMismatch,
                "amplitude count must be a power of two");
        StateVector s;
        s.n_ = static_cast<std::size_t>(std::countr_zero(amps.size()));
        check_cap(s.n_);
        s.data_ = std::move(amps);
        s.normalized_ = normalized;
        return s;
    }

    static StateVector all_zero(std::size_t n) { return StateVector(n); }

    static StateVector all_plus(std::size_t n) {
        StateVector s(n);
        const PrecisionT a = 1 / std::sqrt(static_cast<PrecisionT>(s.size()));
        std::fill(s.data_.begin(), s.data_.end(), ComplexT{a, 0});
        return s;
    }

    /// Tensor product of single-qubit states alpha_i|0> + beta_i|1>, qubit i
    /// taking pair i.
    static StateVector product(std::span<const std::pair<ComplexT, ComplexT>> pairs) {
        require(!pairs.empty(), ErrorKind::InvalidArgument,
                "product state needs at least one qubit");
        for (const auto &[a, b] : pairs) {
            require(std::abs(std::norm(a) + std::norm(b) - 1) <= 1e-9,
                    ErrorKind::Unnormalized,
                    "single-qubit amplitudes are not normalized");
        }
        StateVector s(pairs.size());
        for (std::size_t idx = 0; idx < s.size(); ++idx) {
            ComplexT amp{1, 0};
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                amp *= ((idx >> q) & 1U) ? pairs[q].second : pairs[q].first;
            }
            s.data_[idx] = amp;
        }
        return s;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool normalized() const noexcept { return normalized_; }

    [[nodiscard]] std::span<const ComplexT> amplitudes() const noexcept {
        return data_;
    }
    [[nodiscard]] std::span<ComplexT> amplitudes() noexcept { return data_; }
    ComplexT operator[](std::size_t i) const { return data_[i]; }

    [[nodiscard]] PrecisionT norm_squared() const {
        PrecisionT acc = 0;
        for (const auto &a : data_) {
            acc += std::norm(a);
        }
        return acc;
    }

    /// Rescales to unit norm and returns the norm before rescaling.
    PrecisionT renormalize() {
        const PrecisionT nrm = std::sqrt(norm_squared());
        require(nrm > 0, ErrorKind::ZeroNorm, "cannot normalize a zero vector");
        for (auto &a : data_) {
            a /= nrm;
        }
        normalized_ = true;
        return nrm;
    }

    void mark_unnormalized() noexcept { normalized_ = false; }

    /// Probability that qubit q reads 1 in the computational basis.
    [[nodiscard]] PrecisionT probability_one(std::size_t q) const {
        check_wire(q);
        PrecisionT p = 0;
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i & mask) {
                p += std::norm(data_[i]);
            }
        }
        return p;
    }

    StateVector &apply(const GateOp &g) {
        validate(g);
        switch (g.kind) {
        case GateKind::H: {
            const PrecisionT r = 1 / std::sqrt(PrecisionT{2});
            apply_1q(g.wires[0], {r, 0}, {r, 0}, {r, 0}, {-r, 0});
            break;
        }
        case GateKind::X:
            apply_1q(g.wires[0], {0, 0}, {1, 0}, {1, 0}, {0, 0});
            break;
        case GateKind::Y:
            apply_1q(g.wires[0], {0, 0}, {0, -1}, {0, 1}, {0, 0});
            break;
        case GateKind::Z:
            apply_phase_1q(g.wires[0], ComplexT{-1, 0});
            break;
        case GateKind::S:
            apply_phase_1q(g.wires[0], ComplexT{0, 1});
            break;
        case GateKind::Sdg:
            apply_phase_1q(g.wires[0], ComplexT{0, -1});
            break;
        case GateKind::Ry: {
            const PrecisionT c = std::cos(static_cast<PrecisionT>(g.param) / 2);
            const PrecisionT s = std::sin(static_cast<PrecisionT>(g.param) / 2);
            apply_1q(g.wires[0], {c, 0}, {-s, 0}, {s, 0}, {c, 0});
            break;
        }
        case GateKind::Rz: {
            const ComplexT e0 = std::polar(PrecisionT{1},
                                           static_cast<PrecisionT>(-g.param / 2));
            const ComplexT e1 = std::polar(PrecisionT{1},
                                           static_cast<PrecisionT>(g.param / 2));
            apply_diag_1q(g.wires[0], e0, e1);
            break;
        }
        case GateKind::CP:
            apply_cphase(g.wires[0], g.wires[1],
                         std::polar(PrecisionT{1}, static_cast<PrecisionT>(g.param)));
            break;
        case GateKind::IsingZZ:
            apply_ising_zz(g.wires[0], g.wires[1], static_cast<PrecisionT>(g.param));
            break;
        case GateKind::CRy:
            apply_cry(g.wires[0], g.wires[1], static_cast<PrecisionT>(g.param));
            break;
        case GateKind::MCZ:
            apply_mcz(g.wires);
            break;
        case GateKind::SWAP:
            apply_swap(g.wires[0], g.wires[1], std::nullopt);
            break;
        case GateKind::CSWAP:
            apply_swap(g.wires[1], g.wires[2], g.wires[0]);
            break;
        case GateKind::LinOp:
            apply_matrix(g.matrix, g.wires);
            normalized_ = false;
            break;
        }
        return *this;
    }

    /// Dense matrix on `targets`; `matrix` is 2^k x 2^k row-major.
    StateVector &apply_matrix(std::span<const std::complex<double>> matrix,
                              std::span<const std::size_t> targets) {
        const std::size_t k = targets.size();
        const std::size_t dim = std::size_t{1} << k;
        require(matrix.size() == dim * dim, ErrorKind::SizeMismatch,
                "operator must be 2^k x 2^k for k targets");
        std::vector<std::size_t> sorted(targets.begin(), targets.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> offsets(dim, 0);
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t t = 0; t < k; ++t) {
                if ((j >> t) & 1U) {
                    offsets[j] |= std::size_t{1} << targets[t];
                }
            }
        }
        std::vector<ComplexT> in(dim);
        const std::size_t blocks = data_.size() >> k;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t base = detail::insert_zero_bits(b, sorted);
            for (std::size_t j = 0; j < dim; ++j) {
                in[j] = data_[base | offsets[j]];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                ComplexT acc{0, 0};
                for (std::size_t c = 0; c < dim; ++c) {
                    acc += static_cast<ComplexT>(matrix[r * dim + c]) * in[c];
                }
                data_[base | offsets[r]] = acc;
            }
        }
        return *this;
    }

  private:
    static void check_cap(std::size_t n) {
        require(n >= 1 && n <= kMaxQubits, ErrorKind::CapExceeded,
                "qubit count " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxQubits) + "]");
    }

    void check_wire(std::size_t q) const {
        require(q < n_, ErrorKind::IndexOutOfRange,
                "qubit " + std::to_string(q) + " out of range for " +
                    std::to_string(n_) + " qubits");
    }

    void validate(const GateOp &g) const {
        std::size_t expected = 0;
        switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::Ry:
        case GateKind::Rz:
            expected = 1;
            break;
        case GateKind::CP:
        case GateKind::IsingZZ:
        case GateKind::CRy:
        case GateKind::SWAP:
            expected = 2;
            break;
        case GateKind::CSWAP:
            expected = 3;
            break;
        case GateKind::MCZ:
        case GateKind::LinOp:
            expected = g.wires.size();
            require(expected >= 1, ErrorKind::InvalidArgument,
                    "gate needs at least one wire");
            break;
        }
        require(g.wires.size() == expected, ErrorKind::InvalidArgument,
                "wrong number of wires for gate");
        for (std::size_t i = 0; i < g.wires.size(); ++i) {
            check_wire(g.wires[i]);
            for (std::size_t j = 0; j < i; ++j) {
                require(g.wires[i] != g.wires[j], ErrorKind::InvalidArgument,
                        "gate wires must be distinct");
            }
        }
        if (g.kind == GateKind::LinOp) {
            const std::size_t dim = std::size_t{1} << g.wires.size();
            require(g.matrix.size() == dim * dim, ErrorKind::SizeMismatch,
                    "operator must be 2^k x 2^k for k targets");
        }
    }

    void apply_1q(std::size_t q, ComplexT m00, ComplexT m01, ComplexT m10,
                  ComplexT m11) {
        const std::size_t shift = std::size_t{1} << q;
        const std::size_t half = data_.size() >> 1U;
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t i0 = detail::insert_zero_bit(k, q);
            const std::size_t i1 = i0 | shift;
            const ComplexT v0 = data_[i0];
            const ComplexT v1 = data_[i1];
            data_[i0] = m00 * v0 + m01 * v1;
            data_[i1] = m10 * v0 + m11 * v1;
        }
    }

    void apply_phase_1q(std::size_t q, ComplexT phase) {
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i & mask) {
                data_[i] *= phase;
            }
        }
    }

    void apply_diag_1q(std::size_t q, ComplexT d0, ComplexT d1) {
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] *= (i & mask) ? d1 : d0;
        }
    }

    void apply_cphase(std::size_t a, std::size_t b, ComplexT phase) {
        const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if ((i & mask) == mask) {
                data_[i] *= phase;
            }
        }
    }

    // e^{-iw Z_a Z_b}: even parity picks up e^{-iw}, odd parity e^{iw}.
    void apply_ising_zz(std::size_t a, std::size_t b, PrecisionT w) {
        const ComplexT even = std::polar(PrecisionT{1}, -w);
        const ComplexT odd = std::polar(PrecisionT{1}, w);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            const bool parity = (((i >> a) ^ (i >> b)) & 1U) != 0;
            data_[i] *= parity ? odd : even;
        }
    }

    void apply_cry(std::size_t control, std::size_t target, PrecisionT theta) {
        const PrecisionT c = std::cos(theta / 2);
        const PrecisionT s = std::sin(theta / 2);
        const std::size_t cmask = std::size_t{1} << control;
        const std::size_t tmask = std::size_t{1} << target;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if ((i & cmask) && !(i & tmask)) {
                const std::size_t j = i | tmask;
                const ComplexT v0 = data_[i];
                const ComplexT v1 = data_[j];
                data_[i] = c * v0 - s * v1;
                data_[j] = s * v0 + c * v1;
            }
        }
    }

    void apply_mcz(std::span<const std::size_t> wires) {
        std::size_t mask = 0;
        for (std::size_t q : wires) {
            mask |= std::size_t{1} << q;
        }
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if ((i & mask) == mask) {
                data_[i] = -data_[i];
            }
        }
    }

    void apply_swap(std::size_t a, std::size_t b,
                    std::optional<std::size_t> control) {
        const std::size_t amask = std::size_t{1} << a;
        const std::size_t bmask = std::size_t{1} << b;
        const std::size_t cmask = control ? (std::size_t{1} << *control) : 0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if ((i & cmask) == cmask && (i & amask) && !(i & bmask)) {
                std::swap(data_[i], data_[(i & ~amask) | bmask]);
            }
        }
    }

    std::size_t n_{0};
    std::vector<ComplexT> data_;
    bool normalized_{true};
};

/// Standard precision used by every higher-level module.
using State = StateVector<double>;

/// Inner product <a|b>.
template <class PrecisionT>
std::complex<PrecisionT> inner_product(const StateVector<PrecisionT> &a,
                                       const StateVector<PrecisionT> &b) {
    require(a.size() == b.size(), ErrorKind::SizeMismatch,
            "inner product of states with different qubit counts");
    std::complex<PrecisionT> acc{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// |a> (x) |b> with `a` on the low qubits.
template <class PrecisionT>
StateVector<PrecisionT> tensor(const StateVector<PrecisionT> &low,
                               const StateVector<PrecisionT> &high) {
    require(low.num_qubits() + high.num_qubits() <= kMaxQubits,
            ErrorKind::CapExceeded, "tensor product exceeds qubit cap");
    std::vector<std::complex<PrecisionT>> amps(low.size() * high.size());
    for (std::size_t j = 0; j < high.size(); ++j) {
        for (std::size_t i = 0; i < low.size(); ++i) {
            amps[j * low.size() + i] = low[i] * high[j];
        }
    }
    return StateVector<PrecisionT>::from_amplitudes(
        std::move(amps), low.normalized() && high.normalized());
}

/// Result of a renormalizing linear-operator application.
template <class PrecisionT> struct LinearResult {
    StateVector<PrecisionT> state;
    PrecisionT norm_factor;
};

/**
 * @brief Applies a (possibly non-unitary) operator on `targets`.
 *
 * With `renormalize`, the result is rescaled to unit norm and the norm before
 * rescaling is returned; a zero result raises `ErrorKind::ZeroNorm`.
 * Without it, the state is flagged unnormalized and `norm_factor` is its norm.
 */
template <class PrecisionT>
LinearResult<PrecisionT>
apply_linear_operator(StateVector<PrecisionT> s,
                      std::span<const std::complex<double>> matrix,
                      std::span<const std::size_t> targets, bool renormalize,
                      PrecisionT zero_tol = 1e-14) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        require(targets[i] < s.num_qubits(), ErrorKind::IndexOutOfRange,
                "linear operator target out of range");
        for (std::size_t j = 0; j < i; ++j) {
            require(targets[i] != targets[j], ErrorKind::InvalidArgument,
                    "linear operator targets must be distinct");
        }
    }
    s.apply_matrix(matrix, targets);
    s.mark_unnormalized();
    const PrecisionT nrm = std::sqrt(s.norm_squared());
    if (renormalize) {
        require(nrm > zero_tol, ErrorKind::ZeroNorm,
                "operator annihilated the state");
        s.renormalize();
    }
    return {std::move(s), nrm};
}

namespace detail {

template <class PrecisionT>
void require_normalized(const StateVector<PrecisionT> &s) {
    require(s.normalized() && std::abs(s.norm_squared() - 1) <= 1e-9,
            ErrorKind::Unnormalized, "operation requires a normalized state");
}

template <class PrecisionT>
void rotate_to_z(StateVector<PrecisionT> &s, std::size_t q, Basis basis) {
    if (basis == Basis::X) {
        s.apply(GateOp::h(q));
    } else if (basis == Basis::Y) {
        s.apply(GateOp::sdg(q));
        s.apply(GateOp::h(q));
    }
}

template <class PrecisionT>
void rotate_from_z(StateVector<PrecisionT> &s, std::size_t q, Basis basis) {
    if (basis == Basis::X) {
        s.apply(GateOp::h(q));
    } else if (basis == Basis::Y) {
        s.apply(GateOp::h(q));
        s.apply(GateOp::s(q));
    }
}

} // namespace detail

/// Probability of outcome -1 when qubit q is measured in `basis`.
template <class PrecisionT>
PrecisionT probability_minus(const StateVector<PrecisionT> &s, std::size_t q,
                             Basis basis) {
    if (basis == Basis::Z) {
        return s.probability_one(q);
    }
    StateVector<PrecisionT> rotated = s;
    detail::rotate_to_z(rotated, q, basis);
    return rotated.probability_one(q);
}

/**
 * @brief Projective single-qubit measurement in the X, Y or Z basis.
 *
 * The state collapses onto the observed eigenvector and stays in the
 * computational frame. Outcome +1 is sampled when `u < p(+1)` for a uniform
 * draw `u`.
 */
template <class PrecisionT>
MeasurementRecord measure_qubit(StateVector<PrecisionT> &s, std::size_t q,
                                Basis basis, Rng &rng) {
    detail::require_normalized(s);
    require(q < s.num_qubits(), ErrorKind::IndexOutOfRange,
            "measured qubit out of range");
    detail::rotate_to_z(s, q, basis);
    const PrecisionT p1 = std::clamp<PrecisionT>(s.probability_one(q), 0, 1);
    const PrecisionT p0 = 1 - p1;
    const bool plus = rng.uniform() < static_cast<double>(p0);
    const std::size_t mask = std::size_t{1} << q;
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool one = (i & mask) != 0;
        if (one == plus) {
            amps[i] = 0;
        }
    }
    s.renormalize();
    detail::rotate_from_z(s, q, basis);
    return {q, basis, plus ? 1 : -1, static_cast<double>(plus ? p0 : p1)};
}

/// Multinomial sample of basis indices from |amp|^2.
template <class PrecisionT>
std::map<std::size_t, std::size_t>
sample_counts(const StateVector<PrecisionT> &s, std::size_t shots, Rng &rng) {
    detail::require_normalized(s);
    require(shots >= 1, ErrorKind::InvalidArgument, "shots must be >= 1");
    std::vector<double> cdf(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += static_cast<double>(std::norm(s[i]));
        cdf[i] = acc;
    }
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t k = 0; k < shots; ++k) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        idx = std::min(idx, s.size() - 1);
        ++counts[idx];
    }
    return counts;
}

/// Number of successes in `shots` Bernoulli(p) trials.
inline std::size_t sample_binomial(double p, std::size_t shots, Rng &rng) {
    std::size_t hits = 0;
    for (std::size_t k = 0; k < shots; ++k) {
        if (rng.uniform() < p) {
            ++hits;
        }
    }
    return hits;
}

/// Applies a Pauli string in place (phase +1).
template <class PrecisionT>
void apply_pauli(StateVector<PrecisionT> &s,
                 const std::map<std::size_t, Pauli> &paulis) {
    for (const auto &[q, p] : paulis) {
        switch (p) {
        case Pauli::I:
            break;
        case Pauli::X:
            s.apply(GateOp::x(q));
            break;
        case Pauli::Y:
            s.apply(GateOp::y(q));
            break;
        case Pauli::Z:
            s.apply(GateOp::z(q));
            break;
        }
    }
}

/// <s|P|s> for a Pauli string P.
template <class PrecisionT>
PrecisionT expectation_pauli(const StateVector<PrecisionT> &s,
                             const std::map<std::size_t, Pauli> &paulis) {
    bool diagonal = true;
    std::size_t zmask = 0;
    for (const auto &[q, p] : paulis) {
        require(q < s.num_qubits(), ErrorKind::IndexOutOfRange,
                "Pauli qubit out of range");
        if (p == Pauli::Z) {
            zmask |= std::size_t{1} << q;
        } else if (p != Pauli::I) {
            diagonal = false;
        }
    }
    if (diagonal) {
        PrecisionT acc = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const bool odd = (std::popcount(i & zmask) & 1) != 0;
            acc += odd ? -std::norm(s[i]) : std::norm(s[i]);
        }
        return acc;
    }
    StateVector<PrecisionT> ps = s;
    apply_pauli(ps, paulis);
    return std::real(inner_product(s, ps));
}

/// Writes `index real imag` lines with round-trip precision.
template <class PrecisionT>
void dump_state(std::ostream &out, const StateVector<PrecisionT> &s) {
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << i << ' ' << std::real(s[i]) << ' ' << std::imag(s[i]) << '\n';
    }
    out.precision(old);
}

} // namespace qgns

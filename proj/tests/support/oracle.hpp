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
// Brute-force reference implementations used by the tests. Everything here is
// built from dense matrices and Kronecker products and shares no code with
// the library kernels.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

struct Mat {
    std::size_t dim{0};
    std::vector<cplx> a;

    explicit Mat(std::size_t d = 0) : dim{d}, a(d * d) {}
    cplx &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Mat eye(std::size_t d) {
        Mat m(d);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
    static Mat of(std::size_t d, std::initializer_list<cplx> vals) {
        Mat m(d);
        std::size_t k = 0;
        for (cplx v : vals) {
            m.a[k++] = v;
        }
        return m;
    }
};

inline Mat operator*(const Mat &x, const Mat &y) {
    Mat r(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t k = 0; k < x.dim; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < x.dim; ++j) {
                r(i, j) += xik * y(k, j);
            }
        }
    }
    return r;
}

inline Mat operator+(const Mat &x, const Mat &y) {
    Mat r(x.dim);
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        r.a[i] = x.a[i] + y.a[i];
    }
    return r;
}

inline Mat scaled(cplx s, const Mat &x) {
    Mat r = x;
    for (auto &v : r.a) {
        v *= s;
    }
    return r;
}

inline Vec operator*(const Mat &m, const Vec &v) {
    Vec r(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < m.dim; ++j) {
            r[i] += m(i, j) * v[j];
        }
    }
    return r;
}

/// Kronecker product x (x) y; y acts on the low-order bits.
inline Mat kron(const Mat &x, const Mat &y) {
    Mat r(x.dim * y.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t j = 0; j < x.dim; ++j) {
            for (std::size_t k = 0; k < y.dim; ++k) {
                for (std::size_t l = 0; l < y.dim; ++l) {
                    r(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
                }
            }
        }
    }
    return r;
}

inline Vec kron(const Vec &x, const Vec &y) {
    Vec r(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 0; k < y.size(); ++k) {
            r[i * y.size() + k] = x[i] * y[k];
        }
    }
    return r;
}

inline const double kR = 1.0 / std::numbers::sqrt2;

inline Mat I2() { return Mat::eye(2); }
inline Mat H() { return Mat::of(2, {kR, kR, kR, -kR}); }
inline Mat X() { return Mat::of(2, {0, 1, 1, 0}); }
inline Mat Y() { return Mat::of(2, {0, cplx(0, -1), cplx(0, 1), 0}); }
inline Mat Z() { return Mat::of(2, {1, 0, 0, -1}); }
inline Mat P1() { return Mat::of(2, {0, 0, 0, 1}); }
inline Mat P0() { return Mat::of(2, {1, 0, 0, 0}); }
inline Mat Ry(double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return Mat::of(2, {c, -s, s, c});
}
inline Mat Phase(double p) { return Mat::of(2, {1, 0, 0, std::polar(1.0, p)}); }

/// Embeds single-qubit `m` on qubit q of an n-qubit register (qubit 0 = LSB).
inline Mat on(std::size_t n, std::size_t q, const Mat &m) {
    Mat r = Mat::eye(1);
    for (std::size_t k = n; k-- > 0;) {
        r = kron(r, k == q ? m : I2());
    }
    return r;
}

/// CP(w) = I + (e^{iw} - 1) |1><1|_u |1><1|_v.
inline Mat CP(std::size_t n, std::size_t u, std::size_t v, double w) {
    const Mat proj = on(n, u, P1()) * on(n, v, P1());
    return Mat::eye(std::size_t{1} << n) + scaled(std::polar(1.0, w) - 1.0, proj);
}

/// e^{-iw Z_u Z_v} = cos(w) I - i sin(w) Z_u Z_v.
inline Mat IsingZZ(std::size_t n, std::size_t u, std::size_t v, double w) {
    const Mat zz = on(n, u, Z()) * on(n, v, Z());
    return scaled(std::cos(w), Mat::eye(std::size_t{1} << n)) +
           scaled(cplx(0, -std::sin(w)), zz);
}

/// Controlled-U with U single-qubit: |0><0|_c (x) I + |1><1|_c (x) U_t.
inline Mat Controlled(std::size_t n, std::size_t c, std::size_t t, const Mat &u) {
    return on(n, c, P0()) + on(n, c, P1()) * on(n, t, u);
}

inline Vec basis(std::size_t n, std::size_t index) {
    Vec v(std::size_t{1} << n);
    v[index] = 1.0;
    return v;
}

inline Vec plus_state(std::size_t n) {
    Vec v{1.0};
    for (std::size_t k = 0; k < n; ++k) {
        v = kron(Vec{kR, kR}, v);
    }
    return v;
}

struct EdgeSpec {
    std::size_t u, v;
    double w;
};

/// |+>^n followed by one dense CP matrix per edge.
inline Vec graph_state(std::size_t n, const std::vector<EdgeSpec> &edges) {
    Vec s = plus_state(n);
    for (const auto &e : edges) {
        s = CP(n, e.u, e.v, e.w) * s;
    }
    return s;
}

inline cplx inner(const Vec &a, const Vec &b) {
    cplx acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

inline double norm(const Vec &a) { return std::sqrt(std::real(inner(a, a))); }

inline double distance(const Vec &a, const Vec &b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::norm(a[i] - b[i]);
    }
    return std::sqrt(acc);
}

/// Dense real matrix power by repeated multiplication.
inline std::vector<std::vector<double>> real_power(
    const std::vector<std::vector<double>> &l, std::size_t k) {
    const std::size_t n = l.size();
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        r[i][i] = 1.0;
    }
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t m = 0; m < n; ++m) {
                    next[i][j] += r[i][m] * l[m][j];
                }
            }
        }
        r = std::move(next);
    }
    return r;
}

/// sum_j w_j L^j x, each power formed independently.
inline std::vector<double> filter_apply(const std::vector<std::vector<double>> &l,
                                        const std::vector<double> &w,
                                        const std::vector<double> &x) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const auto p = real_power(l, j);
        for (std::size_t r = 0; r < x.size(); ++r) {
            for (std::size_t c = 0; c < x.size(); ++c) {
                y[r] += w[j] * p[r][c] * x[c];
            }
        }
    }
    return y;
}

} // namespace oracle

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
 * Seeded random source used wherever qgns samples.
 *
 * `std::uniform_real_distribution` output is implementation-defined, so the
 * conversion from engine bits to doubles is done here explicitly; a seed
 * yields the same stream with any standard library.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qgns {

class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_{seed} {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

    /// Standard normal draw (Box-Muller, one value per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent stream seeds from (seed, stream).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

} // namespace qgns

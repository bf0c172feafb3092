// Copyright 2026 The qpt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPT_RNG_HPP
#define QPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qpt {

/// SplitMix64: a counter-based 64-bit generator (Steele, Lea & Flood).
/// The state is a plain counter advanced by a fixed odd increment; each
/// output is a finalizer hash of the counter, so streams seeded from
/// distinct values are independent and a stream can be reproduced from
/// its seed alone.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one value per call; no cached spare,
    /// so the draw count per sample is fixed).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::uint64_t state_;
};

/// Derives an independent sub-stream seed from a root seed and an index
/// path, e.g. derive_seed(seed, {delta_index, repetition, shot}). Streams
/// for distinct paths are decorrelated by the SplitMix64 finalizer, so work
/// items may run in any order (or in parallel) without changing results.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = SplitMix64::mix(root ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t index : path) {
        h = SplitMix64::mix(h ^ SplitMix64::mix(index + 0x9e3779b97f4a7c15ULL));
    }
    return h;
}

/// Samples an index from an (unnormalized is tolerated, near-normalized
/// expected) probability vector by inverse-CDF walk. Entries <= 0 are never
/// selected.
inline std::size_t sample_index(const std::vector<double>& probabilities, SplitMix64& rng) {
    if (probabilities.empty()) {
        throw std::invalid_argument("sample_index: empty probability vector");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) total += p;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("sample_index: no positive probability mass");
    }
    const double u = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = probabilities.size();
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] <= 0.0) continue;
        cumulative += probabilities[k];
        last_positive = k;
        if (u < cumulative) return k;
    }
    return last_positive;  // u landed on the rounding tail
}

}  // namespace qpt

#endif  // QPT_RNG_HPP

// Copyright 2026 The gkls authors
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

// rng.hpp -- fixed random number generation for reproducible ensembles.
//
// SplitMix64 with Box-Muller gaussians instead of <random>: the standard
// distributions are implementation-defined, this stream is not, so ensemble
// outputs reproduce bit-for-bit for a given (seed, index) regardless of
// standard library or thread count.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gkls/types.hpp"

namespace gkls {

inline constexpr const char* kRngIdentity = "splitmix64-boxmuller-v1";

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in (0, 1].
    double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller; draws two uniforms per pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Standard complex normal, E|z|^2 = 1. Real part drawn first.
    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im) / std::numbers::sqrt2;
    }

  private:
    std::uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Per-sample substream: state = seed XOR index.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ index);
}

// iid complex standard normal entries, filled row-major.
inline Matrix random_ginibre(SplitMix64& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

// Gaussian unitary ensemble draw, H = scale * (A + A^dag)/2.
inline Matrix random_gue(SplitMix64& rng, int d, double scale) {
    const Matrix a = random_ginibre(rng, d, d);
    return 0.5 * scale * (a + a.adjoint());
}

// Wishart matrix scale * G G^dag / n with G an n x rank Ginibre factor.
inline Matrix random_wishart(SplitMix64& rng, int n, int rank, double scale) {
    const Matrix g = random_ginibre(rng, n, rank);
    return (scale / static_cast<double>(n)) * (g * g.adjoint());
}

// Random density matrix, G G^dag normalized to unit trace.
inline Matrix random_density(SplitMix64& rng, int d) {
    const Matrix g = random_ginibre(rng, d, d);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace gkls

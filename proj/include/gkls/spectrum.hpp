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

// spectrum.hpp -- eigenstructure of the superoperator and relaxation profiles

#pragma once

#include <vector>

#include "gkls/generator.hpp"
#include "gkls/types.hpp"

namespace gkls {

struct GeneratorSpectrum {
    int d = 0;
    Vector eigenvalues;                   // d^2 entries, solver order
    std::vector<Matrix> eigen_operators;  // d x d, unit HS norm
    int zero_mode_index = -1;
    bool defective = false;
    double condition_estimate = 0.0;  // Frobenius condition of the eigenvector matrix
    double zero_tolerance = 0.0;      // scale-adjusted radius used for this spectrum
    double pair_tolerance = 0.0;
    Complex superop_trace;            // captured for structure verification
};

// Scale factors applied to max(1, ||M||) resp. the spectral radius.
struct SpectrumOptions {
    double zero_radius = tol::zero_mode;
    double pair_radius = tol::conjugate_pair;
    double kappa_max = tol::kappa_max;
};

// Full eigendecomposition. The zero mode is the minimum-modulus eigenvalue;
// when several eigenvalues sit inside the zero radius, the one whose
// eigen-operator has the largest |trace| is designated (the stationary
// direction). Throws NotTracePreservingError when no eigenvalue is inside
// the radius.
GeneratorSpectrum compute_spectrum(const Superoperator& s, const SpectrumOptions& options = {});

struct RelaxationProfile {
    int d = 0;
    RealVector rates;           // d^2-1 entries, sorted descending
    std::vector<double> times;  // 1/rate, +inf where the rate is below the zero radius
    RealVector frequencies;     // Im lambda, aligned with rates
    double rate_sum = 0.0;
};

// Drops the designated zero mode and clamps rates at zero. Ties in the
// descending rate order break by |frequency| ascending, then solver index.
RelaxationProfile relaxation_profile(const GeneratorSpectrum& spec);

struct SpectralStructureReport {
    bool conjugate_paired = false;
    double max_pairing_residual = 0.0;
    double max_nonzero_real_part = 0.0;  // max Re over non-designated modes
    double trace_residual = 0.0;         // |sum of eigenvalues - Tr M|
};

SpectralStructureReport verify_spectral_structure(const GeneratorSpectrum& spec);

// Hermitian-projected, trace-normalized eigen-operator of the zero mode.
Matrix steady_state(const GeneratorSpectrum& spec);

}  // namespace gkls

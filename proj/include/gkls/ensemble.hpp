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

// ensemble.hpp -- random generator ensembles: constraint stress statistics
// and saturation search

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gkls/constraints.hpp"
#include "gkls/generator.hpp"
#include "gkls/types.hpp"

namespace gkls {

struct EnsembleConfig {
    int d = 2;
    long n_samples = 1;
    std::uint64_t seed = 0;
    double hamiltonian_scale = 1.0;
    int kossakowski_rank = 0;  // 0 = full rank d^2-1
    double kossakowski_scale = 1.0;
    // Execution detail only: results are identical for any thread count and
    // the value is never serialized. 0 = hardware concurrency.
    int n_threads = 1;
};

void validate(const EnsembleConfig& cfg);

struct SampleRecord {
    double tightness = 0.0;  // (d/sqrt 2) max rate / rate sum
    double rate_sum = 0.0;
    double max_rate = 0.0;
};

struct EnsembleDiagnostics {
    double max_trace_identity_error = 0.0;  // relative |sum rates - d Tr C|
    double max_supertrace_error = 0.0;      // relative |Tr M + d Tr C|
    double max_pairing_residual = 0.0;
    double max_nonzero_real_part = 0.0;
    long extra_zero_mode_samples = 0;  // more than one eigenvalue inside the zero radius
    long pairing_failures = 0;
    long positive_real_failures = 0;
};

struct EnsembleStats {
    EnsembleConfig config;
    long count = 0;
    std::vector<SampleRecord> samples;  // index order, independent of threading
    std::vector<double> histogram_edges;
    std::vector<long> histogram_counts;
    double max_tightness = 0.0;
    long argmax_index = -1;
    std::optional<GKLSGenerator> best_generator;
    long violation_count = 0;
    std::vector<long> violation_indices;
    // Full dumps for reproduction; a violation means an implementation bug,
    // so only the first few are kept.
    std::vector<GKLSGenerator> violation_generators;
    EnsembleDiagnostics diagnostics;
};

// Deterministic in (seed, index): H from the GUE scaled by hamiltonian_scale,
// C = scale * G G^dag / (d^2-1) with G a (d^2-1) x rank Ginibre factor.
GKLSGenerator sample_generator(const EnsembleConfig& cfg, long index);

// Tightness ratio of a single generator (spectrum + rate-sum bound).
double tightness_ratio(const GKLSGenerator& g);

// Full sweep: per sample build, spectrum, rates, constraint check; aggregates
// tightness statistics and structural diagnostics. extra_samples are appended
// after the random samples (indices n_samples, n_samples+1, ...).
EnsembleStats run_ensemble(const EnsembleConfig& cfg);
EnsembleStats run_ensemble(const EnsembleConfig& cfg,
                           const std::vector<GKLSGenerator>& extra_samples);

struct SearchResult {
    GKLSGenerator best;
    double tightness = 0.0;
    long iterations = 0;
    long accepted = 0;
    ConstraintReport report;  // rate-sum check of the best generator
};

// Accept-if-improved hill climbing over (H, Ginibre factor of C) maximizing
// the tightness ratio. Step scale decays by 0.99 per 100 consecutive
// rejections and resets to the initial value after 1000 (restart on stall).
// The search starts from sample 0 of the config, or from `start`.
SearchResult saturation_search(const EnsembleConfig& cfg, long iterations);
SearchResult saturation_search(const EnsembleConfig& cfg, long iterations,
                               const GKLSGenerator& start);

}  // namespace gkls

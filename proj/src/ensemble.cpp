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

#include "gkls/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "gkls/constraints.hpp"
#include "gkls/rng.hpp"
#include "gkls/spectrum.hpp"

namespace gkls {

namespace {

// Tag mixed into the seed for the saturation-search stream so it does not
// collide with sample substreams.
constexpr std::uint64_t kSearchStreamTag = 0x5EA4C4;

int effective_rank(const EnsembleConfig& cfg) {
    const int m = cfg.d * cfg.d - 1;
    return cfg.kossakowski_rank == 0 ? m : cfg.kossakowski_rank;
}

GKLSGenerator draw_generator(const EnsembleConfig& cfg, long index,
                             std::shared_ptr<const OperatorBasis> basis) {
    SplitMix64 rng = substream(cfg.seed, static_cast<std::uint64_t>(index));
    const int m = cfg.d * cfg.d - 1;
    Matrix h = random_gue(rng, cfg.d, cfg.hamiltonian_scale);
    Matrix c = random_wishart(rng, m, effective_rank(cfg), cfg.kossakowski_scale);
    return make_generator(std::move(h), std::move(c), std::move(basis));
}

struct SampleOutcome {
    SampleRecord record;
    double trace_identity_error = 0.0;
    double supertrace_error = 0.0;
    double pairing_residual = 0.0;
    double max_nonzero_real_part = 0.0;
    bool extra_zero_modes = false;
    bool pairing_failure = false;
    bool positive_real_failure = false;
    bool violation = false;
};

SampleOutcome evaluate_sample(const GKLSGenerator& g) {
    const Superoperator s = to_superoperator(g);
    const GeneratorSpectrum spec = compute_spectrum(s);
    const RelaxationProfile profile = relaxation_profile(spec);
    const SpectralStructureReport structure = verify_spectral_structure(spec);

    SampleOutcome out;
    const double expected_sum = static_cast<double>(g.d) * g.kossakowski_trace();
    const double denom = std::max(1e-300, std::abs(expected_sum));
    out.trace_identity_error = std::abs(profile.rate_sum - expected_sum) / denom;
    out.supertrace_error = std::abs(generator_trace(s) + expected_sum) / denom;
    out.pairing_residual = structure.max_pairing_residual;
    out.pairing_failure = !structure.conjugate_paired;
    out.max_nonzero_real_part = structure.max_nonzero_real_part;
    out.positive_real_failure = structure.max_nonzero_real_part > spec.zero_tolerance;

    int near_zero = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues(i)) <= spec.zero_tolerance) ++near_zero;
    }
    out.extra_zero_modes = near_zero != 1;

    const RateSet rates = make_rate_set(g.d, profile.rates, RateSource::computed);
    const ConstraintReport report = check_main_theorem(rates, tol::witness);
    out.violation = !report.pass;
    out.record = SampleRecord{report.tightness_ratio, profile.rate_sum,
                              profile.rates.size() > 0 ? profile.rates.maxCoeff() : 0.0};
    return out;
}

}  // namespace

void validate(const EnsembleConfig& cfg) {
    if (cfg.d < 2) throw DimensionError("ensemble: dimension must be >= 2");
    if (cfg.n_samples < 1) throw SchemaError("ensemble: n_samples must be >= 1");
    if (cfg.hamiltonian_scale < 0.0) throw SchemaError("ensemble: hamiltonian_scale must be >= 0");
    if (!(cfg.kossakowski_scale > 0.0))
        throw SchemaError("ensemble: kossakowski_scale must be > 0");
    const int m = cfg.d * cfg.d - 1;
    if (cfg.kossakowski_rank < 0 || cfg.kossakowski_rank > m)
        throw SchemaError("ensemble: kossakowski_rank must lie in 0..d^2-1");
    if (cfg.n_threads < 0) throw SchemaError("ensemble: n_threads must be >= 0");
}

GKLSGenerator sample_generator(const EnsembleConfig& cfg, long index) {
    validate(cfg);
    return draw_generator(cfg, index,
                          std::make_shared<const OperatorBasis>(build_gellmann_basis(cfg.d)));
}

double tightness_ratio(const GKLSGenerator& g) {
    const RelaxationProfile profile = relaxation_profile(compute_spectrum(to_superoperator(g)));
    return check_main_theorem(make_rate_set(g.d, profile.rates, RateSource::computed))
        .tightness_ratio;
}

EnsembleStats run_ensemble(const EnsembleConfig& cfg) {
    return run_ensemble(cfg, std::vector<GKLSGenerator>{});
}

EnsembleStats run_ensemble(const EnsembleConfig& cfg,
                           const std::vector<GKLSGenerator>& extra_samples) {
    validate(cfg);
    auto basis = std::make_shared<const OperatorBasis>(build_gellmann_basis(cfg.d));
    const long total = cfg.n_samples + static_cast<long>(extra_samples.size());

    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(total));
    const auto worker = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            const GKLSGenerator g =
                i < cfg.n_samples
                    ? draw_generator(cfg, i, basis)
                    : extra_samples[static_cast<std::size_t>(i - cfg.n_samples)];
            outcomes[static_cast<std::size_t>(i)] = evaluate_sample(g);
        }
    };

    long n_threads = cfg.n_threads == 0
                         ? static_cast<long>(std::thread::hardware_concurrency())
                         : cfg.n_threads;
    n_threads = std::clamp(n_threads, 1L, total);
    if (n_threads == 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        const long chunk = (total + n_threads - 1) / n_threads;
        for (long t = 0; t < n_threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Aggregation reads the per-index outcomes in order, so the result does
    // not depend on the thread count.
    EnsembleStats stats;
    stats.config = cfg;
    stats.count = total;
    stats.samples.reserve(static_cast<std::size_t>(total));

    constexpr int kBins = 21;
    constexpr double kBinWidth = 0.05;  // edges 0.00 .. 1.05
    stats.histogram_edges.resize(kBins + 1);
    for (int b = 0; b <= kBins; ++b) stats.histogram_edges[static_cast<std::size_t>(b)] = b * kBinWidth;
    stats.histogram_counts.assign(kBins, 0);

    stats.max_tightness = -1.0;
    for (long i = 0; i < total; ++i) {
        const SampleOutcome& out = outcomes[static_cast<std::size_t>(i)];
        stats.samples.push_back(out.record);

        const int bin = std::clamp(static_cast<int>(out.record.tightness / kBinWidth), 0, kBins - 1);
        ++stats.histogram_counts[static_cast<std::size_t>(bin)];

        if (out.record.tightness > stats.max_tightness) {
            stats.max_tightness = out.record.tightness;
            stats.argmax_index = i;
        }
        if (out.violation) {
            ++stats.violation_count;
            stats.violation_indices.push_back(i);
        }
        auto& diag = stats.diagnostics;
        diag.max_trace_identity_error =
            std::max(diag.max_trace_identity_error, out.trace_identity_error);
        diag.max_supertrace_error = std::max(diag.max_supertrace_error, out.supertrace_error);
        diag.max_pairing_residual = std::max(diag.max_pairing_residual, out.pairing_residual);
        diag.max_nonzero_real_part =
            std::max(diag.max_nonzero_real_part, out.max_nonzero_real_part);
        if (out.extra_zero_modes) ++diag.extra_zero_mode_samples;
        if (out.pairing_failure) ++diag.pairing_failures;
        if (out.positive_real_failure) ++diag.positive_real_failures;
    }

    const auto materialize = [&](long index) {
        return index < cfg.n_samples
                   ? draw_generator(cfg, index, basis)
                   : extra_samples[static_cast<std::size_t>(index - cfg.n_samples)];
    };
    if (stats.argmax_index >= 0) {
        stats.best_generator = materialize(stats.argmax_index);
    }
    constexpr std::size_t kMaxViolationDumps = 8;
    for (const long index : stats.violation_indices) {
        if (stats.violation_generators.size() >= kMaxViolationDumps) break;
        stats.violation_generators.push_back(materialize(index));
    }
    return stats;
}

namespace {

// Rank-limited factor B with C = B B^dag, from the top eigenpairs.
Matrix kossakowski_factor(const KossakowskiMatrix& c, int rank) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(c.matrix());
    const int m = c.dim();
    Matrix factor = Matrix::Zero(m, rank);
    // Eigenvalues ascend; take the last `rank` columns.
    for (int k = 0; k < rank; ++k) {
        const int src = m - 1 - k;
        const double p = std::max(0.0, solver.eigenvalues()(src));
        factor.col(k) = std::sqrt(p) * solver.eigenvectors().col(src);
    }
    return factor;
}

}  // namespace

SearchResult saturation_search(const EnsembleConfig& cfg, long iterations) {
    validate(cfg);
    return saturation_search(cfg, iterations, sample_generator(cfg, 0));
}

SearchResult saturation_search(const EnsembleConfig& cfg, long iterations,
                               const GKLSGenerator& start) {
    validate(cfg);
    if (iterations < 0) throw SchemaError("saturation_search: iterations must be >= 0");
    if (start.d != cfg.d) throw DimensionError("saturation_search: start dimension mismatch");

    auto basis = start.basis;
    const int m = cfg.d * cfg.d - 1;
    const int rank = effective_rank(cfg);

    Matrix h = start.hamiltonian.matrix();
    Matrix factor = kossakowski_factor(start.kossakowski, rank);

    SearchResult result{start, tightness_ratio(start), 0, 0};
    SplitMix64 rng(cfg.seed ^ kSearchStreamTag);

    const double initial_step = 0.1;
    double step = initial_step;
    long consecutive_rejections = 0;
    const double h_step_scale = std::max(cfg.hamiltonian_scale, 0.1);
    const double factor_step_scale =
        std::sqrt(cfg.kossakowski_scale / static_cast<double>(m));

    for (long it = 0; it < iterations; ++it) {
        const Matrix h_candidate = h + random_gue(rng, cfg.d, step * h_step_scale);
        const Matrix factor_candidate =
            factor + step * factor_step_scale * random_ginibre(rng, m, rank);
        Matrix c_candidate = factor_candidate * factor_candidate.adjoint();

        const GKLSGenerator candidate =
            make_generator(h_candidate, std::move(c_candidate), basis);
        const double ratio = tightness_ratio(candidate);
        if (ratio > result.tightness) {
            result.best = candidate;
            result.tightness = ratio;
            h = h_candidate;
            factor = factor_candidate;
            consecutive_rejections = 0;
            ++result.accepted;
        } else {
            ++consecutive_rejections;
            if (consecutive_rejections % 1000 == 0) {
                step = initial_step;  // restart on stall
            } else if (consecutive_rejections % 100 == 0) {
                step *= 0.99;
            }
        }
        ++result.iterations;
    }
    return result;
}

}  // namespace gkls

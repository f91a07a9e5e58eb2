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

#include "gkls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gkls {

GeneratorSpectrum compute_spectrum(const Superoperator& s, const SpectrumOptions& options) {
    const int n = static_cast<int>(s.matrix.rows());
    Eigen::ComplexEigenSolver<Matrix> solver(s.matrix, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("compute_spectrum: eigensolver did not converge");
    }

    GeneratorSpectrum spec;
    spec.d = s.d;
    spec.eigenvalues = solver.eigenvalues();
    spec.superop_trace = s.matrix.trace();

    const double scale = s.matrix.norm();
    spec.zero_tolerance = options.zero_radius * std::max(1.0, scale);
    spec.pair_tolerance =
        options.pair_radius * std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());

    // Eigenvector columns reshape to matrices; unit 2-norm columns are unit
    // HS norm already, renormalize anyway to keep the invariant explicit.
    spec.eigen_operators.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Matrix u = unvectorize(solver.eigenvectors().col(i), s.d, s.d);
        const double norm = u.norm();
        if (norm <= 0.0) {
            throw NumericalError("compute_spectrum: zero eigenvector");
        }
        spec.eigen_operators.push_back(u / norm);
    }

    // Zero mode: among eigenvalues inside the zero radius pick the
    // eigen-operator with the largest |trace| (the stationary direction).
    int best = -1;
    double best_trace = -1.0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(spec.eigenvalues(i)) > spec.zero_tolerance) continue;
        const double tr = std::abs(spec.eigen_operators[static_cast<std::size_t>(i)].trace());
        if (tr > best_trace) {
            best_trace = tr;
            best = i;
        }
    }
    if (best < 0) {
        throw NotTracePreservingError(
            "compute_spectrum: no eigenvalue within the zero-mode radius");
    }
    spec.zero_mode_index = best;

    // Condition of the eigenvector matrix, Frobenius estimate; a huge value
    // signals a (near-)defective generator.
    Eigen::PartialPivLU<Matrix> lu(solver.eigenvectors());
    const Matrix inverse = lu.inverse();
    if (!inverse.allFinite()) {
        spec.condition_estimate = std::numeric_limits<double>::infinity();
    } else {
        spec.condition_estimate = solver.eigenvectors().norm() * inverse.norm();
    }
    spec.defective = !(spec.condition_estimate < options.kappa_max);

    return spec;
}

RelaxationProfile relaxation_profile(const GeneratorSpectrum& spec) {
    const int n = static_cast<int>(spec.eigenvalues.size());

    struct Mode {
        double rate;
        double frequency;
        int index;
    };
    std::vector<Mode> modes;
    modes.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        if (i == spec.zero_mode_index) continue;
        const double rate = std::max(0.0, -spec.eigenvalues(i).real());
        modes.push_back({rate, spec.eigenvalues(i).imag(), i});
    }
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        if (a.rate != b.rate) return a.rate > b.rate;
        if (std::abs(a.frequency) != std::abs(b.frequency))
            return std::abs(a.frequency) < std::abs(b.frequency);
        return a.index < b.index;
    });

    RelaxationProfile profile;
    profile.d = spec.d;
    profile.rates.resize(static_cast<Eigen::Index>(modes.size()));
    profile.frequencies.resize(static_cast<Eigen::Index>(modes.size()));
    profile.times.reserve(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        profile.rates(static_cast<Eigen::Index>(i)) = modes[i].rate;
        profile.frequencies(static_cast<Eigen::Index>(i)) = modes[i].frequency;
        profile.times.push_back(modes[i].rate <= spec.zero_tolerance
                                    ? std::numeric_limits<double>::infinity()
                                    : 1.0 / modes[i].rate);
        profile.rate_sum += modes[i].rate;
    }
    return profile;
}

SpectralStructureReport verify_spectral_structure(const GeneratorSpectrum& spec) {
    const int n = static_cast<int>(spec.eigenvalues.size());
    SpectralStructureReport report;

    // Greedy conjugate matching on a deterministic eigenvalue ordering;
    // self-matching covers (near-)real eigenvalues.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex la = spec.eigenvalues(a);
        const Complex lb = spec.eigenvalues(b);
        if (la.real() != lb.real()) return la.real() < lb.real();
        if (la.imag() != lb.imag()) return la.imag() < lb.imag();
        return a < b;
    });
    std::vector<bool> matched(static_cast<std::size_t>(n), false);
    double worst = 0.0;
    for (int oi = 0; oi < n; ++oi) {
        const int i = order[static_cast<std::size_t>(oi)];
        if (matched[static_cast<std::size_t>(i)]) continue;
        const Complex target = std::conj(spec.eigenvalues(i));
        int best = i;
        double best_dist = std::abs(spec.eigenvalues(i) - target);
        for (int oj = 0; oj < n; ++oj) {
            const int j = order[static_cast<std::size_t>(oj)];
            if (j == i || matched[static_cast<std::size_t>(j)]) continue;
            const double dist = std::abs(spec.eigenvalues(j) - target);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        matched[static_cast<std::size_t>(i)] = true;
        matched[static_cast<std::size_t>(best)] = true;
        worst = std::max(worst, best_dist);
    }
    report.max_pairing_residual = worst;
    report.conjugate_paired = worst <= spec.pair_tolerance;

    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (i == spec.zero_mode_index) continue;
        max_re = std::max(max_re, spec.eigenvalues(i).real());
    }
    report.max_nonzero_real_part = max_re;
    report.trace_residual = std::abs(spec.eigenvalues.sum() - spec.superop_trace);
    return report;
}

Matrix steady_state(const GeneratorSpectrum& spec) {
    const Matrix& u = spec.eigen_operators[static_cast<std::size_t>(spec.zero_mode_index)];
    Matrix herm = 0.5 * (u + u.adjoint().eval());
    const double tr = herm.trace().real();
    if (std::abs(tr) < 1e-12) {
        throw NumericalError("steady_state: zero-mode operator is traceless");
    }
    return herm / tr;
}

}  // namespace gkls

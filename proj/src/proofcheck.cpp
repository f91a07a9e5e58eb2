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

#include "gkls/proofcheck.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gkls {

namespace {

ProofStepReport le_step(std::string name, double lhs, double rhs, double tolerance) {
    ProofStepReport report;
    report.step = std::move(name);
    report.lhs = lhs;
    report.rhs = rhs;
    report.slack = rhs - lhs;
    report.pass = report.slack >= -tolerance;
    return report;
}

ProofStepReport eq_step(std::string name, double lhs, double rhs, double tolerance) {
    ProofStepReport report;
    report.step = std::move(name);
    report.lhs = lhs;
    report.rhs = rhs;
    report.slack = -std::abs(lhs - rhs);
    report.pass = std::abs(lhs - rhs) <= tolerance;
    return report;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

ProofStepReport check_bw_inequality(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("check_bw_inequality: operands must be square and equal size");
    }
    const double lhs = hs_norm(commutator(a, b));
    const double rhs = std::numbers::sqrt2 * hs_norm(a) * hs_norm(b);
    return le_step("commutator_norm_inequality", lhs, rhs, 1e-12 * std::max(1.0, rhs));
}

std::vector<ProofStepReport> check_rate_identity(const GKLSGenerator& g,
                                                 const GeneratorSpectrum& spec,
                                                 double tolerance) {
    if (spec.defective) {
        throw DefectiveSpectrumError("check_rate_identity: spectrum flagged defective");
    }
    const LindbladDecomposition dec = decompose_lindblad(g);
    const double scale = std::max(1.0, 2.0 * g.kossakowski_trace());

    std::vector<ProofStepReport> reports;
    const int n = static_cast<int>(spec.eigenvalues.size());
    for (int i = 0; i < n; ++i) {
        if (i == spec.zero_mode_index) continue;
        const Matrix& u = spec.eigen_operators[static_cast<std::size_t>(i)];
        const Matrix u_dag = u.adjoint();
        Complex lhs(0.0, 0.0);
        for (const auto& term : dec.terms) {
            lhs += term.rate * (hs_inner(commutator(term.op, u), term.op * u) +
                                hs_inner(commutator(term.op, u_dag), term.op * u_dag));
        }
        const double rate = std::max(0.0, -spec.eigenvalues(i).real());
        reports.push_back(
            eq_step("rate_identity[mode " + std::to_string(i) + "]", lhs.real(), 2.0 * rate,
                    tolerance * scale));
        // The imaginary parts of the two inner products cancel exactly.
        if (std::abs(lhs.imag()) > tolerance * scale) {
            reports.back().pass = false;
        }
    }
    return reports;
}

std::vector<ProofStepReport> check_chain_bound(const GKLSGenerator& g,
                                               const GeneratorSpectrum& spec,
                                               double tolerance) {
    if (spec.defective) {
        throw DefectiveSpectrumError("check_chain_bound: spectrum flagged defective");
    }
    const LindbladDecomposition dec = decompose_lindblad(g);
    const double trace_c = g.kossakowski_trace();
    const double final_bound = 2.0 * std::numbers::sqrt2 * trace_c;
    const double slack = tolerance * std::max(1.0, final_bound);

    std::vector<ProofStepReport> reports;
    const int n = static_cast<int>(spec.eigenvalues.size());
    for (int i = 0; i < n; ++i) {
        if (i == spec.zero_mode_index) continue;
        const Matrix& u = spec.eigen_operators[static_cast<std::size_t>(i)];
        const Matrix u_dag = u.adjoint();

        // Schwarz bound sum_k p_k (||[L,u]|| ||Lu|| + ||[L,u^dag]|| ||Lu^dag||),
        // then ||L u|| <= ||L|| ||u|| = ||L||, then ||[A,B]|| <= sqrt2 ||A|| ||B||.
        double schwarz = 0.0;
        double submult = 0.0;
        for (const auto& term : dec.terms) {
            const Matrix comm_u = commutator(term.op, u);
            const Matrix comm_udag = commutator(term.op, u_dag);
            const double norm_l = hs_norm(term.op);
            schwarz += term.rate * (hs_norm(comm_u) * hs_norm(term.op * u) +
                                    hs_norm(comm_udag) * hs_norm(term.op * u_dag));
            submult += term.rate * (hs_norm(comm_u) + hs_norm(comm_udag)) * norm_l;
        }
        const double rate = std::max(0.0, -spec.eigenvalues(i).real());
        const std::string mode = "[mode " + std::to_string(i) + "]";
        reports.push_back(le_step("schwarz_bound" + mode, 2.0 * rate, schwarz, slack));
        reports.push_back(le_step("submultiplicative_bound" + mode, schwarz, submult, slack));
        reports.push_back(le_step("commutator_norm_bound" + mode, submult, final_bound, slack));
    }
    return reports;
}

}  // namespace gkls

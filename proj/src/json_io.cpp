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

#include "gkls/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "gkls/rng.hpp"

namespace gkls {

namespace {

Json complex_to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json real_vector_json(const RealVector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)},
                {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im")) {
        throw SchemaError("matrix document needs rows, cols, re, im");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1) {
        throw SchemaError("matrix document has nonpositive shape");
    }
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != rows ||
        static_cast<Eigen::Index>(im.size()) != rows) {
        throw SchemaError("matrix re/im arrays must have `rows` rows");
    }
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& re_row = re.at(static_cast<std::size_t>(i));
        const Json& im_row = im.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(re_row.size()) != cols ||
            static_cast<Eigen::Index>(im_row.size()) != cols) {
            throw SchemaError("matrix re/im rows must have `cols` entries");
        }
        for (Eigen::Index jj = 0; jj < cols; ++jj) {
            m(i, jj) = Complex(re_row.at(static_cast<std::size_t>(jj)).get<double>(),
                               im_row.at(static_cast<std::size_t>(jj)).get<double>());
        }
    }
    return m;
}

Json generator_to_json(const GKLSGenerator& g) {
    return Json{{"d", g.d},
                {"H", matrix_to_json(g.hamiltonian.matrix())},
                {"C", matrix_to_json(g.kossakowski.matrix())}};
}

namespace {

GKLSGenerator assemble_generator(Matrix h, Matrix c, std::shared_ptr<const OperatorBasis> basis,
                                 const GeneratorParseOptions& options) {
    const int d = static_cast<int>(h.rows());
    const int m = d * d - 1;
    if (c.rows() != m || c.cols() != m) {
        throw DimensionError("Kossakowski matrix must be (d^2-1) x (d^2-1)");
    }
    return GKLSGenerator{
        d, HermitianMatrix(std::move(h), options.hermiticity_tolerance),
        KossakowskiMatrix(std::move(c), options.hermiticity_tolerance, options.psd_tolerance),
        std::move(basis)};
}

}  // namespace

GKLSGenerator generator_from_json(const Json& j, const GeneratorParseOptions& options) {
    if (!j.is_object() || !j.contains("d") || !j.contains("H")) {
        throw SchemaError("generator document needs d and H");
    }
    const int d = j.at("d").get<int>();
    if (d < 2) {
        throw SchemaError("generator dimension must be >= 2");
    }
    Matrix h = matrix_from_json(j.at("H"));
    if (h.rows() != d || h.cols() != d) {
        throw SchemaError("H must be d x d");
    }
    auto basis = std::make_shared<const OperatorBasis>(build_gellmann_basis(d));

    if (j.contains("C")) {
        Matrix c = matrix_from_json(j.at("C"));
        return assemble_generator(std::move(h), std::move(c), std::move(basis), options);
    }
    if (j.contains("lindblad_ops")) {
        const Json& ops_doc = j.at("lindblad_ops");
        if (!ops_doc.is_array()) {
            throw SchemaError("lindblad_ops must be an array");
        }
        std::vector<LindbladTerm> ops;
        ops.reserve(ops_doc.size());
        for (const Json& item : ops_doc) {
            if (!item.contains("rate") || !item.contains("L")) {
                throw SchemaError("each lindblad_ops entry needs rate and L");
            }
            const double rate = item.at("rate").get<double>();
            if (!(rate >= 0.0)) {
                throw InvalidRateError("lindblad_ops rates must be nonnegative");
            }
            ops.push_back({rate, matrix_from_json(item.at("L"))});
        }
        KossakowskiForm form = kossakowski_from_lindblad(ops, *basis);
        Matrix h_total = h + form.hamiltonian_correction;
        return assemble_generator(std::move(h_total), std::move(form.kossakowski),
                                  std::move(basis), options);
    }
    throw SchemaError("generator document needs either C or lindblad_ops");
}

Json time_to_json(double t) {
    if (std::isinf(t) && t > 0.0) return nullptr;
    return t;
}

double time_from_json(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "Infinity") {
            return std::numeric_limits<double>::infinity();
        }
        throw SchemaError("unrecognized time token \"" + s + "\"");
    }
    if (j.is_number()) return j.get<double>();
    throw SchemaError("times must be numbers, null or \"inf\"");
}

Json spectrum_report_json(const GeneratorSpectrum& spec, const RelaxationProfile& profile) {
    Json eigenvalues = Json::array();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
        eigenvalues.push_back(complex_to_json(spec.eigenvalues(i)));
    Json times = Json::array();
    for (const double t : profile.times) times.push_back(time_to_json(t));
    return Json{{"eigenvalues", std::move(eigenvalues)},
                {"rates", real_vector_json(profile.rates)},
                {"times", std::move(times)},
                {"frequencies", real_vector_json(profile.frequencies)},
                {"zero_mode_index", spec.zero_mode_index},
                {"defective", spec.defective}};
}

namespace {

Json main_report_json(const ConstraintReport& main) {
    return Json{{"margins", real_vector_json(main.margins)},
                {"pass", main.pass},
                {"indeterminate", main.indeterminate},
                {"tightness_ratio", main.tightness_ratio}};
}

Json corollary_report_json(const CorollaryReport& corollary) {
    return Json{{"margins", real_vector_json(corollary.margins)},
                {"pass", corollary.pass},
                {"indeterminate", corollary.indeterminate},
                {"implied_by_rate_sum_bound", corollary.implied_by_main}};
}

Json qubit_report_json(const QubitRelationsReport& qubit) {
    Json tl_tt = nullptr;
    if (qubit.tl_tt) {
        tl_tt = Json{{"t_longitudinal", qubit.tl_tt->t_longitudinal},
                     {"t_transverse", qubit.tl_tt->t_transverse},
                     {"margin", qubit.tl_tt->margin},
                     {"pass", qubit.tl_tt->pass}};
    }
    return Json{{"margins", Json{qubit.margins[0], qubit.margins[1], qubit.margins[2]}},
                {"pass", qubit.pass},
                {"indeterminate", qubit.indeterminate},
                {"tl_tt", std::move(tl_tt)}};
}

}  // namespace

Json constraint_check_json(const ConstraintReport& main, const CorollaryReport& corollary,
                           const QubitRelationsReport* qubit) {
    Json doc{{"d", main.d},
             {"rate_sum", main.rate_sum},
             {"rate_sum_bound", main_report_json(main)},
             {"half_sum_bound", corollary_report_json(corollary)}};
    doc["pairwise_rate_bound"] = qubit ? qubit_report_json(*qubit) : Json(nullptr);
    return doc;
}

Json witness_verdict_json(const WitnessVerdict& verdict) {
    Json doc{{"d", verdict.d},
             {"verdict", verdict.consistent ? "CONSISTENT" : "INCONSISTENT"},
             {"indeterminate", verdict.indeterminate},
             {"rates", real_vector_json(verdict.rates)}};
    doc["checks"] = constraint_check_json(verdict.main, verdict.corollary,
                                          verdict.qubit ? &*verdict.qubit : nullptr);
    doc["violated"] = verdict.violated;
    return doc;
}

Json proof_steps_json(const std::vector<ProofStepReport>& steps) {
    Json arr = Json::array();
    for (const auto& step : steps) {
        arr.push_back(Json{{"step", step.step},
                           {"lhs", step.lhs},
                           {"rhs", step.rhs},
                           {"slack", step.slack},
                           {"pass", step.pass}});
    }
    return arr;
}

Json ensemble_stats_json(const EnsembleStats& stats) {
    // n_threads is an execution detail and deliberately not serialized.
    Json config{{"d", stats.config.d},
                {"n_samples", stats.config.n_samples},
                {"seed", stats.config.seed},
                {"hamiltonian_scale", stats.config.hamiltonian_scale},
                {"kossakowski_rank", stats.config.kossakowski_rank},
                {"kossakowski_scale", stats.config.kossakowski_scale},
                {"rng", kRngIdentity}};
    Json max_tightness{{"value", stats.max_tightness}, {"index", stats.argmax_index}};
    max_tightness["generator"] =
        stats.best_generator ? generator_to_json(*stats.best_generator) : Json(nullptr);
    Json diagnostics{
        {"max_trace_identity_error", stats.diagnostics.max_trace_identity_error},
        {"max_supertrace_error", stats.diagnostics.max_supertrace_error},
        {"max_pairing_residual", stats.diagnostics.max_pairing_residual},
        {"max_nonzero_real_part", stats.diagnostics.max_nonzero_real_part},
        {"extra_zero_mode_samples", stats.diagnostics.extra_zero_mode_samples},
        {"pairing_failures", stats.diagnostics.pairing_failures},
        {"positive_real_failures", stats.diagnostics.positive_real_failures}};
    Json violations = Json::array();
    for (std::size_t k = 0; k < stats.violation_generators.size(); ++k) {
        violations.push_back(Json{{"index", stats.violation_indices[k]},
                                  {"generator", generator_to_json(stats.violation_generators[k])}});
    }
    return Json{{"config", std::move(config)},
                {"count", stats.count},
                {"violation_count", stats.violation_count},
                {"violation_indices", stats.violation_indices},
                {"violations", std::move(violations)},
                {"max_tightness", std::move(max_tightness)},
                {"histogram",
                 Json{{"edges", stats.histogram_edges}, {"counts", stats.histogram_counts}}},
                {"diagnostics", std::move(diagnostics)}};
}

Json trajectory_json(const Trajectory& traj) {
    Json states = Json::array();
    for (const Matrix& state : traj.states) states.push_back(matrix_to_json(state));
    Json diagnostics = Json::array();
    for (const auto& diag : traj.diagnostics) {
        diagnostics.push_back(Json{{"trace_error", diag.trace_error},
                                   {"hermiticity_error", diag.hermiticity_error},
                                   {"min_eigenvalue", diag.min_eigenvalue}});
    }
    return Json{{"times", traj.times}, {"states", std::move(states)},
                {"diagnostics", std::move(diagnostics)}};
}

Json expectation_series_json(const ExpectationSeries& series) {
    Json modes = Json::array();
    for (const auto& mode : series.modes) {
        modes.push_back(Json{{"amplitude", complex_to_json(mode.amplitude)},
                             {"rate", mode.rate},
                             {"frequency", mode.frequency}});
    }
    return Json{{"times", series.times},
                {"values", series.values},
                {"max_imaginary_part", series.max_imaginary_part},
                {"valid_decomposition", series.valid_decomposition},
                {"constant", complex_to_json(series.constant_term)},
                {"modes", std::move(modes)}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open temporary file for: " + path);
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error("failed writing temporary file for: " + path);
        }
    }
    fs::rename(tmp, target);
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return std::string(buf);
}

}  // namespace gkls

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

// json_io.hpp -- JSON encodings for every interchange schema

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gkls/constraints.hpp"
#include "gkls/dynamics.hpp"
#include "gkls/ensemble.hpp"
#include "gkls/generator.hpp"
#include "gkls/proofcheck.hpp"
#include "gkls/spectrum.hpp"
#include "gkls/types.hpp"

namespace gkls {

using Json = nlohmann::ordered_json;

// {"rows":n,"cols":m,"re":[[...]],"im":[[...]]}
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Canonical form {"d":n,"H":<matrix>,"C":<matrix>}.
Json generator_to_json(const GKLSGenerator& g);

// Validation thresholds applied while parsing generator documents.
struct GeneratorParseOptions {
    double hermiticity_tolerance = tol::hermiticity;
    double psd_tolerance = tol::psd;
};

// Accepts the canonical form or {"d":n,"H":<matrix>,
// "lindblad_ops":[{"rate":g,"L":<matrix>}]}; the jump-operator form is
// converted to (H + correction, C).
GKLSGenerator generator_from_json(const Json& j, const GeneratorParseOptions& options = {});

// +infinity encodes as null (JSON numbers cannot carry it); parsing accepts
// null, "inf" or a number.
Json time_to_json(double t);
double time_from_json(const Json& j);

Json spectrum_report_json(const GeneratorSpectrum& spec, const RelaxationProfile& profile);
Json constraint_check_json(const ConstraintReport& main, const CorollaryReport& corollary,
                           const QubitRelationsReport* qubit);
Json witness_verdict_json(const WitnessVerdict& verdict);
Json proof_steps_json(const std::vector<ProofStepReport>& steps);
Json ensemble_stats_json(const EnsembleStats& stats);
Json trajectory_json(const Trajectory& traj);
Json expectation_series_json(const ExpectationSeries& series);

std::string read_text_file(const std::string& path);

// Writes via a temp file in the same directory plus rename, so failed runs
// never leave partial output behind.
void write_text_file_atomic(const std::string& path, const std::string& content);

// FNV-1a 64-bit content digest, hex encoded.
std::string fnv1a_digest(const std::string& bytes);

}  // namespace gkls

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

// proofcheck.hpp -- numerical verification of every inequality and identity
// behind the rate-sum bound, step by step

#pragma once

#include <string>
#include <vector>

#include "gkls/generator.hpp"
#include "gkls/spectrum.hpp"
#include "gkls/types.hpp"

namespace gkls {

// For "<="-type steps slack = rhs - lhs and pass means slack >= -tolerance;
// for equality steps slack = -|lhs - rhs|.
struct ProofStepReport {
    std::string step;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = false;
};

// Commutator norm bound ||[A,B]|| <= sqrt(2) ||A|| ||B|| in HS norm.
ProofStepReport check_bw_inequality(const Matrix& a, const Matrix& b);

// Per non-zero mode: sum_k p_k (<[L_k,u],L_k u> + <[L_k,u^dag],L_k u^dag>)
// equals 2 Gamma. Requires a non-defective spectrum.
std::vector<ProofStepReport> check_rate_identity(const GKLSGenerator& g,
                                                 const GeneratorSpectrum& spec,
                                                 double tolerance = 1e-8);

// Per non-zero mode, the monotone chain
//   2 Gamma <= Schwarz bound <= submultiplicative bound <= 2 sqrt(2) Tr C,
// reported as three steps per mode.
std::vector<ProofStepReport> check_chain_bound(const GKLSGenerator& g,
                                               const GeneratorSpectrum& spec,
                                               double tolerance = 1e-8);

}  // namespace gkls

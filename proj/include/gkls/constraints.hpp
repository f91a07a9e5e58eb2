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

// constraints.hpp -- universal relaxation-rate inequalities and the
// consistency witness for measured relaxation times

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gkls/types.hpp"

namespace gkls {

enum class RateSource { computed, measured };

struct RateSet {
    int d = 0;
    RealVector rates;  // d^2-1 nonnegative entries
    RateSource source = RateSource::computed;
};

// Validates length and nonnegativity. All-zero rate sets are allowed; checks
// on them come back indeterminate rather than failing.
RateSet make_rate_set(int d, RealVector rates, RateSource source = RateSource::computed);

// Rate-sum bound: sum_b rate_b >= (d/sqrt 2) rate_a for every a. Margins are
// m_a = sum - (d/sqrt 2) rate_a; pass iff min m_a >= -eps * sum.
struct ConstraintReport {
    int d = 0;
    double rate_sum = 0.0;
    RealVector margins;
    bool pass = false;
    bool indeterminate = false;      // all rates zero
    double tightness_ratio = 0.0;    // max (d/sqrt 2) rate / sum
};

ConstraintReport check_main_theorem(const RateSet& r, double eps = tol::witness);

// Half-sum bound: rate_a <= (1/2) sum_b rate_b. Implied by the rate-sum
// bound whenever d/sqrt(2) >= 2, i.e. for d >= 3.
struct CorollaryReport {
    RealVector margins;  // sum/2 - rate_a
    bool pass = false;
    bool indeterminate = false;
    bool implied_by_main = false;
};

CorollaryReport check_corollary(const RateSet& r, double eps = tol::witness);

// Qubit pairwise relations rate_k <= rate_i + rate_j for the three
// assignments; reports the 2 T_long >= T_trans form when two rates coincide.
struct QubitSaturationReport {
    double t_longitudinal = 0.0;
    double t_transverse = 0.0;
    double margin = 0.0;  // 2 T_long - T_trans
    bool pass = false;
};

struct QubitRelationsReport {
    std::array<double, 3> margins{};  // rate_i + rate_j - rate_k per k
    bool pass = false;
    bool indeterminate = false;
    std::optional<QubitSaturationReport> tl_tt;
};

QubitRelationsReport check_qubit_relations(const RateSet& r, double eps = tol::witness);

// Measured-time witness. CONSISTENT means no inequality is violated;
// INCONSISTENT means no GKLS generator can produce these times.
struct WitnessVerdict {
    int d = 0;
    bool consistent = false;
    bool indeterminate = false;
    RealVector rates;
    ConstraintReport main;
    CorollaryReport corollary;
    std::optional<QubitRelationsReport> qubit;
    std::vector<std::string> violated;  // e.g. "rate_sum_bound[2]", "pairwise_rate_bound[0]"
};

// times must contain exactly d^2-1 entries, each positive or +infinity.
WitnessVerdict witness_measured_times(const std::vector<double>& times, int d,
                                      double eps = tol::witness);

// Euclidean projection onto the cone {x >= 0, (d/sqrt 2) x_a <= sum x}.
// Primal active-set solve; the result satisfies the constraints to 1e-10.
RateSet nearest_consistent_rates(const RateSet& r);

}  // namespace gkls

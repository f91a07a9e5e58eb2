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

#include "gkls/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gkls {

namespace {

double bound_factor(int d) { return static_cast<double>(d) / std::numbers::sqrt2; }

}  // namespace

RateSet make_rate_set(int d, RealVector rates, RateSource source) {
    if (d < 2) {
        throw DimensionError("rate set requires dimension >= 2");
    }
    if (rates.size() != static_cast<Eigen::Index>(d) * d - 1) {
        throw DimensionError("rate set for dimension " + std::to_string(d) + " needs " +
                             std::to_string(d * d - 1) + " rates, got " +
                             std::to_string(rates.size()));
    }
    for (Eigen::Index i = 0; i < rates.size(); ++i) {
        if (!(rates(i) >= 0.0)) {
            throw InvalidRateError("rate set entries must be nonnegative");
        }
    }
    return RateSet{d, std::move(rates), source};
}

ConstraintReport check_main_theorem(const RateSet& r, double eps) {
    ConstraintReport report;
    report.d = r.d;
    report.rate_sum = r.rates.sum();
    report.indeterminate = report.rate_sum <= 0.0;

    const double factor = bound_factor(r.d);
    report.margins = RealVector::Constant(r.rates.size(), report.rate_sum) - factor * r.rates;
    const double slack = eps * report.rate_sum;
    report.pass = (report.margins.array() >= -slack).all();
    report.tightness_ratio =
        report.indeterminate ? 0.0 : factor * r.rates.maxCoeff() / report.rate_sum;
    return report;
}

CorollaryReport check_corollary(const RateSet& r, double eps) {
    CorollaryReport report;
    const double sum = r.rates.sum();
    report.indeterminate = sum <= 0.0;
    report.margins = RealVector::Constant(r.rates.size(), 0.5 * sum) - r.rates;
    report.pass = (report.margins.array() >= -eps * sum).all();
    report.implied_by_main = bound_factor(r.d) >= 2.0;  // d >= 3
    return report;
}

QubitRelationsReport check_qubit_relations(const RateSet& r, double eps) {
    if (r.d != 2) {
        throw DimensionError("qubit relations require d = 2");
    }
    const double sum = r.rates.sum();
    QubitRelationsReport report;
    report.indeterminate = sum <= 0.0;
    for (int k = 0; k < 3; ++k) {
        report.margins[static_cast<std::size_t>(k)] = sum - 2.0 * r.rates(k);
    }
    const double slack = eps * sum;
    report.pass = std::all_of(report.margins.begin(), report.margins.end(),
                              [&](double m) { return m >= -slack; });

    // Transverse pair: two coinciding rates; the remaining one is the
    // longitudinal rate, reported in the 2 T_long >= T_trans form.
    const double pair_slack = std::max(slack, eps);
    for (int k = 0; k < 3 && !report.tl_tt; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        if (std::abs(r.rates(i) - r.rates(j)) > pair_slack) continue;
        const double transverse_rate = 0.5 * (r.rates(i) + r.rates(j));
        const double longitudinal_rate = r.rates(k);
        if (transverse_rate <= 0.0 || longitudinal_rate <= 0.0) continue;
        QubitSaturationReport tl_tt;
        tl_tt.t_longitudinal = 1.0 / longitudinal_rate;
        tl_tt.t_transverse = 1.0 / transverse_rate;
        tl_tt.margin = 2.0 * tl_tt.t_longitudinal - tl_tt.t_transverse;
        tl_tt.pass = tl_tt.margin >= -eps * tl_tt.t_transverse;
        report.tl_tt = tl_tt;
    }
    return report;
}

WitnessVerdict witness_measured_times(const std::vector<double>& times, int d, double eps) {
    if (d < 2) {
        throw DimensionError("witness requires dimension >= 2");
    }
    const int expected = d * d - 1;
    if (static_cast<int>(times.size()) != expected) {
        throw SchemaError("witness for dimension " + std::to_string(d) + " needs exactly " +
                          std::to_string(expected) + " relaxation times, got " +
                          std::to_string(times.size()));
    }
    RealVector rates(expected);
    for (int i = 0; i < expected; ++i) {
        const double t = times[static_cast<std::size_t>(i)];
        if (std::isinf(t) && t > 0.0) {
            rates(i) = 0.0;
        } else if (t > 0.0 && std::isfinite(t)) {
            rates(i) = 1.0 / t;
        } else {
            throw SchemaError("relaxation times must be positive or +inf");
        }
    }

    WitnessVerdict verdict;
    verdict.d = d;
    verdict.rates = rates;
    const RateSet rate_set = make_rate_set(d, std::move(rates), RateSource::measured);

    verdict.main = check_main_theorem(rate_set, eps);
    verdict.corollary = check_corollary(rate_set, eps);
    verdict.indeterminate = verdict.main.indeterminate;

    const double slack = eps * verdict.main.rate_sum;
    for (Eigen::Index a = 0; a < verdict.main.margins.size(); ++a) {
        if (verdict.main.margins(a) < -slack)
            verdict.violated.push_back("rate_sum_bound[" + std::to_string(a) + "]");
    }
    for (Eigen::Index a = 0; a < verdict.corollary.margins.size(); ++a) {
        if (verdict.corollary.margins(a) < -slack)
            verdict.violated.push_back("half_sum_bound[" + std::to_string(a) + "]");
    }
    if (d == 2) {
        verdict.qubit = check_qubit_relations(rate_set, eps);
        for (std::size_t k = 0; k < 3; ++k) {
            if (verdict.qubit->margins[k] < -slack)
                verdict.violated.push_back("pairwise_rate_bound[" + std::to_string(k) + "]");
        }
    }
    verdict.consistent = verdict.violated.empty();
    return verdict;
}

namespace {

// Euclidean projection onto {x >= 0, sum x - factor * x_a >= 0 for all a} by
// the primal active-set method. Constraint rows a_i are unit vectors e_a and
// s_a = ones - factor * e_a; the working set holds row indices, 0..m-1 for
// e_a and m..2m-1 for s_a.
RealVector project_to_cone(const RealVector& target, double factor) {
    const Eigen::Index m = target.size();
    const auto row = [&](Eigen::Index id) -> RealVector {
        RealVector a;
        if (id < m) {
            a = RealVector::Zero(m);
            a(id) = 1.0;
        } else {
            a = RealVector::Ones(m);
            a(id - m) -= factor;
        }
        return a;
    };
    const auto value = [&](Eigen::Index id, const RealVector& x) -> double {
        return id < m ? x(id) : x.sum() - factor * x(id - m);
    };

    RealVector x = RealVector::Zero(m);  // cone vertex, always feasible
    std::vector<Eigen::Index> working;
    const long max_iterations = 50 * static_cast<long>(m) + 100;

    for (long iter = 0; iter < max_iterations; ++iter) {
        // Equality-constrained target: projection of `target` onto the
        // nullspace of the working rows.
        RealVector x_star = target;
        RealVector multipliers;
        if (!working.empty()) {
            const Eigen::Index w = static_cast<Eigen::Index>(working.size());
            RealMatrix rows(w, m);
            for (Eigen::Index k = 0; k < w; ++k)
                rows.row(k) = row(working[static_cast<std::size_t>(k)]).transpose();
            const RealMatrix normal = rows * rows.transpose();
            const RealVector rhs = rows * target;
            // COD tolerates dependent working rows.
            multipliers = -normal.completeOrthogonalDecomposition().solve(rhs);
            x_star = target + rows.transpose() * multipliers;
        }

        const RealVector step = x_star - x;
        if (step.norm() <= 1e-13 * std::max(1.0, target.norm())) {
            // At the subproblem optimum: done unless a multiplier says a
            // working constraint should be released.
            if (working.empty()) return x_star;
            Eigen::Index drop = -1;
            double most_negative = -1e-12;
            for (Eigen::Index k = 0; k < multipliers.size(); ++k) {
                if (multipliers(k) < most_negative) {
                    most_negative = multipliers(k);
                    drop = k;
                }
            }
            if (drop < 0) return x_star;
            working.erase(working.begin() + drop);
            continue;
        }

        // Step toward x_star until a non-working constraint blocks.
        double t = 1.0;
        Eigen::Index blocker = -1;
        for (Eigen::Index id = 0; id < 2 * m; ++id) {
            if (std::find(working.begin(), working.end(), id) != working.end()) continue;
            const double direction = value(id, step);
            if (direction >= -1e-15) continue;
            const double t_id = std::max(0.0, -value(id, x) / direction);
            if (t_id < t) {
                t = t_id;
                blocker = id;
            }
        }
        x += t * step;
        if (blocker >= 0) {
            working.push_back(blocker);
        }
    }
    throw NumericalError("nearest_consistent_rates: projection did not converge");
}

}  // namespace

RateSet nearest_consistent_rates(const RateSet& r) {
    const double factor = bound_factor(r.d);
    RealVector projected = project_to_cone(r.rates, factor);
    // Snap rounding-level negatives so the result is a valid rate set.
    for (Eigen::Index i = 0; i < projected.size(); ++i)
        projected(i) = std::max(0.0, projected(i));
    return RateSet{r.d, std::move(projected), r.source};
}

}  // namespace gkls

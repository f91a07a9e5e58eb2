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

// dynamics.hpp -- semigroup evolution, trajectory physicality and the
// exponential-decay decomposition of observable expectations

#pragma once

#include <vector>

#include "gkls/generator.hpp"
#include "gkls/spectrum.hpp"
#include "gkls/types.hpp"

namespace gkls {

// d x d state validated Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix rho, double herm_tolerance = tol::hermiticity,
                           double trace_tolerance = 1e-10, double psd_tolerance = tol::psd);

    const Matrix& matrix() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

  private:
    Matrix rho_;
};

struct SnapshotDiagnostics {
    double trace_error = 0.0;        // |Tr rho - 1|
    double hermiticity_error = 0.0;  // ||rho - rho^dag||
    double min_eigenvalue = 0.0;     // of the Hermitian part
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    std::vector<SnapshotDiagnostics> diagnostics;
};

// Uniform grid 0..t_max with n_points >= 1 samples.
std::vector<double> uniform_grid(double t_max, int n_points);

// exp(t M) propagation of an arbitrary superoperator; one matrix exponential
// per step for uniform grids, per time otherwise. No state validation, so
// non-CP superoperators can be driven through it deliberately.
Trajectory propagate(const Superoperator& s, const Matrix& rho0,
                     const std::vector<double>& grid);

// Semigroup evolution of a validated state under a GKLS generator.
Trajectory evolve(const GKLSGenerator& g, const DensityMatrix& rho0,
                  const std::vector<double>& grid);

struct ExpectationMode {
    Complex amplitude;       // c_a, includes the observable overlap
    double rate = 0.0;       // Gamma_a >= 0
    double frequency = 0.0;  // omega_a
};

struct ExpectationSeries {
    std::vector<double> times;
    std::vector<double> values;  // Tr(A rho_t)
    double max_imaginary_part = 0.0;
    bool valid_decomposition = false;  // false when the spectrum is defective
    Complex constant_term;
    std::vector<ExpectationMode> modes;  // all non-designated modes
};

// Expectation values along the trajectory plus, for non-defective spectra,
// the decomposition sum_a c_a exp((-Gamma_a + i omega_a) t) + constant.
ExpectationSeries expectation_series(const GKLSGenerator& g, const DensityMatrix& rho0,
                                     const HermitianMatrix& observable,
                                     const std::vector<double>& grid);

// Evaluates the mode decomposition at time t.
Complex reconstruct_expectation(const ExpectationSeries& series, double t);

struct PhysicalityTolerances {
    double trace = 1e-9;
    double hermiticity = 1e-10;
    double negativity = 1e-8;  // allowed magnitude below zero
};

// Base tolerances scaled by the exponential conditioning ||M|| t_max.
PhysicalityTolerances scaled_physicality_tolerances(const Superoperator& s, double t_max);

struct PhysicalityReport {
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<int> flagged_snapshots;
    bool pass = false;
    PhysicalityTolerances tolerances;
};

PhysicalityReport physicality_report(const Trajectory& traj,
                                     const PhysicalityTolerances& tolerances = {});

}  // namespace gkls

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

#include "gkls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

namespace gkls {

namespace {

SnapshotDiagnostics diagnose(const Matrix& rho) {
    SnapshotDiagnostics diag;
    diag.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
    diag.hermiticity_error = (rho - rho.adjoint().eval()).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint().eval()),
                                                 Eigen::EigenvaluesOnly);
    diag.min_eigenvalue = solver.eigenvalues().minCoeff();
    return diag;
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) {
        throw SchemaError("time grid must contain at least one point");
    }
    if (grid.front() < 0.0) {
        throw SchemaError("time grid must start at t >= 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw SchemaError("time grid must be strictly increasing");
        }
    }
}

bool is_uniform_from_zero(const std::vector<double>& grid) {
    if (grid.size() < 3 || grid.front() != 0.0) return false;
    const double step = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - static_cast<double>(i) * step) > 1e-12 * std::max(1.0, grid[i]))
            return false;
    }
    return true;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix rho, double herm_tolerance, double trace_tolerance,
                             double psd_tolerance)
    : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) {
        throw DimensionError("DensityMatrix: matrix is not square");
    }
    const double scale = std::max(1.0, rho_.norm());
    const double herm_dev = (rho_ - rho_.adjoint().eval()).norm();
    if (herm_dev > herm_tolerance * scale) {
        throw HermiticityError("density matrix is not Hermitian (deviation " +
                               std::to_string(herm_dev) + ")");
    }
    const double trace_dev = std::abs(rho_.trace() - Complex(1.0, 0.0));
    if (trace_dev > trace_tolerance) {
        throw SchemaError("density matrix trace deviates from 1 by " +
                          std::to_string(trace_dev));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho_ + rho_.adjoint().eval()),
                                                 Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -psd_tolerance * scale) {
        throw PositivityError("density matrix has negative eigenvalue " +
                              std::to_string(min_eig));
    }
}

std::vector<double> uniform_grid(double t_max, int n_points) {
    if (n_points < 1 || t_max < 0.0 || (n_points > 1 && t_max == 0.0)) {
        throw SchemaError("uniform_grid: need n_points >= 1 and t_max > 0");
    }
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            n_points == 1 ? 0.0 : t_max * static_cast<double>(i) / (n_points - 1);
    }
    return grid;
}

Trajectory propagate(const Superoperator& s, const Matrix& rho0,
                     const std::vector<double>& grid) {
    if (rho0.rows() != s.d || rho0.cols() != s.d) {
        throw DimensionError("propagate: state must be d x d");
    }
    validate_grid(grid);

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());

    if (is_uniform_from_zero(grid)) {
        // One exponential of the step, composed along the grid.
        const double step = grid[1] - grid[0];
        const Matrix propagator = (step * s.matrix).exp();
        Vector v = vectorize(rho0);
        traj.states.push_back(rho0);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            v = propagator * v;
            traj.states.push_back(unvectorize(v, s.d, s.d));
        }
    } else {
        const Vector v0 = vectorize(rho0);
        for (const double t : grid) {
            if (t == 0.0) {
                traj.states.push_back(rho0);
                continue;
            }
            const Matrix propagator = (t * s.matrix).exp();
            traj.states.push_back(unvectorize(propagator * v0, s.d, s.d));
        }
    }

    traj.diagnostics.reserve(traj.states.size());
    for (const Matrix& state : traj.states) traj.diagnostics.push_back(diagnose(state));
    return traj;
}

Trajectory evolve(const GKLSGenerator& g, const DensityMatrix& rho0,
                  const std::vector<double>& grid) {
    if (rho0.dim() != g.d) {
        throw DimensionError("evolve: state dimension does not match generator");
    }
    return propagate(to_superoperator(g), rho0.matrix(), grid);
}

ExpectationSeries expectation_series(const GKLSGenerator& g, const DensityMatrix& rho0,
                                     const HermitianMatrix& observable,
                                     const std::vector<double>& grid) {
    if (observable.dim() != g.d) {
        throw DimensionError("expectation_series: observable dimension mismatch");
    }
    const Superoperator s = to_superoperator(g);
    const Trajectory traj = propagate(s, rho0.matrix(), grid);

    ExpectationSeries series;
    series.times = traj.times;
    series.values.reserve(traj.states.size());
    for (const Matrix& state : traj.states) {
        const Complex value = (observable.matrix() * state).trace();
        series.values.push_back(value.real());
        series.max_imaginary_part = std::max(series.max_imaginary_part, std::abs(value.imag()));
    }

    const GeneratorSpectrum spec = compute_spectrum(s);
    if (spec.defective) {
        series.valid_decomposition = false;
        return series;
    }

    // vec(rho_0) = V c; each mode contributes c_a Tr(A u_a) exp(lambda_a t).
    const int n = static_cast<int>(spec.eigenvalues.size());
    Matrix eigvecs(n, n);
    for (int i = 0; i < n; ++i)
        eigvecs.col(i) = vectorize(spec.eigen_operators[static_cast<std::size_t>(i)]);
    const Vector coeffs = eigvecs.partialPivLu().solve(vectorize(rho0.matrix()));

    for (int i = 0; i < n; ++i) {
        const Complex amplitude =
            coeffs(i) *
            (observable.matrix() * spec.eigen_operators[static_cast<std::size_t>(i)]).trace();
        if (i == spec.zero_mode_index) {
            series.constant_term = amplitude;
            continue;
        }
        ExpectationMode mode;
        mode.amplitude = amplitude;
        mode.rate = std::max(0.0, -spec.eigenvalues(i).real());
        mode.frequency = spec.eigenvalues(i).imag();
        series.modes.push_back(mode);
    }
    series.valid_decomposition = true;
    return series;
}

Complex reconstruct_expectation(const ExpectationSeries& series, double t) {
    Complex value = series.constant_term;
    for (const auto& mode : series.modes) {
        value += mode.amplitude * std::exp(Complex(-mode.rate, mode.frequency) * t);
    }
    return value;
}

PhysicalityTolerances scaled_physicality_tolerances(const Superoperator& s, double t_max) {
    const double scale = std::max(1.0, s.matrix.norm() * t_max);
    PhysicalityTolerances tolerances;
    tolerances.trace *= scale;
    tolerances.hermiticity *= scale;
    tolerances.negativity *= scale;
    return tolerances;
}

PhysicalityReport physicality_report(const Trajectory& traj,
                                     const PhysicalityTolerances& tolerances) {
    PhysicalityReport report;
    report.tolerances = tolerances;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
        const SnapshotDiagnostics& diag = traj.diagnostics[i];
        report.max_trace_error = std::max(report.max_trace_error, diag.trace_error);
        report.max_hermiticity_error =
            std::max(report.max_hermiticity_error, diag.hermiticity_error);
        report.min_eigenvalue = std::min(report.min_eigenvalue, diag.min_eigenvalue);
        if (diag.trace_error > tolerances.trace ||
            diag.hermiticity_error > tolerances.hermiticity ||
            diag.min_eigenvalue < -tolerances.negativity) {
            report.flagged_snapshots.push_back(static_cast<int>(i));
        }
    }
    if (traj.diagnostics.empty()) report.min_eigenvalue = 0.0;
    report.pass = report.flagged_snapshots.empty();
    return report;
}

}  // namespace gkls

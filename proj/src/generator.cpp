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

#include "gkls/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "gkls/rng.hpp"

namespace gkls {

namespace {

const Complex kI(0.0, 1.0);

double hermiticity_deviation(const Matrix& m) { return (m - m.adjoint().eval()).norm(); }

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m, double tolerance) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw DimensionError("HermitianMatrix: matrix is not square");
    }
    const double dev = hermiticity_deviation(m_);
    if (dev > tolerance * std::max(1.0, m_.norm())) {
        throw HermiticityError("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
    }
}

KossakowskiMatrix::KossakowskiMatrix(Matrix c, double herm_tolerance, double psd_tolerance)
    : c_(std::move(c)) {
    if (c_.rows() != c_.cols()) {
        throw DimensionError("KossakowskiMatrix: matrix is not square");
    }
    const double dev = hermiticity_deviation(c_);
    if (dev > herm_tolerance * std::max(1.0, c_.norm())) {
        throw HermiticityError("Kossakowski matrix is not Hermitian (deviation " +
                               std::to_string(dev) + ")");
    }
    psd_floor_ = psd_tolerance * c_.norm();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (c_ + c_.adjoint().eval()),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Kossakowski eigenvalue computation failed");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -psd_floor_) {
        throw PositivityError("Kossakowski matrix is not positive semidefinite (min eigenvalue " +
                              std::to_string(min_eig) + ")");
    }
}

GKLSGenerator make_generator(Matrix hamiltonian, Matrix kossakowski,
                             std::shared_ptr<const OperatorBasis> basis) {
    const int d = static_cast<int>(hamiltonian.rows());
    if (hamiltonian.cols() != d) {
        throw DimensionError("make_generator: Hamiltonian is not square");
    }
    if (!basis || basis->d != d) {
        throw DimensionError("make_generator: basis dimension does not match Hamiltonian");
    }
    const int m = d * d - 1;
    if (kossakowski.rows() != m || kossakowski.cols() != m) {
        throw DimensionError("make_generator: Kossakowski matrix must be (d^2-1) x (d^2-1)");
    }
    return GKLSGenerator{d, HermitianMatrix(std::move(hamiltonian)),
                         KossakowskiMatrix(std::move(kossakowski)), std::move(basis)};
}

GKLSGenerator make_generator(Matrix hamiltonian, Matrix kossakowski) {
    const int d = static_cast<int>(hamiltonian.rows());
    if (d < 2) {
        throw DimensionError("make_generator: dimension must be >= 2");
    }
    auto basis = std::make_shared<const OperatorBasis>(build_gellmann_basis(d));
    return make_generator(std::move(hamiltonian), std::move(kossakowski), std::move(basis));
}

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
        throw DimensionError("unvectorize: vector length does not match target shape");
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix apply_generator(const GKLSGenerator& g, const Matrix& rho) {
    if (rho.rows() != g.d || rho.cols() != g.d) {
        throw DimensionError("apply_generator: state must be d x d");
    }
    const Matrix& h = g.hamiltonian.matrix();
    Matrix out = -kI * (h * rho - rho * h);

    const Matrix& c = g.kossakowski.matrix();
    const int m = g.basis->traceless_count();
    for (int i = 0; i < m; ++i) {
        const Matrix& fi = g.basis->element(i);
        for (int j = 0; j < m; ++j) {
            const Complex cij = c(i, j);
            if (cij == Complex(0.0, 0.0)) continue;
            const Matrix fj_dag = g.basis->element(j).adjoint();
            const Matrix prod = fj_dag * fi;
            out += 0.5 * cij * (2.0 * (fi * rho * fj_dag) - (prod * rho + rho * prod));
        }
    }
    return out;
}

Superoperator to_superoperator(const GKLSGenerator& g) {
    const int d = g.d;
    const int m = g.basis->traceless_count();
    const Matrix& h = g.hamiltonian.matrix();
    const Matrix& c = g.kossakowski.matrix();
    const Matrix identity = Matrix::Identity(d, d);

    // -i (I (x) H - H^T (x) I)
    Matrix super = -kI * (Eigen::kroneckerProduct(identity, h).eval() -
                          Eigen::kroneckerProduct(h.transpose(), identity).eval());

    // The double sum over C_ij factors through G_j = sum_i C_ij F_i:
    //   sum_ij C_ij conj(F_j) (x) F_i = sum_j conj(F_j) (x) G_j
    //   K = sum_ij C_ij F_j^dag F_i   = sum_j F_j^dag G_j
    Matrix k = Matrix::Zero(d, d);
    for (int j = 0; j < m; ++j) {
        Matrix gj = Matrix::Zero(d, d);
        for (int i = 0; i < m; ++i) {
            const Complex cij = c(i, j);
            if (cij != Complex(0.0, 0.0)) gj += cij * g.basis->element(i);
        }
        const Matrix& fj = g.basis->element(j);
        super += Eigen::kroneckerProduct(fj.conjugate(), gj);
        k += fj.adjoint() * gj;
    }
    super -= 0.5 * Eigen::kroneckerProduct(identity, k).eval();
    super -= 0.5 * Eigen::kroneckerProduct(k.transpose(), identity).eval();

    return Superoperator{d, std::move(super)};
}

Matrix apply_superoperator(const Superoperator& s, const Matrix& rho) {
    if (rho.rows() != s.d || rho.cols() != s.d) {
        throw DimensionError("apply_superoperator: state must be d x d");
    }
    return unvectorize(s.matrix * vectorize(rho), s.d, s.d);
}

double trace_preservation_residual(const Superoperator& s) {
    const Vector id_vec = vectorize(Matrix::Identity(s.d, s.d));
    return (id_vec.adjoint() * s.matrix).norm();
}

double generator_trace(const Superoperator& s) { return s.matrix.trace().real(); }

double generator_trace(const GKLSGenerator& g) { return generator_trace(to_superoperator(g)); }

double LindbladDecomposition::rate_sum() const {
    double sum = 0.0;
    for (const auto& term : terms) sum += term.rate;
    return sum;
}

LindbladDecomposition decompose_lindblad(const GKLSGenerator& g) {
    const Matrix& c = g.kossakowski.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (c + c.adjoint().eval()));
    if (solver.info() != Eigen::Success) {
        throw NumericalError("decompose_lindblad: eigendecomposition failed");
    }
    const double floor = g.kossakowski.psd_floor();

    LindbladDecomposition dec;
    const int m = static_cast<int>(c.rows());
    for (int k = 0; k < m; ++k) {
        const double p = solver.eigenvalues()(k);
        if (p < -floor) {
            throw PositivityError("decompose_lindblad: matrix not completely positive");
        }
        if (p <= floor) continue;  // rounding-level weight, contributes nothing
        dec.terms.push_back({p, reconstruct(*g.basis, solver.eigenvectors().col(k))});
    }
    return dec;
}

Matrix apply_lindblad_terms(const std::vector<LindbladTerm>& terms, const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& term : terms) {
        const Matrix ldag = term.op.adjoint();
        const Matrix ldl = ldag * term.op;
        out += term.rate * (term.op * rho * ldag - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

KossakowskiForm kossakowski_from_lindblad(const std::vector<LindbladTerm>& ops,
                                          const OperatorBasis& basis) {
    const int d = basis.d;
    const int m = basis.traceless_count();
    Matrix c = Matrix::Zero(m, m);
    Matrix h_corr = Matrix::Zero(d, d);

    for (const auto& op : ops) {
        if (op.rate < 0.0) {
            throw InvalidRateError("kossakowski_from_lindblad: negative rate " +
                                   std::to_string(op.rate));
        }
        if (op.op.rows() != d || op.op.cols() != d) {
            throw DimensionError("kossakowski_from_lindblad: jump operator must be d x d");
        }
        // Split L into a traceless part and tau * I; the trace part only
        // shifts the Hamiltonian.
        const Complex tau = op.op.trace() / static_cast<double>(d);
        const Matrix traceless = op.op - tau * Matrix::Identity(d, d);
        const Vector v = expand_traceless(basis, traceless);
        c += op.rate * (v * v.adjoint());
        h_corr += (kI * op.rate / 2.0) * (std::conj(tau) * traceless - tau * traceless.adjoint());
    }
    return KossakowskiForm{std::move(c), std::move(h_corr)};
}

namespace {

HermiticityReport hermiticity_probe(const Superoperator& s, int trials, std::uint64_t seed,
                                    double scale) {
    if (trials < 1) {
        throw Error("check_hermiticity_preservation: trials must be >= 1");
    }
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Matrix a = random_ginibre(rng, s.d, s.d);
        const Matrix lhs = apply_superoperator(s, a).adjoint();
        const Matrix rhs = apply_superoperator(s, a.adjoint());
        worst = std::max(worst, (lhs - rhs).norm());
    }
    const double tolerance = 1e-10 * std::max(1.0, scale);
    return HermiticityReport{trials, worst, tolerance, worst <= tolerance};
}

}  // namespace

HermiticityReport check_hermiticity_preservation(const GKLSGenerator& g, int trials,
                                                 std::uint64_t seed) {
    const Superoperator s = to_superoperator(g);
    return hermiticity_probe(s, trials, seed, s.matrix.norm());
}

HermiticityReport check_hermiticity_preservation(const Superoperator& s, int trials,
                                                 std::uint64_t seed) {
    return hermiticity_probe(s, trials, seed, s.matrix.norm());
}

}  // namespace gkls

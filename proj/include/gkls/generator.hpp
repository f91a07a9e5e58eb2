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

// generator.hpp -- GKLS generators: assembly, superoperator form, jump
// operator decomposition and the trace identity

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gkls/basis.hpp"
#include "gkls/types.hpp"

namespace gkls {

// d x d matrix validated Hermitian within a scale-aware tolerance.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(Matrix m, double tolerance = tol::hermiticity);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    Matrix m_;
};

// (d^2-1) x (d^2-1) Hermitian positive-semidefinite coefficient matrix over
// the traceless basis block. Eigenvalues in [-psd_floor, 0) are tolerated as
// rounding noise; anything lower is rejected.
class KossakowskiMatrix {
  public:
    explicit KossakowskiMatrix(Matrix c, double herm_tolerance = tol::hermiticity,
                               double psd_tolerance = tol::psd);

    const Matrix& matrix() const { return c_; }
    int dim() const { return static_cast<int>(c_.rows()); }
    double trace() const { return c_.trace().real(); }
    double psd_floor() const { return psd_floor_; }

  private:
    Matrix c_;
    double psd_floor_ = 0.0;
};

struct GKLSGenerator {
    int d = 0;
    HermitianMatrix hamiltonian;
    KossakowskiMatrix kossakowski;
    std::shared_ptr<const OperatorBasis> basis;

    double kossakowski_trace() const { return kossakowski.trace(); }
};

// Validates shapes and wraps (H, C) over the Gell-Mann basis. The overload
// without a basis builds one; pass a shared basis when constructing many
// generators of the same dimension.
GKLSGenerator make_generator(Matrix hamiltonian, Matrix kossakowski);
GKLSGenerator make_generator(Matrix hamiltonian, Matrix kossakowski,
                             std::shared_ptr<const OperatorBasis> basis);

// Column-stacking vectorization and inverse, vec(A rho B) = (B^T (x) A) vec(rho).
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int rows, int cols);

// Generator evaluated directly from the definition,
//   -i[H,rho] + (1/2) sum_ij C_ij (2 F_i rho F_j^dag - {F_j^dag F_i, rho}).
// Reference path for the superoperator matrix; no vectorization involved.
Matrix apply_generator(const GKLSGenerator& g, const Matrix& rho);

// d^2 x d^2 matrix representation in the fixed column-stacking convention.
struct Superoperator {
    int d = 0;
    Matrix matrix;

    static constexpr const char* kConvention = "column-stacking";
};

Superoperator to_superoperator(const GKLSGenerator& g);

// unvec(M vec(rho)).
Matrix apply_superoperator(const Superoperator& s, const Matrix& rho);

// Norm of vec(I)^T M; zero for a trace-preserving generator.
double trace_preservation_residual(const Superoperator& s);

// Trace of the superoperator matrix; equals -d Tr C for a GKLS generator.
double generator_trace(const Superoperator& s);
double generator_trace(const GKLSGenerator& g);

struct LindbladTerm {
    double rate = 0.0;  // p_k >= 0
    Matrix op;          // L_k
};

// Jump-operator form of the dissipator: eigendecomposition of C with
// traceless unit-norm L_k = sum_i v^(k)_i F_i. Zero-weight terms are dropped.
struct LindbladDecomposition {
    std::vector<LindbladTerm> terms;

    double rate_sum() const;
};

LindbladDecomposition decompose_lindblad(const GKLSGenerator& g);

// Dissipator sum_k rate_k (L rho L^dag - {L^dag L, rho}/2) evaluated term by
// term; used for round-trip checks against the (H, C) form.
Matrix apply_lindblad_terms(const std::vector<LindbladTerm>& terms, const Matrix& rho);

// Inverse construction: projects arbitrary jump operators onto the traceless
// basis, returning the Kossakowski matrix plus the Hamiltonian correction
// induced by their trace parts.
struct KossakowskiForm {
    Matrix kossakowski;
    Matrix hamiltonian_correction;
};

KossakowskiForm kossakowski_from_lindblad(const std::vector<LindbladTerm>& ops,
                                          const OperatorBasis& basis);

struct HermiticityReport {
    int trials = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Random-probe check of (L(A))^dag == L(A^dag).
HermiticityReport check_hermiticity_preservation(const GKLSGenerator& g, int trials,
                                                 std::uint64_t seed = 0x9d5bu);
HermiticityReport check_hermiticity_preservation(const Superoperator& s, int trials,
                                                 std::uint64_t seed = 0x9d5bu);

}  // namespace gkls

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

// basis.hpp -- orthonormal Hermitian operator basis of M_d(C)

#pragma once

#include <vector>

#include "gkls/types.hpp"

namespace gkls {

// Generalized Gell-Mann basis {F_i}, i = 1..d^2, orthonormal under the
// Hilbert-Schmidt inner product, every element Hermitian, the first d^2-1
// traceless and the identity element I/sqrt(d) stored last.
//
// Ordering: symmetric pairs (k<l, lexicographic), antisymmetric pairs (same
// order), diagonal elements, identity. Kossakowski matrices are indexed over
// the traceless block in exactly this order.
struct OperatorBasis {
    int d = 0;
    std::vector<Matrix> elements;

    int size() const { return static_cast<int>(elements.size()); }
    int traceless_count() const { return d * d - 1; }
    const Matrix& element(int i) const { return elements[static_cast<std::size_t>(i)]; }
    const Matrix& identity_element() const { return elements.back(); }
};

// Builds the generalized Gell-Mann basis for dimension d >= 2.
OperatorBasis build_gellmann_basis(int d);

// Hilbert-Schmidt inner product Tr(A^dag B).
Complex hs_inner(const Matrix& a, const Matrix& b);

// Hilbert-Schmidt (Frobenius) norm sqrt(<A,A>).
double hs_norm(const Matrix& a);

// Gram matrix <F_i, F_j> of all basis elements; the identity for a valid basis.
Matrix gram_matrix(const OperatorBasis& basis);

// Expansion coefficients <F_i, A> over all d^2 elements.
Vector expand(const OperatorBasis& basis, const Matrix& a);

// Expansion coefficients over the d^2-1 traceless elements only.
Vector expand_traceless(const OperatorBasis& basis, const Matrix& a);

// Linear combination sum_i coeffs[i] F_i; accepts d^2-1 or d^2 coefficients.
Matrix reconstruct(const OperatorBasis& basis, const Vector& coeffs);

}  // namespace gkls

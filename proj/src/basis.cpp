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

#include "gkls/basis.hpp"

#include <cmath>
#include <string>

namespace gkls {

namespace {
const Complex kI(0.0, 1.0);
}

OperatorBasis build_gellmann_basis(int d) {
    if (d < 2) {
        throw DimensionError("operator basis requires dimension >= 2, got " + std::to_string(d));
    }
    OperatorBasis basis;
    basis.d = d;
    basis.elements.reserve(static_cast<std::size_t>(d) * d);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Symmetric pairs (|k><l| + |l><k|)/sqrt(2), k < l lexicographic.
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            Matrix m = Matrix::Zero(d, d);
            m(k, l) = inv_sqrt2;
            m(l, k) = inv_sqrt2;
            basis.elements.push_back(std::move(m));
        }
    }
    // Antisymmetric pairs -i(|k><l| - |l><k|)/sqrt(2).
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            Matrix m = Matrix::Zero(d, d);
            m(k, l) = -kI * inv_sqrt2;
            m(l, k) = kI * inv_sqrt2;
            basis.elements.push_back(std::move(m));
        }
    }
    // Diagonal traceless elements (sum_{j<l} |j><j| - l |l><l|)/sqrt(l(l+1)).
    for (int l = 1; l < d; ++l) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        Matrix m = Matrix::Zero(d, d);
        for (int j = 0; j < l; ++j) m(j, j) = norm;
        m(l, l) = -static_cast<double>(l) * norm;
        basis.elements.push_back(std::move(m));
    }
    // Identity element I/sqrt(d), stored last.
    basis.elements.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

    return basis;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("hs_inner: operands have different shapes");
    }
    return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Matrix gram_matrix(const OperatorBasis& basis) {
    const int n = basis.size();
    Matrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = hs_inner(basis.element(i), basis.element(j));
    return gram;
}

Vector expand(const OperatorBasis& basis, const Matrix& a) {
    if (a.rows() != basis.d || a.cols() != basis.d) {
        throw DimensionError("expand: matrix does not match basis dimension");
    }
    const int n = basis.size();
    Vector coeffs(n);
    for (int i = 0; i < n; ++i) coeffs(i) = hs_inner(basis.element(i), a);
    return coeffs;
}

Vector expand_traceless(const OperatorBasis& basis, const Matrix& a) {
    return expand(basis, a).head(basis.traceless_count());
}

Matrix reconstruct(const OperatorBasis& basis, const Vector& coeffs) {
    const auto n = coeffs.size();
    if (n != basis.size() && n != basis.traceless_count()) {
        throw DimensionError("reconstruct: expected d^2 or d^2-1 coefficients");
    }
    Matrix m = Matrix::Zero(basis.d, basis.d);
    for (Eigen::Index i = 0; i < n; ++i) m += coeffs(i) * basis.element(static_cast<int>(i));
    return m;
}

}  // namespace gkls

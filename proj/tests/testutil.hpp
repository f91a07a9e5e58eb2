// Shared fixtures and independent oracles for the test suites. Oracle
// routines deliberately use plain entrywise loops so they share no code path
// with the library implementations they check.

#pragma once

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gkls/basis.hpp"
#include "gkls/generator.hpp"
#include "gkls/rng.hpp"
#include "gkls/types.hpp"

namespace testutil {

using gkls::Complex;
using gkls::Matrix;

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix plus_state() {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return m;
}

// Pure dephasing: H = 0, C = diag(0, 0, 1) over (x, y, z)/sqrt(2).
inline gkls::GKLSGenerator dephasing_generator() {
    Matrix c = Matrix::Zero(3, 3);
    c(2, 2) = 1.0;
    return gkls::make_generator(Matrix::Zero(2, 2), std::move(c));
}

// Isotropic depolarizing: C = (1/2) I_3, rates (1, 1, 1).
inline gkls::GKLSGenerator depolarizing_generator() {
    return gkls::make_generator(Matrix::Zero(2, 2), 0.5 * Matrix::Identity(3, 3));
}

inline gkls::GKLSGenerator random_generator(gkls::SplitMix64& rng, int d,
                                            double h_scale = 1.0, double c_scale = 1.0) {
    const int m = d * d - 1;
    Matrix h = gkls::random_gue(rng, d, h_scale);
    Matrix c = gkls::random_wishart(rng, m, m, c_scale);
    return gkls::make_generator(std::move(h), std::move(c));
}

inline Matrix random_hermitian(gkls::SplitMix64& rng, int d) {
    const Matrix a = gkls::random_ginibre(rng, d, d);
    return 0.5 * (a + a.adjoint());
}

// Entrywise Tr(A^dag B); independent of the library reduction.
inline Complex oracle_hs_inner(const Matrix& a, const Matrix& b) {
    Complex sum(0.0, 0.0);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) sum += std::conj(a(i, j)) * b(i, j);
    return sum;
}

inline double oracle_hs_norm(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// Matrix of the generator in the operator basis, M'_ij = <F_i, L(F_j)>,
// evaluated through apply_generator only. Its spectrum must agree with the
// vectorized superoperator's: two independent representations of one map.
inline Matrix basis_expansion_matrix(const gkls::GKLSGenerator& g) {
    const int n = g.basis->size();
    Matrix m(n, n);
    for (int j = 0; j < n; ++j) {
        const Matrix image = gkls::apply_generator(g, g.basis->element(j));
        for (int i = 0; i < n; ++i) m(i, j) = gkls::hs_inner(g.basis->element(i), image);
    }
    return m;
}

// Runs a command, captures stdout, returns (exit code, stdout).
inline std::pair<int, std::string> run_command(const std::string& command) {
    std::string output;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed: " + command);
    char buffer[4096];
    while (std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) output.append(buffer, n);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

}  // namespace testutil

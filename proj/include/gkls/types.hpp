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

// types.hpp -- shared aliases, default tolerances and the error hierarchy

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gkls {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Scale-aware thresholds are derived from these at the
// call site; every value is overridable through the public interfaces.
namespace tol {
inline constexpr double orthonormality = 1e-12;  // basis Gram deviation
inline constexpr double hermiticity = 1e-12;     // ||A - A^dag|| relative
inline constexpr double psd = 1e-10;             // eigenvalue floor, relative to ||C||
inline constexpr double zero_mode = 1e-9;        // zero-eigenvalue radius, scale-adjusted
inline constexpr double conjugate_pair = 1e-8;   // pairing radius, scale-adjusted
inline constexpr double witness = 1e-9;          // constraint slack, relative to the rate sum
inline constexpr double kappa_max = 1e12;        // eigenvector-matrix condition flag
}  // namespace tol

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand shapes do not match.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed input document (JSON shape, missing field, bad value).
struct SchemaError : Error {
    using Error::Error;
};

// A matrix required to be Hermitian is not.
struct HermiticityError : Error {
    using Error::Error;
};

// Kossakowski matrix has an eigenvalue below the PSD floor; the candidate
// generator is not completely positive.
struct PositivityError : Error {
    using Error::Error;
};

struct InvalidRateError : Error {
    using Error::Error;
};

// No eigenvalue within the zero-mode radius.
struct NotTracePreservingError : Error {
    using Error::Error;
};

// Operation requires a diagonalizable spectrum.
struct DefectiveSpectrumError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

}  // namespace gkls

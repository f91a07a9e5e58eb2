#include <doctest.h>

#include <cmath>

#include "gkls/generator.hpp"
#include "gkls/rng.hpp"
#include "testutil.hpp"

using namespace gkls;

namespace {

// Dissipator part of apply_generator (H = 0 path) for round-trip checks.
Matrix dissipator_only(const GKLSGenerator& g, const Matrix& rho) {
    GKLSGenerator no_h = make_generator(Matrix::Zero(g.d, g.d), g.kossakowski.matrix(), g.basis);
    return apply_generator(no_h, rho);
}

}  // namespace

TEST_CASE("validated wrappers reject bad inputs") {
    Matrix not_herm(2, 2);
    not_herm << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;  // symmetric, not Hermitian
    CHECK_THROWS_AS(HermitianMatrix{not_herm}, HermiticityError);

    Matrix indefinite = Matrix::Identity(3, 3);
    indefinite(2, 2) = -0.1;
    CHECK_THROWS_AS(KossakowskiMatrix{indefinite}, PositivityError);

    CHECK_THROWS_AS(make_generator(Matrix::Zero(2, 2), Matrix::Zero(4, 4)), DimensionError);
}

TEST_CASE("rounding-level negative eigenvalues of C are tolerated") {
    Matrix c = Matrix::Identity(3, 3);
    c(2, 2) = -1e-12;  // within the 1e-10 * ||C|| floor
    CHECK_NOTHROW(KossakowskiMatrix{c});
}

TEST_CASE("vectorization convention vec(A rho B) = (B^T kron A) vec(rho)") {
    SplitMix64 rng(21);
    const Matrix a = random_ginibre(rng, 3, 3);
    const Matrix b = random_ginibre(rng, 3, 3);
    const Matrix rho = random_ginibre(rng, 3, 3);
    const Vector lhs = vectorize(a * rho * b);
    Matrix kron(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            kron.block(3 * i, 3 * j, 3, 3) = b.transpose()(i, j) * a;
    CHECK((lhs - kron * vectorize(rho)).norm() <= 1e-12);
    CHECK((unvectorize(lhs, 3, 3) - a * rho * b).norm() == 0.0);
}

TEST_CASE("null generator maps everything to zero") {
    const auto g = make_generator(Matrix::Zero(2, 2), Matrix::Zero(3, 3));
    SplitMix64 rng(22);
    const Matrix rho = random_ginibre(rng, 2, 2);
    CHECK(apply_generator(g, rho).norm() == 0.0);
    CHECK(to_superoperator(g).matrix.norm() == 0.0);
}

TEST_CASE("dephasing action on sigma_x is -sigma_x") {
    const auto g = testutil::dephasing_generator();
    const Matrix image = apply_generator(g, testutil::pauli_x());
    CHECK((image + testutil::pauli_x()).norm() <= 1e-14);
}

TEST_CASE("pure Hamiltonian commutator: L(sigma_x) = 2 sigma_y for H = sigma_z") {
    const auto g = make_generator(testutil::pauli_z(), Matrix::Zero(3, 3));
    const Matrix image = apply_generator(g, testutil::pauli_x());
    CHECK((image - 2.0 * testutil::pauli_y()).norm() <= 1e-14);
}

TEST_CASE("apply_generator validates state shape") {
    const auto g = testutil::dephasing_generator();
    CHECK_THROWS_AS(apply_generator(g, Matrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("superoperator action matches direct application on the Pauli basis") {
    const auto g = testutil::dephasing_generator();
    const Superoperator s = to_superoperator(g);
    const Matrix paulis[4] = {Matrix::Identity(2, 2), testutil::pauli_x(), testutil::pauli_y(),
                              testutil::pauli_z()};
    const double expected[4] = {0.0, -1.0, -1.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK((apply_superoperator(s, paulis[i]) - expected[i] * paulis[i]).norm() <= 1e-14);
    }
}

TEST_CASE("superoperator equals direct application on random inputs") {
    SplitMix64 rng(23);
    for (int d = 2; d <= 4; ++d) {
        CAPTURE(d);
        const auto g = testutil::random_generator(rng, d);
        const Superoperator s = to_superoperator(g);
        for (int trial = 0; trial < 25; ++trial) {
            const Matrix rho = random_ginibre(rng, d, d);
            CHECK((apply_superoperator(s, rho) - apply_generator(g, rho)).norm() <= 1e-10);
        }
    }
}

TEST_CASE("trace preservation: Tr L(rho) = 0 and the residual row vanishes") {
    SplitMix64 rng(24);
    for (int d = 2; d <= 4; ++d) {
        const auto g = testutil::random_generator(rng, d);
        CHECK(trace_preservation_residual(to_superoperator(g)) <= 1e-10);
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix rho = random_ginibre(rng, d, d);
            CHECK(std::abs(apply_generator(g, rho).trace()) <= 1e-10);
        }
    }
}

TEST_CASE("generator trace identity") {
    CHECK(generator_trace(testutil::dephasing_generator()) == doctest::Approx(-2.0));
    const auto unitary = make_generator(testutil::pauli_z(), Matrix::Zero(3, 3));
    CHECK(std::abs(generator_trace(unitary)) <= 1e-12);

    SplitMix64 rng(25);
    const auto g = testutil::random_generator(rng, 3);
    const double expected = -3.0 * g.kossakowski_trace();
    CHECK(generator_trace(g) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("jump decomposition of dephasing is a single sigma_z/sqrt(2) term") {
    const auto g = testutil::dephasing_generator();
    const LindbladDecomposition dec = decompose_lindblad(g);
    REQUIRE(dec.terms.size() == 1);
    CHECK(dec.terms[0].rate == doctest::Approx(1.0));
    const Matrix expected = testutil::pauli_z() / std::sqrt(2.0);
    // eigenvector phase freedom: compare |<expected, L>| instead of entries
    CHECK(std::abs(hs_inner(expected, dec.terms[0].op)) == doctest::Approx(1.0));
    CHECK(hs_norm(dec.terms[0].op) == doctest::Approx(1.0));
    CHECK(std::abs(dec.terms[0].op.trace()) <= 1e-12);
}

TEST_CASE("identity Kossakowski matrix decomposes into three unit-weight jumps") {
    const auto g = make_generator(Matrix::Zero(2, 2), Matrix::Identity(3, 3));
    const LindbladDecomposition dec = decompose_lindblad(g);
    REQUIRE(dec.terms.size() == 3);
    for (const auto& term : dec.terms) {
        CHECK(term.rate == doctest::Approx(1.0));
        CHECK(hs_norm(term.op) == doctest::Approx(1.0));
        CHECK(std::abs(term.op.trace()) <= 1e-12);
    }
}

TEST_CASE("jump decomposition properties on random generators") {
    SplitMix64 rng(26);
    for (int d = 2; d <= 4; ++d) {
        CAPTURE(d);
        const auto g = testutil::random_generator(rng, d);
        const LindbladDecomposition dec = decompose_lindblad(g);
        CHECK(dec.rate_sum() == doctest::Approx(g.kossakowski_trace()).epsilon(1e-12));
        for (const auto& term : dec.terms) {
            CHECK(term.rate >= 0.0);
            CHECK(hs_norm(term.op) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::abs(term.op.trace()) <= 1e-10);
        }
        // rebuilding the dissipator from the terms reproduces it
        for (int trial = 0; trial < 5; ++trial) {
            const Matrix rho = random_ginibre(rng, d, d);
            CHECK((apply_lindblad_terms(dec.terms, rho) - dissipator_only(g, rho)).norm() <=
                  1e-10);
        }
    }
}

TEST_CASE("kossakowski_from_lindblad: traceless unit jump passes through") {
    const OperatorBasis basis = build_gellmann_basis(2);
    const Matrix l = testutil::pauli_z() / std::sqrt(2.0);
    const KossakowskiForm form = kossakowski_from_lindblad({{1.0, l}}, basis);
    Matrix expected = Matrix::Zero(3, 3);
    expected(2, 2) = 1.0;
    CHECK((form.kossakowski - expected).norm() <= 1e-14);
    CHECK(form.hamiltonian_correction.norm() <= 1e-14);
}

TEST_CASE("kossakowski_from_lindblad: lowering operator") {
    const OperatorBasis basis = build_gellmann_basis(2);
    Matrix lowering(2, 2);  // |0><1|
    lowering << 0, 1, 0, 0;
    const KossakowskiForm form = kossakowski_from_lindblad({{1.0, lowering}}, basis);
    // support on the x,y block only
    CHECK(std::abs(form.kossakowski(2, 2)) <= 1e-14);
    CHECK(std::abs(form.kossakowski(0, 0) - 0.5) <= 1e-14);
    CHECK(std::abs(form.kossakowski(1, 1) - 0.5) <= 1e-14);

    // round trip: dissipator from (C, H_corr) equals the direct form
    const auto g = make_generator(form.hamiltonian_correction, form.kossakowski);
    SplitMix64 rng(27);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix rho = random_ginibre(rng, 2, 2);
        const Matrix direct = apply_lindblad_terms({{1.0, lowering}}, rho);
        CHECK((apply_generator(g, rho) - direct).norm() <= 1e-10);
    }
}

TEST_CASE("kossakowski_from_lindblad: identity jump is a pure trace part") {
    const OperatorBasis basis = build_gellmann_basis(2);
    const KossakowskiForm form =
        kossakowski_from_lindblad({{1.0, Matrix::Identity(2, 2)}}, basis);
    CHECK(form.kossakowski.norm() <= 1e-14);
    CHECK(form.hamiltonian_correction.norm() <= 1e-14);
}

TEST_CASE("kossakowski_from_lindblad round trip with trace-carrying jumps") {
    const OperatorBasis basis = build_gellmann_basis(3);
    SplitMix64 rng(28);
    std::vector<LindbladTerm> ops;
    ops.push_back({0.7, random_ginibre(rng, 3, 3)});
    ops.push_back({1.3, random_ginibre(rng, 3, 3)});
    const KossakowskiForm form = kossakowski_from_lindblad(ops, basis);
    const auto g = make_generator(form.hamiltonian_correction, form.kossakowski);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix rho = random_ginibre(rng, 3, 3);
        CHECK((apply_generator(g, rho) - apply_lindblad_terms(ops, rho)).norm() <= 1e-10);
    }
}

TEST_CASE("kossakowski_from_lindblad rejects negative rates") {
    const OperatorBasis basis = build_gellmann_basis(2);
    CHECK_THROWS_AS(kossakowski_from_lindblad({{-1.0, testutil::pauli_x()}}, basis),
                    InvalidRateError);
}

TEST_CASE("hermiticity preservation holds for generators, fails for raw matrices") {
    SplitMix64 rng(29);
    const auto g = testutil::random_generator(rng, 3);
    const HermiticityReport report = check_hermiticity_preservation(g, 25);
    CHECK(report.pass);
    CHECK(report.max_deviation <= report.tolerance);

    // Hermitian inputs stay Hermitian.
    const Matrix a = testutil::random_hermitian(rng, 3);
    const Matrix image = apply_generator(g, a);
    CHECK((image - image.adjoint().eval()).norm() <= 1e-10);

    // A random matrix in superoperator clothing has no reason to satisfy it.
    Superoperator fake{2, random_ginibre(rng, 4, 4)};
    CHECK_FALSE(check_hermiticity_preservation(fake, 25).pass);
}

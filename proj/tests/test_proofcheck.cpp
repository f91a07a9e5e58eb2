#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gkls/proofcheck.hpp"
#include "gkls/rng.hpp"
#include "testutil.hpp"

using namespace gkls;

TEST_CASE("commutator norm bound: trivial and saturating pairs") {
    const auto self = check_bw_inequality(testutil::pauli_x(), testutil::pauli_x());
    CHECK(self.lhs == 0.0);
    CHECK(self.pass);

    // Pauli pairs saturate ||[A,B]|| = sqrt(2) ||A|| ||B||.
    const auto pauli = check_bw_inequality(testutil::pauli_x(), testutil::pauli_y());
    CHECK(pauli.lhs == doctest::Approx(pauli.rhs).epsilon(1e-14));
    CHECK(pauli.pass);

    const double s = 1.0 / std::sqrt(2.0);
    const auto normalized = check_bw_inequality(s * testutil::pauli_x(), s * testutil::pauli_y());
    CHECK(normalized.lhs == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
    CHECK(normalized.rhs == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));

    CHECK_THROWS_AS(check_bw_inequality(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                    DimensionError);
}

TEST_CASE("commutator norm bound holds on random pairs, ratio never above 1") {
    SplitMix64 rng(51);
    double max_ratio = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const Matrix a = random_ginibre(rng, d, d);
        const Matrix b = random_ginibre(rng, d, d);
        const auto step = check_bw_inequality(a, b);
        CHECK(step.pass);
        if (step.rhs > 0.0) max_ratio = std::max(max_ratio, step.lhs / step.rhs);
    }
    CHECK(max_ratio <= 1.0 + 1e-12);
}

TEST_CASE("rate identity on dephasing: both decaying modes give lhs = 2") {
    const auto g = testutil::dephasing_generator();
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    const auto steps = check_rate_identity(g, spec);
    REQUIRE(steps.size() == 3);
    int decaying = 0;
    for (const auto& step : steps) {
        CHECK(step.pass);
        if (step.rhs > 1.0) {
            ++decaying;
            CHECK(step.lhs == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(step.rhs == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    CHECK(decaying == 2);
}

TEST_CASE("rate identity on a unitary-only generator: empty jump set, zero rates") {
    const auto g = make_generator(testutil::pauli_z(), Matrix::Zero(3, 3));
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    for (const auto& step : check_rate_identity(g, spec)) {
        CHECK(step.lhs == 0.0);
        CHECK(step.rhs <= 1e-12);
        CHECK(step.pass);
    }
}

TEST_CASE("rate identity holds on every mode of random generators") {
    SplitMix64 rng(52);
    for (int d = 2; d <= 3; ++d) {
        for (int trial = 0; trial < 10; ++trial) {
            CAPTURE(d);
            const auto g = testutil::random_generator(rng, d);
            const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
            const auto steps = check_rate_identity(g, spec);
            CHECK(steps.size() == static_cast<std::size_t>(d * d - 1));
            for (const auto& step : steps) CHECK(step.pass);
        }
    }
}

TEST_CASE("chain bound on dephasing: Schwarz step saturates at 2") {
    const auto g = testutil::dephasing_generator();
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    const auto steps = check_chain_bound(g, spec);
    REQUIRE(steps.size() == 9);  // three steps per mode
    const double two_sqrt2 = 2.0 * std::numbers::sqrt2;
    for (const auto& step : steps) {
        CHECK(step.pass);
        if (step.step.find("schwarz_bound") == 0 && step.lhs > 1.0) {
            CHECK(step.lhs == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(step.rhs == doctest::Approx(2.0).epsilon(1e-12));
        }
        if (step.step.find("submultiplicative_bound") == 0 && step.lhs > 1.0) {
            CHECK(step.rhs == doctest::Approx(two_sqrt2).epsilon(1e-12));
        }
        if (step.step.find("commutator_norm_bound") == 0) {
            CHECK(step.rhs == doctest::Approx(two_sqrt2).epsilon(1e-12));
        }
    }
}

TEST_CASE("chain bound holds on random generators across dimensions") {
    SplitMix64 rng(53);
    for (int d = 2; d <= 5; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            CAPTURE(d);
            const auto g = testutil::random_generator(rng, d);
            const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
            for (const auto& step : check_chain_bound(g, spec)) CHECK(step.pass);
        }
    }
}

TEST_CASE("zero dissipator gives an all-zero chain") {
    const auto g = make_generator(Matrix::Zero(2, 2), Matrix::Zero(3, 3));
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    for (const auto& step : check_chain_bound(g, spec)) {
        CHECK(step.lhs <= 1e-12);
        CHECK(step.pass);
    }
}

TEST_CASE("checked expressions are invariant under the eigenvector phase") {
    SplitMix64 rng(54);
    const auto g = testutil::random_generator(rng, 2);
    GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    const auto reference = check_rate_identity(g, spec);
    const auto reference_chain = check_chain_bound(g, spec);

    const Complex phase = std::exp(Complex(0.0, 1.234));
    for (auto& u : spec.eigen_operators) u *= phase;
    const auto rotated = check_rate_identity(g, spec);
    const auto rotated_chain = check_chain_bound(g, spec);

    REQUIRE(rotated.size() == reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        CHECK(rotated[i].lhs == doctest::Approx(reference[i].lhs).epsilon(1e-12));
    }
    REQUIRE(rotated_chain.size() == reference_chain.size());
    for (std::size_t i = 0; i < reference_chain.size(); ++i) {
        CHECK(rotated_chain[i].lhs == doctest::Approx(reference_chain[i].lhs).epsilon(1e-12));
        CHECK(rotated_chain[i].rhs == doctest::Approx(reference_chain[i].rhs).epsilon(1e-12));
    }
}

TEST_CASE("defective spectra are refused") {
    const auto g = testutil::dephasing_generator();
    GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    spec.defective = true;
    CHECK_THROWS_AS(check_rate_identity(g, spec), DefectiveSpectrumError);
    CHECK_THROWS_AS(check_chain_bound(g, spec), DefectiveSpectrumError);
}

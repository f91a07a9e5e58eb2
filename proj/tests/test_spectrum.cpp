#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "gkls/spectrum.hpp"
#include "gkls/rng.hpp"
#include "testutil.hpp"

using namespace gkls;

namespace {

std::vector<Complex> sorted_eigenvalues(Vector v) {
    std::vector<Complex> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace

TEST_CASE("dephasing spectrum is {0, 0, -1, -1} with rates (1, 1, 0)") {
    const auto g = testutil::dephasing_generator();
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));

    const auto eigs = sorted_eigenvalues(spec.eigenvalues);
    CHECK(std::abs(eigs[0] - Complex(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(eigs[1] - Complex(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(eigs[2]) <= 1e-12);
    CHECK(std::abs(eigs[3]) <= 1e-12);

    // the designated zero mode is a stationary direction, not the conserved
    // traceless one
    const Matrix& u0 = spec.eigen_operators[static_cast<std::size_t>(spec.zero_mode_index)];
    CHECK(std::abs(u0.trace()) > 0.5);
    CHECK_FALSE(spec.defective);

    const RelaxationProfile profile = relaxation_profile(spec);
    REQUIRE(profile.rates.size() == 3);
    CHECK(profile.rates(0) == doctest::Approx(1.0));
    CHECK(profile.rates(1) == doctest::Approx(1.0));
    CHECK(profile.rates(2) == doctest::Approx(0.0));
    CHECK(profile.times[0] == doctest::Approx(1.0));
    CHECK(profile.times[1] == doctest::Approx(1.0));
    CHECK(std::isinf(profile.times[2]));
    CHECK(profile.rate_sum == doctest::Approx(2.0));
}

TEST_CASE("pure precession spectrum is {0, 0, +i, -i}") {
    const auto g = make_generator(0.5 * testutil::pauli_z(), Matrix::Zero(3, 3));
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    const auto eigs = sorted_eigenvalues(spec.eigenvalues);
    CHECK(std::abs(eigs[0] - Complex(0.0, -1.0)) <= 1e-12);
    CHECK(std::abs(eigs[1]) <= 1e-12);
    CHECK(std::abs(eigs[2]) <= 1e-12);
    CHECK(std::abs(eigs[3] - Complex(0.0, 1.0)) <= 1e-12);

    // unitary generator: every relaxation rate is zero, every time infinite
    const RelaxationProfile profile = relaxation_profile(spec);
    CHECK(profile.rates.cwiseAbs().maxCoeff() <= 1e-12);
    for (const double t : profile.times) CHECK(std::isinf(t));
}

TEST_CASE("null generator spectrum is all zeros") {
    const auto g = make_generator(Matrix::Zero(2, 2), Matrix::Zero(3, 3));
    const GeneratorSpectrum spec = compute_spectrum(to_superoperator(g));
    CHECK(spec.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
    CHECK(relaxation_profile(spec).rate_sum == 0.0);
}

TEST_CASE("depolarizing rates are isotropic and sum to d Tr C") {
    const auto g = testutil::depolarizing_generator();
    const RelaxationProfile profile = relaxation_profile(compute_spectrum(to_superoperator(g)));
    REQUIRE(profile.rates.size() == 3);
    CHECK(profile.rate_sum == doctest::Approx(2.0 * g.kossakowski_trace()).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) CHECK(profile.rates(i) == doctest::Approx(1.0));
}

TEST_CASE("structure report on fixed spectra") {
    const auto dephasing = testutil::dephasing_generator();
    const auto report =
        verify_spectral_structure(compute_spectrum(to_superoperator(dephasing)));
    CHECK(report.conjugate_paired);
    CHECK(report.max_pairing_residual <= 1e-12);
    CHECK(report.trace_residual <= 1e-12);

    const auto precession = make_generator(0.5 * testutil::pauli_z(), Matrix::Zero(3, 3));
    const auto report2 =
        verify_spectral_structure(compute_spectrum(to_superoperator(precession)));
    CHECK(report2.conjugate_paired);  // the +i/-i pair matches
    CHECK(report2.max_nonzero_real_part <= 1e-12);
}

TEST_CASE("random generators: structure, zero mode, steady state") {
    SplitMix64 rng(31);
    for (int d = 2; d <= 4; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            CAPTURE(d);
            CAPTURE(trial);
            const auto g = testutil::random_generator(rng, d);
            const Superoperator s = to_superoperator(g);
            const GeneratorSpectrum spec = compute_spectrum(s);

            const auto report = verify_spectral_structure(spec);
            CHECK(report.conjugate_paired);
            CHECK(report.max_pairing_residual <= 1e-9);
            CHECK(report.max_nonzero_real_part <= spec.zero_tolerance);
            CHECK(report.trace_residual <= 1e-10);

            for (const Matrix& u : spec.eigen_operators) {
                CHECK(hs_norm(u) == doctest::Approx(1.0).epsilon(1e-10));
            }

            int near_zero = 0;
            for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
                if (std::abs(spec.eigenvalues(i)) <= spec.zero_tolerance) ++near_zero;
            CHECK(near_zero == 1);

            const Matrix rho_ss = steady_state(spec);
            CHECK(std::abs(rho_ss.trace() - Complex(1.0, 0.0)) <= 1e-10);
            CHECK(apply_generator(g, rho_ss).norm() <= 1e-8);

            const RelaxationProfile profile = relaxation_profile(spec);
            const double expected = d * g.kossakowski_trace();
            CHECK(profile.rate_sum == doctest::Approx(expected).epsilon(1e-8));
            CHECK(std::is_sorted(profile.rates.data(),
                                 profile.rates.data() + profile.rates.size(),
                                 std::greater<double>()));
        }
    }
}

TEST_CASE("spectrum agrees with the basis-expansion representation") {
    SplitMix64 rng(32);
    for (int d = 2; d <= 3; ++d) {
        CAPTURE(d);
        const auto g = testutil::random_generator(rng, d);
        const auto vectorized = sorted_eigenvalues(
            compute_spectrum(to_superoperator(g)).eigenvalues);

        Eigen::ComplexEigenSolver<Matrix> solver(testutil::basis_expansion_matrix(g), false);
        const auto expanded = sorted_eigenvalues(solver.eigenvalues());
        REQUIRE(vectorized.size() == expanded.size());

        // multiset comparison: greedy nearest matching, since members of a
        // conjugate pair may sort in either order after last-ulp noise
        std::vector<bool> used(expanded.size(), false);
        for (const Complex& value : vectorized) {
            std::size_t best = expanded.size();
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < expanded.size(); ++j) {
                if (used[j]) continue;
                const double dist = std::abs(value - expanded[j]);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = j;
                }
            }
            REQUIRE(best < expanded.size());
            used[best] = true;
            CHECK(best_dist <= 1e-8);
        }
    }
}

TEST_CASE("superoperator without a zero eigenvalue is rejected") {
    Superoperator s{2, Matrix::Identity(4, 4)};
    CHECK_THROWS_AS(compute_spectrum(s), NotTracePreservingError);
}

TEST_CASE("larger dimensions stay within the contracts") {
    // full pipeline once at d = 8 (superoperator 64 x 64)
    SplitMix64 rng(33);
    const auto g = testutil::random_generator(rng, 8);
    const Superoperator s = to_superoperator(g);
    const GeneratorSpectrum spec = compute_spectrum(s);
    const RelaxationProfile profile = relaxation_profile(spec);
    CHECK(profile.rates.size() == 63);
    CHECK(profile.rate_sum ==
          doctest::Approx(8.0 * g.kossakowski_trace()).epsilon(1e-8));
    CHECK(verify_spectral_structure(spec).conjugate_paired);

    int near_zero = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
        if (std::abs(spec.eigenvalues(i)) <= spec.zero_tolerance) ++near_zero;
    CHECK(near_zero == 1);

    // basis construction at the top of the working range
    const OperatorBasis big = build_gellmann_basis(16);
    CHECK(big.size() == 256);
    CHECK((gram_matrix(big) - Matrix::Identity(256, 256)).cwiseAbs().maxCoeff() <= 1e-12);
}

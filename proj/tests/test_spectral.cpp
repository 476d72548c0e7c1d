#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nullctrl/spectral.hpp"
#include "test_support.hpp"

using namespace nullctrl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("heat preset: lambda_j = -j^2 pi^2") {
    const Spectrum s = heat_spectrum(3);
    REQUIRE(s.size() == 3);
    CHECK(s.eigenvalues[0] == cxd{-kPi * kPi, 0.0});
    CHECK(s.eigenvalues[1] == cxd{-4.0 * kPi * kPi, 0.0});
    CHECK(s.eigenvalues[2] == cxd{-9.0 * kPi * kPi, 0.0});
    CHECK(s.conjugate_closed);
    CHECK(s.re_lower_bound == -9.0 * kPi * kPi);
}

TEST_CASE("explicit singleton at zero") {
    const Spectrum s = explicit_spectrum({cxd{0.0, 0.0}});
    CHECK(s.size() == 1);
    CHECK(s.eigenvalues[0] == cxd{0.0, 0.0});
}

TEST_CASE("strip perturbation: mu_k = ik + 1/k exactly") {
    const Spectrum s = strip_perturbed_spectrum(4);
    const Spectrum ladder = imaginary_ladder_spectrum(4);
    for (std::size_t k = 1; k <= 4; ++k) {
        const cxd dev = s.eigenvalues[k - 1] - ladder.eigenvalues[k - 1];
        CHECK(std::abs(dev - cxd{1.0 / static_cast<double>(k), 0.0}) == 0.0);
        // |mu_k - lambda_k| * k = 1 exactly
        CHECK(std::abs(dev) * static_cast<double>(k) == 1.0);
    }
}

TEST_CASE("duplicate eigenvalues rejected with the offending pair") {
    CHECK_THROWS_WITH_AS(explicit_spectrum({cxd{1.0, 0.0}, cxd{1.0, 0.0}}),
                         doctest::Contains("positions 1 and 2"), std::invalid_argument);
    CHECK_THROWS_AS(heat_spectrum(0), std::invalid_argument);
    CHECK_THROWS_AS(imaginary_ladder_spectrum(0), std::invalid_argument);
}

TEST_CASE("validate_spectrum reports ordering, distinctness and beta") {
    SUBCASE("heat(5)") {
        const SpectrumValidation v = validate_spectrum(heat_spectrum(5));
        CHECK(v.distinct);
        CHECK(v.ordered_by_modulus);
        CHECK(v.re_min == -25.0 * kPi * kPi);
        CHECK(v.re_bound_satisfied);
    }
    SUBCASE("duplicate pair flagged") {
        Spectrum s;
        s.eigenvalues = {cxd{1.0, 0.0}, cxd{1.0, 0.0}};
        const SpectrumValidation v = validate_spectrum(s);
        CHECK_FALSE(v.distinct);
        REQUIRE(v.duplicate_pair.has_value());
        CHECK(v.duplicate_pair->first == 0);
        CHECK(v.duplicate_pair->second == 1);
    }
    SUBCASE("conjugate pair is closed") {
        const SpectrumValidation v =
            validate_spectrum(explicit_spectrum({cxd{0.0, 1.0}, cxd{0.0, -1.0}}));
        CHECK(v.conjugate_closed);
    }
    SUBCASE("lone imaginary eigenvalue is not closed") {
        const SpectrumValidation v = validate_spectrum(explicit_spectrum({cxd{0.0, 1.0}}));
        CHECK_FALSE(v.conjugate_closed);
    }
}

TEST_CASE("every preset validates over random parameters") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> order(1, 24);
    for (int trial = 0; trial < 50; ++trial) {
        CHECK(validate_spectrum(heat_spectrum(order(rng))).ok());
        CHECK(validate_spectrum(imaginary_ladder_spectrum(order(rng))).ok());
        CHECK(validate_spectrum(strip_perturbed_spectrum(order(rng))).ok());
    }
}

TEST_CASE("re_min equals the exact minimum for explicit lists") {
    const Spectrum s = explicit_spectrum({cxd{0.5, 1.0}, cxd{-2.0, 0.5}, cxd{3.0, 0.0}});
    const SpectrumValidation v = validate_spectrum(s);
    CHECK(v.re_min == -2.0);
}

TEST_CASE("exponential_family basics") {
    SUBCASE("constant function for lambda = 0, b = 1") {
        const Spectrum s = explicit_spectrum({cxd{0.0, 0.0}});
        InputVector b{{cxd{1.0, 0.0}}};
        const ExponentialFamily fam = exponential_family(s, b, 1.0);
        CHECK(fam.element(0, 0.0) == cxd{1.0, 0.0});
        CHECK(fam.element(0, 0.7) == cxd{1.0, 0.0});
    }
    SUBCASE("scaling: {-1} with b = 2 gives 2 e^t") {
        const Spectrum s = explicit_spectrum({cxd{-1.0, 0.0}});
        InputVector b{{cxd{2.0, 0.0}}};
        const ExponentialFamily fam = exponential_family(s, b, 1.0);
        CHECK(fam.element(0, 1.0).real() == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-14));
    }
    SUBCASE("heat(2) kernels grow like e^{j^2 pi^2 t}") {
        InputVector b{{cxd{1.0, 0.0}, cxd{1.0, 0.0}}};
        const ExponentialFamily fam = exponential_family(heat_spectrum(2), b, 0.1);
        CHECK(fam.element(0, 0.1).real() ==
              doctest::Approx(std::exp(kPi * kPi * 0.1)).epsilon(1e-13));
        CHECK(fam.element(1, 0.1).real() ==
              doctest::Approx(std::exp(4.0 * kPi * kPi * 0.1)).epsilon(1e-13));
    }
    SUBCASE("size is the shorter of spectrum and input") {
        InputVector b{{cxd{1.0, 0.0}}};
        const ExponentialFamily fam = exponential_family(heat_spectrum(3), b, 1.0);
        CHECK(fam.size() == 1);
    }
    SUBCASE("rejects nonpositive horizon") {
        InputVector b{{cxd{1.0, 0.0}}};
        CHECK_THROWS_AS(exponential_family(heat_spectrum(1), b, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(exponential_family(heat_spectrum(1), b, -1.0), std::invalid_argument);
    }
}

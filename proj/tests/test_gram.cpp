#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nullctrl/gram.hpp"
#include "test_support.hpp"

using namespace nullctrl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("phi closed forms") {
    // phi(s, L) = integral of e^{-s t} over [0, L].
    CHECK(phi(cxd{0.0, 0.0}, 3.0) == cxd{3.0, 0.0});
    CHECK(phi(cxd{2.0, 0.0}, 1.0).real() ==
          doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-15));
    CHECK(phi(cxd{2.0, 0.0}, 1.0).imag() == 0.0);
    // Full period of e^{-i pi t} over [0, 2] integrates to zero.
    CHECK(std::abs(phi(cxd{0.0, kPi}, 2.0)) < 1e-15);
}

TEST_CASE("phi series branch is continuous with the exact formula") {
    // Straddle the |z| = 1e-4 switch and compare against quadrature.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mag(1e-6, 1e-3);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = mag(rng);
        const double a = ang(rng);
        const cxd s{r * std::cos(a), r * std::sin(a)};
        const double horizon = 1.0;
        // Quadrature oracle via a one-element family with b = 1 against the
        // constant function: integral of e^{-s t}. Use Simpson on 2048 cells.
        cxd quad{0.0, 0.0};
        const int cells = 2048;
        const double h = horizon / cells;
        for (int i = 0; i < cells; ++i) {
            const double t0 = i * h;
            quad += (h / 6.0) * (std::exp(-s * t0) + 4.0 * std::exp(-s * (t0 + 0.5 * h)) +
                                 std::exp(-s * (t0 + h)));
        }
        // Tolerance is dominated by round-off accumulation in the oracle sum.
        CHECK(std::abs(phi(s, horizon) - quad) < 5e-12);
    }
}

TEST_CASE("gram matrix matches the quadrature oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        const std::size_t n = fam.size();
        const GramMatrix g = gram_matrix(fam, n);
        const GramMatrix oracle = gram_quadrature_oracle(fam, n, 256);
        double scale = std::max(1.0, g.entries.frobenius_norm());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                CHECK(std::abs(g.entries.at(j, k) - oracle.entries.at(j, k)) < 1e-10 * scale);
    }
}

TEST_CASE("imaginary ladder over a full period is orthogonal: G = 2 pi I") {
    InputVector b;
    b.coefficients.assign(6, cxd{1.0, 0.0});
    const ExponentialFamily fam = exponential_family(imaginary_ladder_spectrum(6), b, 2.0 * kPi);
    const GramMatrix g = gram_matrix(fam, 6);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) {
            const cxd expect = j == k ? cxd{2.0 * kPi, 0.0} : cxd{0.0, 0.0};
            CHECK(std::abs(g.entries.at(j, k) - expect) < 1e-13);
        }
}

TEST_CASE("zero input coefficient zeroes the corresponding row and column") {
    InputVector b{{cxd{1.0, 0.0}, cxd{0.0, 0.0}, cxd{1.0, 0.0}}};
    const ExponentialFamily fam = exponential_family(heat_spectrum(3), b, 0.5);
    const GramMatrix g = gram_matrix(fam, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(g.entries.at(1, k) == cxd{0.0, 0.0});
        CHECK(g.entries.at(k, 1) == cxd{0.0, 0.0});
    }
}

TEST_CASE("gram matrix is exactly Hermitian with a real diagonal") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        const GramMatrix g = gram_matrix(fam, fam.size());
        CHECK(g.entries.hermitian_defect() == 0.0);
        for (std::size_t j = 0; j < g.order; ++j) {
            CHECK(g.entries.at(j, j).imag() == 0.0);
            CHECK(g.entries.at(j, j).real() >= 0.0);
        }
    }
}

TEST_CASE("minimum eigenvalue obeys the Rayleigh bound") {
    // gamma_n <= min_j ||x_j||^2 (unit-vector Rayleigh quotient).
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        const GramMatrix g = gram_matrix(fam, fam.size());
        const MinEig e = hermitian_min_eig(g);
        double min_diag = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < g.order; ++j)
            min_diag = std::min(min_diag, g.entries.at(j, j).real());
        CHECK(e.value <= min_diag + 1e-10 * std::max(1.0, min_diag));
    }
}

TEST_CASE("quadratic form c* G c equals the squared combination norm") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        const std::size_t n = fam.size();
        const GramMatrix g = gram_matrix(fam, n);
        const std::vector<cxd> c = nullctrl::testing::random_complex_vector(rng, n);
        cxd quad{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                quad += std::conj(c[j]) * g.entries.at(j, k) * c[k];
        // Oracle: panel quadrature of |sum_j c_j x_j(t)|^2.
        const GramMatrix oracle = gram_quadrature_oracle(fam, n, 256);
        cxd quad_o{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                quad_o += std::conj(c[j]) * oracle.entries.at(j, k) * c[k];
        CHECK(quad.real() >= -1e-10 * std::abs(quad.real()));
        CHECK(std::abs(quad - quad_o) < 1e-8 * std::max(1.0, std::abs(quad)));
    }
}

TEST_CASE("gamma sequence is nonincreasing in the truncation order") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        const GammaSequence seq = gamma_sequence(fam, fam.size());
        REQUIRE(seq.size() == fam.size());
        for (std::size_t i = 1; i < seq.size(); ++i)
            CHECK(seq.values[i] <= seq.values[i - 1] + seq.eig_tolerance);
    }
}

TEST_CASE("precision floor flag fires on near-dependent families") {
    // Two almost-identical kernels give a tiny gamma relative to ||G||.
    const Spectrum s = explicit_spectrum({cxd{-1.0, 0.0}, cxd{-1.0 + 1e-9, 0.0}});
    InputVector b{{cxd{1.0, 0.0}, cxd{1.0, 0.0}}};
    const ExponentialFamily fam = exponential_family(s, b, 1.0);
    const MinEig e = hermitian_min_eig(gram_matrix(fam, 2));
    CHECK(e.below_precision_floor);
}

TEST_CASE("gram_to_csv emits order x (2 order) numeric cells") {
    InputVector b{{cxd{1.0, 0.0}, cxd{1.0, 0.0}}};
    const ExponentialFamily fam = exponential_family(heat_spectrum(2), b, 0.1);
    const std::string csv = gram_to_csv(gram_matrix(fam, 2));
    std::size_t lines = 0, commas = 0;
    for (char c : csv) {
        if (c == '\n') ++lines;
        if (c == ',') ++commas;
    }
    CHECK(lines == 2);
    CHECK(commas == 2 * 3);  // 4 cells per row -> 3 commas, times 2 rows
}

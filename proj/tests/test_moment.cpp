#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nullctrl/errors.hpp"
#include "nullctrl/moment.hpp"
#include "test_support.hpp"

using namespace nullctrl;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ExponentialFamily ladder_family(std::size_t n) {
    InputVector b;
    b.coefficients.assign(n, cxd{1.0, 0.0});
    return exponential_family(imaginary_ladder_spectrum(n), b, kTwoPi);
}
}  // namespace

TEST_CASE("singleton moment problem has the closed-form solution") {
    // lambda = -1, b = 1, L = 1: the kernel is e^t, so
    // G = integral_0^1 e^{2t} dt = (e^2 - 1) / 2 and alpha = c / G.
    const Spectrum s = explicit_spectrum({cxd{-1.0, 0.0}});
    InputVector b{{cxd{1.0, 0.0}}};
    const ExponentialFamily fam = exponential_family(s, b, 1.0);
    MomentTargets c;
    c.values = {cxd{1.0, 0.0}};
    const MomentSolution sol = solve_truncated_moment(fam, c, 1);
    const double g11 = (std::exp(2.0) - 1.0) / 2.0;
    CHECK(std::abs(sol.control.coefficients[0] - cxd{1.0 / g11, 0.0}) < 1e-14);
    CHECK(sol.gamma == doctest::Approx(g11).epsilon(1e-14));
    CHECK(sol.residual < 1e-15);
}

TEST_CASE("zero targets give the zero control") {
    std::mt19937_64 rng(53);
    ExponentialFamily fam = nullctrl::testing::random_family(rng);
    while (!nullctrl::testing::well_conditioned(fam))
        fam = nullctrl::testing::random_family(rng);
    MomentTargets c;
    c.values.assign(fam.size(), cxd{0.0, 0.0});
    const MomentSolution sol = solve_truncated_moment(fam, c, fam.size());
    for (const cxd& a : sol.control.coefficients) CHECK(std::abs(a) < 1e-14);
    CHECK(sol.control.norm() < 1e-12);
}

TEST_CASE("orthogonal ladder: first unit target selects the first kernel") {
    const ExponentialFamily fam = ladder_family(4);
    MomentTargets c;
    c.values = {cxd{kTwoPi, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 0.0}};
    const MomentSolution sol = solve_truncated_moment(fam, c, 4);
    CHECK(std::abs(sol.control.coefficients[0] - cxd{1.0, 0.0}) < 1e-13);
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(sol.control.coefficients[k]) < 1e-13);
    // u(t) = conj(e^{-i t}) = e^{i t}, so |u| = 1 and ||u||^2 = 2 pi.
    CHECK(std::abs(sol.control.evaluate(1.0) - std::exp(cxd{0.0, 1.0})) < 1e-13);
    CHECK(sol.control.norm() == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-12));
}

TEST_CASE("control vanishes outside the active window") {
    const ExponentialFamily fam = ladder_family(2);
    MomentTargets c;
    c.values = {cxd{1.0, 0.0}, cxd{1.0, 0.0}};
    const MomentSolution sol = solve_truncated_moment(fam, c, 2);
    CHECK(sol.control.evaluate(-0.1) == cxd{0.0, 0.0});
    CHECK(sol.control.evaluate(kTwoPi + 0.1) == cxd{0.0, 0.0});
}

TEST_CASE("verify_moments reproduces the targets for solved systems") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 25; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        MomentTargets c;
        c.values = nullctrl::testing::random_complex_vector(rng, fam.size());
        if (!nullctrl::testing::well_conditioned(fam)) continue;
        const MomentSolution sol = solve_truncated_moment(fam, c, fam.size());
        const std::vector<double> res = verify_moments(fam, sol.control, c);
        const double scale = std::max(1.0, vector_norm(c.values));
        for (double r : res) CHECK(r <= 1e-9 * scale);
    }
}

TEST_CASE("verify_moments flags a wrong control") {
    const ExponentialFamily fam = ladder_family(2);
    MomentTargets c;
    c.values = {cxd{1.0, 0.0}, cxd{0.0, 0.0}};
    ControlSignal u;
    u.family = fam;
    u.coefficients = {cxd{0.0, 0.0}, cxd{0.0, 0.0}};  // zero control, nonzero target
    const std::vector<double> res = verify_moments(fam, u, c);
    CHECK(res[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res[1] == 0.0);
}

TEST_CASE("solvability profile") {
    SUBCASE("orthogonal ladder with square-summable targets stays bounded") {
        const ExponentialFamily fam = ladder_family(8);
        MomentTargets c;
        for (std::size_t k = 1; k <= 8; ++k)
            c.values.push_back(cxd{1.0 / static_cast<double>(k * k), 0.0});
        const SolvabilityProfile prof = solvability_diagnostic(fam, c, 8);
        CHECK(prof.evidence == "bounded");
        CHECK(prof.resolved_order == 8);
        // Orthogonality: ||u_n||^2 = sum_{k<=n} |c_k|^2 / (2 pi).
        double acc = 0.0;
        for (std::size_t k = 1; k <= 8; ++k) {
            acc += std::norm(c.values[k - 1]) / kTwoPi;
            CHECK(prof.norms[k - 1] == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
        }
    }
    SUBCASE("norms are nondecreasing in the section order") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 15; ++trial) {
            const ExponentialFamily fam = nullctrl::testing::random_family(rng);
            MomentTargets c;
            c.values = nullctrl::testing::random_complex_vector(rng, fam.size());
            const SolvabilityProfile prof = solvability_diagnostic(fam, c, fam.size());
            for (std::size_t i = 1; i < prof.resolved_order; ++i)
                CHECK(prof.norms[i] >= prof.norms[i - 1] * (1.0 - 1e-9));
        }
    }
    SUBCASE("near-dependent section truncates the profile") {
        const Spectrum s =
            explicit_spectrum({cxd{-1.0, 0.0}, cxd{-2.0, 0.0}, cxd{-2.0 + 1e-12, 0.0}});
        InputVector b{{cxd{1.0, 0.0}, cxd{1.0, 0.0}, cxd{1.0, 0.0}}};
        const ExponentialFamily fam = exponential_family(s, b, 1.0);
        MomentTargets c;
        c.values = {cxd{1.0, 0.0}, cxd{1.0, 0.0}, cxd{1.0, 0.0}};
        const SolvabilityProfile prof = solvability_diagnostic(fam, c, 3);
        CHECK(prof.truncated);
        CHECK(prof.resolved_order < 3);
        CHECK(prof.evidence == "truncated");
    }
}

TEST_CASE("biorthogonal family") {
    SUBCASE("moment integrals give the identity pattern") {
        InputVector b;
        b.coefficients.assign(3, cxd{1.0, 0.0});
        const ExponentialFamily fam = exponential_family(heat_spectrum(3), b, 0.1);
        const std::vector<ControlSignal> bio = build_biorthogonal(fam, 3);
        REQUIRE(bio.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) {
            MomentTargets unit;
            unit.values.assign(3, cxd{0.0, 0.0});
            unit.values[k] = cxd{1.0, 0.0};
            const std::vector<double> res = verify_moments(fam, bio[k], unit);
            for (double r : res) CHECK(r <= 1e-9);
        }
    }
    SUBCASE("ladder biorthogonal controls are (1 / 2 pi) e^{i k t}") {
        const ExponentialFamily fam = ladder_family(3);
        const std::vector<ControlSignal> bio = build_biorthogonal(fam, 3);
        for (std::size_t k = 0; k < 3; ++k) {
            const double t = 0.77;
            const cxd expect =
                std::exp(cxd{0.0, static_cast<double>(k + 1) * t}) / kTwoPi;
            CHECK(std::abs(bio[k].evaluate(t) - expect) < 1e-13);
        }
    }
}

TEST_CASE("minimum-norm duality: ||u_n||^2 = Re c* alpha") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const ExponentialFamily fam = nullctrl::testing::random_family(rng);
        MomentTargets c;
        c.values = nullctrl::testing::random_complex_vector(rng, fam.size());
        if (!nullctrl::testing::well_conditioned(fam)) continue;
        const MomentSolution sol = solve_truncated_moment(fam, c, fam.size());
        cxd dual{0.0, 0.0};
        for (std::size_t j = 0; j < fam.size(); ++j)
            dual += std::conj(c.values[j]) * sol.control.coefficients[j];
        const double n2 = sol.control.norm() * sol.control.norm();
        CHECK(std::abs(n2 - dual.real()) < 1e-8 * std::max(1.0, n2));
    }
}

TEST_CASE("order validation") {
    const ExponentialFamily fam = ladder_family(2);
    MomentTargets c;
    c.values = {cxd{1.0, 0.0}};
    CHECK_THROWS_AS(solve_truncated_moment(fam, c, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_truncated_moment(fam, c, 3), std::invalid_argument);
    CHECK_THROWS_AS(solve_truncated_moment(fam, c, 2), std::invalid_argument);  // c too short
}

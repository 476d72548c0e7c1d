#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nullctrl/linalg.hpp"

namespace nullctrl {

// How the eigenvalue sequence continues beyond the stored truncation.
// Drives the simulator's tail estimate.
enum class SpectrumKind {
    Explicit,        // the stored modes are the whole model
    Heat,            // lambda_j = -j^2 pi^2, Re -> -infinity
    ImaginaryLadder, // lambda_k = i k, Re bounded
    StripPerturbed,  // mu_k = i k + deviation(k), Re bounded
};

// Deviation rule d(k) = coefficient / k applied on top of a base spectrum.
struct DeviationRule {
    double coefficient = 1.0;
    cxd operator()(std::size_t k) const { return cxd{coefficient / static_cast<double>(k), 0.0}; }
};

struct Spectrum {
    std::vector<cxd> eigenvalues;          // ordered by non-decreasing |lambda|
    std::optional<double> re_lower_bound;  // beta with Re lambda_j >= beta
    bool conjugate_closed = false;
    SpectrumKind kind = SpectrumKind::Explicit;
    DeviationRule deviation;  // only meaningful for StripPerturbed

    std::size_t size() const { return eigenvalues.size(); }
};

struct InputVector {
    std::vector<cxd> coefficients;  // modal weights b_j
    std::size_t size() const { return coefficients.size(); }
};

// The functions t -> exp(-lambda_j t) * b_j on [0, horizon].
struct ExponentialFamily {
    Spectrum spectrum;
    InputVector input;
    double horizon = 0.0;

    std::size_t size() const;
    cxd element(std::size_t j, double t) const;  // j is 0-based
};

struct ControlProblem {
    Spectrum spectrum;
    InputVector input;
    std::vector<cxd> x0;     // modal coefficients of the initial state
    double t1 = 0.0;         // target time
    double settle_lag = 0.0; // T; controls act on [0, t1 - T]

    double control_horizon() const { return t1 - settle_lag; }
    ExponentialFamily family() const;
};

// Preset constructors (heat, imaginary ladder, strip perturbation of the
// ladder, or an explicit list). Throws std::invalid_argument on duplicate
// eigenvalues or nonpositive order.
Spectrum heat_spectrum(std::size_t n);
Spectrum imaginary_ladder_spectrum(std::size_t n);
Spectrum strip_perturbed_spectrum(std::size_t n, DeviationRule rule = {});
Spectrum explicit_spectrum(std::vector<cxd> eigenvalues);

struct SpectrumValidation {
    bool distinct = true;
    std::optional<std::pair<std::size_t, std::size_t>> duplicate_pair;  // 0-based
    bool ordered_by_modulus = true;
    double re_min = 0.0;
    bool re_bound_satisfied = true;  // vacuously true when no bound stored
    bool conjugate_closed = false;
    bool ok() const { return distinct && ordered_by_modulus && re_bound_satisfied; }
};

SpectrumValidation validate_spectrum(const Spectrum& s);

// Family over the first min(|s|, |b|) modes. Throws on empty spectrum or
// nonpositive horizon.
ExponentialFamily exponential_family(const Spectrum& s, const InputVector& b, double horizon);

std::string to_string(SpectrumKind k);

}  // namespace nullctrl

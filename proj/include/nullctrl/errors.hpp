#pragma once

#include <stdexcept>
#include <string>

namespace nullctrl {

// Gram matrix too close to singular for the requested operation.
// Carries the offending minimal eigenvalue so callers can report it.
struct IllConditionedError : std::runtime_error {
    double gamma;
    explicit IllConditionedError(double gamma_, const std::string& what_)
        : std::runtime_error(what_), gamma(gamma_) {}
};

// Input matrix fails the Hermitian symmetry check beyond tolerance.
struct NonHermitianError : std::invalid_argument {
    double defect;
    explicit NonHermitianError(double defect_, const std::string& what_)
        : std::invalid_argument(what_), defect(defect_) {}
};

// Eigensolver hit its sweep cap; carries the residual off-diagonal mass.
struct ConvergenceError : std::runtime_error {
    double offdiag_mass;
    explicit ConvergenceError(double mass_, const std::string& what_)
        : std::runtime_error(what_), offdiag_mass(mass_) {}
};

// A necessary condition of the synthesis problem is violated
// (e.g. some input coefficient b_j vanishes on a controlled mode).
struct NecessaryConditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Control could not be projected to a real-valued signal within tolerance.
struct NonRealControlError : std::runtime_error {
    double defect;
    explicit NonRealControlError(double defect_, const std::string& what_)
        : std::runtime_error(what_), defect(defect_) {}
};

}  // namespace nullctrl

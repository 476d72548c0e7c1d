#pragma once

#include "nullctrl/moment.hpp"
#include "nullctrl/spectral.hpp"

namespace nullctrl {

struct SynthesisResult {
    ControlSignal control;
    MomentTargets targets;
    double realness_defect = 0.0;  // max |Im u| on a sampling grid
    double gamma_used = 0.0;
    double solve_residual = 0.0;
    std::size_t order = 0;
};

// Targets of the null-control moment problem: c_j = -x0_j, so the
// solver constraint reproduces the variation-of-constants condition at t1.
MomentTargets moment_targets_from_state(const ControlProblem& p, std::size_t n);

// Solves the first n moment equations for the problem's initial state.
// Requires t1 > T, all b_j nonzero for j <= n, and a resolvable Gram
// section.
SynthesisResult synthesize_null_control(const ControlProblem& p, std::size_t n);

struct RealifiedControl {
    ControlSignal control;          // real_projection set
    double moment_residual = 0.0;   // max residual of the projected control
    double realness_defect = 0.0;
};

// Projects the synthesized control onto its real part when the problem
// data are conjugate-symmetric and the imaginary part is round-off.
// Throws NonRealControlError when realness_defect > tol.
RealifiedControl realify(const ControlProblem& p, const SynthesisResult& r, double tol);

}  // namespace nullctrl

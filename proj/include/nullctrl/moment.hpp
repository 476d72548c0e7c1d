#pragma once

#include <string>
#include <vector>

#include "nullctrl/gram.hpp"
#include "nullctrl/spectral.hpp"

namespace nullctrl {

struct MomentTargets {
    std::vector<cxd> values;  // c_j
    std::size_t order() const { return values.size(); }
};

// u(t) = sum_k alpha_k * conj(exp(-lambda_k t) b_k) on [0, horizon],
// identically zero afterwards. When real_projection is set the signal
// is Re u(t) (used after a realness check).
struct ControlSignal {
    std::vector<cxd> coefficients;  // alpha_k
    ExponentialFamily family;       // the first order() elements are used
    bool real_projection = false;

    double horizon() const { return family.horizon; }
    std::size_t order() const { return coefficients.size(); }
    cxd evaluate(double t) const;
    // L2 norm on [0, horizon] via the Gram quadratic form.
    double norm() const;
};

struct MomentSolution {
    ControlSignal control;
    double residual = 0.0;  // ||G alpha - c||_2 (compensated evaluation)
    double gamma = 0.0;     // min eigenvalue of the Gram section used
    int refinement_steps = 0;
};

// Minimum-L2-norm solution of the first n moment equations
// integral_0^L exp(-lambda_j t) b_j u(t) dt = c_j. The coefficients solve
// G alpha = c. Throws IllConditionedError when gamma_n sits below the
// precision floor.
MomentSolution solve_truncated_moment(const ExponentialFamily& fam, const MomentTargets& c,
                                      std::size_t n);

// Re-evaluates the moment integrals of u in closed form against targets;
// returns |integral - c_j| per mode.
std::vector<double> verify_moments(const ExponentialFamily& fam, const ControlSignal& u,
                                   const MomentTargets& c);

// Norm-growth profile of the minimum-norm sections, n = 1..N. A bounded
// profile is solvability evidence, a blow-up profile evidence against.
struct SolvabilityProfile {
    std::vector<double> norms;  // ||u_n||
    bool truncated = false;     // stopped early at an unresolvable section
    std::size_t resolved_order = 0;
    double growth_ratio = 0.0;  // ||u_N|| / ||u_{ceil(N/2)}||
    std::string evidence;       // "bounded" | "blow-up" | "truncated"
};

SolvabilityProfile solvability_diagnostic(const ExponentialFamily& fam,
                                          const MomentTargets& c, std::size_t max_order);

// Biorthogonal controls u_1..u_n with
// integral_0^L exp(-lambda_j t) b_j u_k(t) dt = delta_jk;
// coefficient vectors are the columns of the Gram inverse.
std::vector<ControlSignal> build_biorthogonal(const ExponentialFamily& fam, std::size_t n);

// JSON/CSV export of a control signal (schema used by the CLI).
std::string control_to_json(const ControlSignal& u);
std::string control_trace_csv(const ControlSignal& u, std::size_t samples);

}  // namespace nullctrl

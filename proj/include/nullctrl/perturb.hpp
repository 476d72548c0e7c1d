#pragma once

#include <string>
#include <vector>

#include "nullctrl/minimality.hpp"
#include "nullctrl/simulate.hpp"
#include "nullctrl/synthesis.hpp"

namespace nullctrl {

// Tight constant q_n in ||sum c_j (y_j - x_j)|| <= q_n ||sum c_j x_j||
// at truncation n: the square root of the largest generalized eigenvalue
// of (D_n, G_n), computed by Cholesky congruence plus the Hermitian
// eigensolver.
double deviation_ratio(const ExponentialFamily& reference, const ExponentialFamily& perturbed,
                       std::size_t n);

// Transferred strong-minimality constant alpha^2 (1 - q)^2.
// Throws std::domain_error when q >= 1.
double transfer_bound(double alpha_sq, double q);

// Truncated deviation mass
//   M(t2) ~ integral_0^t2 e^{2 gamma t} sum_{k<=K} |e^{d(k) t} - 1|^2 dt
// plus a remainder bound for k > K from |e^{dt} - 1| <= |d| t e^{|d| t}.
struct DeviationMass {
    double value = 0.0;      // truncated quadrature
    double remainder = 0.0;  // bound on the k > K tail
    double total() const { return value + remainder; }
};

DeviationMass strip_deviation_mass(double t2, double gamma_strip, const DeviationRule& rule,
                                   std::size_t truncation);

struct PerturbationReport {
    std::vector<double> q_values;  // q_1 .. q_n
    double q_final = 0.0;
    bool admissible = false;       // q_final < 1
    double reference_gamma = 0.0;  // alpha^2 = gamma_n of the reference family
    double transferred_gamma = 0.0;
    double perturbed_gamma_direct = 0.0;
    MinimalityVerdict reference_verdict = MinimalityVerdict::Unresolved;
    bool synthesis_attempted = false;
    VerificationReport verification;  // meaningful when synthesis_attempted
};

// Full deviation-transfer pipeline: q_n on the two families; when q_n < 1
// (or force is set) the perturbed problem is synthesized and verified.
PerturbationReport perturbed_controllability_check(const ControlProblem& reference,
                                                   const ControlProblem& perturbed,
                                                   std::size_t n, double tol,
                                                   bool force = false);

std::string perturbation_to_json(const PerturbationReport& rep);
std::string q_profile_csv(const PerturbationReport& rep);

}  // namespace nullctrl

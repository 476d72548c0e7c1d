#pragma once

#include <string>
#include <vector>

#include "nullctrl/moment.hpp"
#include "nullctrl/spectral.hpp"

namespace nullctrl {

// Modal mild solution x_j(t) = exp(lambda_j t) (x0_j + I_j(t)) where
// I_j(t) is the control convolution integral, frozen at its value at the
// control horizon once the control has vanished. Closed form via phi.
std::vector<cxd> modal_state(const ControlProblem& p, const ControlSignal& u, double t);

// Same quantity by composite quadrature of the convolution integral.
std::vector<cxd> quadrature_state_oracle(const ControlProblem& p, const ControlSignal& u,
                                         double t, std::size_t panels);

// How the eigenvalue sequence behaves beyond the stored truncation.
enum class TailStatus {
    Complete,      // explicit spectrum: the stored modes are the whole model
    Decaying,      // extrapolated tail decays (heat-type growth law)
    Inconclusive,  // Re lambda bounded below: the tail does not decay
};

std::string to_string(TailStatus s);

struct VerificationReport {
    std::vector<double> modal_residuals;  // |x_j(t1)|, j = 1..J
    std::size_t controlled_order = 0;
    std::size_t check_order = 0;
    double tail_bound = 0.0;
    TailStatus tail_status = TailStatus::Complete;
    double persistence_defect = 0.0;  // drift of the frozen flow after t1
    bool passed = false;
    double tolerance = 0.0;
    double x0_norm = 0.0;
};

// Evaluates the state at t1 on the first J modes, bounds the uncontrolled
// tail, and spot-checks the frozen flow at two times past t1.
// Requires J >= u.order() and J <= stored spectrum size.
VerificationReport verify_null_controllability(const ControlProblem& p, const ControlSignal& u,
                                               std::size_t check_order, double tol);

std::string report_to_json(const VerificationReport& rep);
// Modal trajectories on a uniform grid: t, j, Re x_j, Im x_j.
std::string modal_trace_csv(const ControlProblem& p, const ControlSignal& u,
                            std::size_t check_order, double t_max, std::size_t samples);

}  // namespace nullctrl

#include "nullctrl/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nullctrl/errors.hpp"

namespace nullctrl {

namespace {
constexpr std::size_t kDefectGridPoints = 513;

double sample_realness_defect(const ControlSignal& u) {
    double defect = 0.0;
    for (std::size_t i = 0; i < kDefectGridPoints; ++i) {
        const double t =
            u.horizon() * static_cast<double>(i) / static_cast<double>(kDefectGridPoints - 1);
        cxd v{0.0, 0.0};
        for (std::size_t k = 0; k < u.order(); ++k)
            v += u.coefficients[k] * std::conj(u.family.element(k, t));
        defect = std::max(defect, std::abs(v.imag()));
    }
    return defect;
}
}  // namespace

MomentTargets moment_targets_from_state(const ControlProblem& p, std::size_t n) {
    if (n > p.x0.size())
        throw std::invalid_argument("moment_targets_from_state: order exceeds x0 length");
    MomentTargets c;
    c.values.reserve(n);
    for (std::size_t j = 0; j < n; ++j) c.values.push_back(-p.x0[j]);
    return c;
}

SynthesisResult synthesize_null_control(const ControlProblem& p, std::size_t n) {
    if (!(p.t1 > p.settle_lag))
        throw std::invalid_argument("synthesize_null_control: requires t1 > T");
    if (n == 0 || n > p.spectrum.size() || n > p.input.size() || n > p.x0.size())
        throw std::invalid_argument("synthesize_null_control: order out of range");
    for (std::size_t j = 0; j < n; ++j)
        if (p.input.coefficients[j] == cxd{0.0, 0.0})
            throw NecessaryConditionError("synthesize_null_control: b_" + std::to_string(j + 1) +
                                          " = 0; mode " + std::to_string(j + 1) +
                                          " cannot be steered");

    const ExponentialFamily fam = p.family();
    SynthesisResult out;
    out.targets = moment_targets_from_state(p, n);
    out.order = n;

    const double x0_norm = vector_norm(out.targets.values);
    if (x0_norm == 0.0) {
        // Zero initial state: the zero control solves every section.
        out.control = ControlSignal{std::vector<cxd>(n, cxd{0.0, 0.0}), fam, false};
        const MinEig ge = hermitian_min_eig(gram_matrix(fam, n));
        out.gamma_used = ge.value;
        return out;
    }

    MomentSolution sol = solve_truncated_moment(fam, out.targets, n);
    out.control = std::move(sol.control);
    out.gamma_used = sol.gamma;
    out.solve_residual = sol.residual;
    out.realness_defect = sample_realness_defect(out.control);
    return out;
}

RealifiedControl realify(const ControlProblem& p, const SynthesisResult& r, double tol) {
    const std::size_t n = r.order;
    const auto& lam = p.spectrum.eigenvalues;
    const auto& b = p.input.coefficients;

    if (!p.spectrum.conjugate_closed)
        throw std::invalid_argument("realify: spectrum is not conjugate-closed");

    // Every controlled mode needs a conjugate partner with conjugate data.
    for (std::size_t j = 0; j < n; ++j) {
        const cxd target = std::conj(lam[j]);
        bool paired = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(lam[k] - target) <= 1e-12 * (1.0 + std::abs(target))) {
                const double scale = 1.0 + std::abs(b[j]) + std::abs(p.x0[j]);
                if (std::abs(b[k] - std::conj(b[j])) <= 1e-12 * scale &&
                    std::abs(p.x0[k] - std::conj(p.x0[j])) <= 1e-12 * scale)
                    paired = true;
                break;
            }
        }
        if (!paired)
            throw std::invalid_argument("realify: mode " + std::to_string(j + 1) +
                                        " has no conjugate partner with conjugate data");
    }

    if (r.realness_defect > tol)
        throw NonRealControlError(r.realness_defect,
                                  "realify: imaginary part exceeds tolerance");

    RealifiedControl out;
    out.control = r.control;
    out.control.real_projection = true;
    out.realness_defect = r.realness_defect;
    const std::vector<double> res = verify_moments(p.family(), out.control, r.targets);
    for (double v : res) out.moment_residual = std::max(out.moment_residual, v);
    return out;
}

}  // namespace nullctrl

#include "nullctrl/moment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nullctrl/errors.hpp"
#include "nullctrl/json_writer.hpp"

namespace nullctrl {

cxd ControlSignal::evaluate(double t) const {
    if (t < 0.0 || t > horizon()) return {0.0, 0.0};
    cxd u{0.0, 0.0};
    for (std::size_t k = 0; k < order(); ++k)
        u += coefficients[k] * std::conj(family.element(k, t));
    if (real_projection) return {u.real(), 0.0};
    return u;
}

double ControlSignal::norm() const {
    if (order() == 0) return 0.0;
    const GramMatrix g = gram_matrix(family, order());
    const auto& lam = family.spectrum.eigenvalues;
    const auto& b = family.input.coefficients;

    // ||u||^2 = alpha* G alpha (conjugate span shares the Gram matrix).
    double plain = 0.0;
    for (std::size_t j = 0; j < order(); ++j)
        for (std::size_t k = 0; k < order(); ++k)
            plain += (std::conj(coefficients[j]) * g.entries.at(j, k) * coefficients[k]).real();

    if (!real_projection) return std::sqrt(std::max(0.0, plain));

    // ||Re u||^2 = (||u||^2 + Re integral u(t)^2 dt) / 2.
    cxd usq{0.0, 0.0};
    for (std::size_t j = 0; j < order(); ++j)
        for (std::size_t k = 0; k < order(); ++k)
            usq += coefficients[j] * coefficients[k] * std::conj(b[j] * b[k]) *
                   phi(std::conj(lam[j] + lam[k]), family.horizon);
    return std::sqrt(std::max(0.0, 0.5 * (plain + usq.real())));
}

MomentSolution solve_truncated_moment(const ExponentialFamily& fam, const MomentTargets& c,
                                      std::size_t n) {
    if (n == 0 || n > fam.size())
        throw std::invalid_argument("solve_truncated_moment: invalid order");
    if (c.order() < n)
        throw std::invalid_argument("solve_truncated_moment: fewer targets than order");

    const GramMatrix g = gram_matrix(fam, n);
    const MinEig ge = hermitian_min_eig(g);
    if (ge.below_precision_floor || !(ge.value > 0.0))
        throw IllConditionedError(ge.value,
                                  "solve_truncated_moment: Gram section is numerically singular");

    std::vector<cxd> rhs(c.values.begin(), c.values.begin() + static_cast<long>(n));
    const RefinedSolve sol = solve_hpd_refined(g.entries, rhs);

    MomentSolution out;
    out.control = ControlSignal{sol.x, fam, false};
    out.residual = sol.residual_norm;
    out.gamma = ge.value;
    out.refinement_steps = sol.refinement_steps;
    return out;
}

std::vector<double> verify_moments(const ExponentialFamily& fam, const ControlSignal& u,
                                   const MomentTargets& c) {
    const std::size_t rows = std::min(fam.size(), c.order());
    const std::size_t nu = u.order();
    const auto& lam = fam.spectrum.eigenvalues;
    const auto& b = fam.input.coefficients;
    const auto& ulam = u.family.spectrum.eigenvalues;
    const auto& ub = u.family.input.coefficients;

    std::vector<double> r(rows);
    std::vector<cxd> row(nu);
    for (std::size_t j = 0; j < rows; ++j) {
        // integral f_j u = sum_k alpha_k b_j conj(b_k) phi(lambda_j + conj(mu_k), L)
        for (std::size_t k = 0; k < nu; ++k)
            row[k] = b[j] * std::conj(ub[k]) * phi(lam[j] + std::conj(ulam[k]), fam.horizon);
        cxd m = compensated_dot(row, u.coefficients);
        if (u.real_projection) {
            for (std::size_t k = 0; k < nu; ++k)
                row[k] = b[j] * ub[k] * phi(lam[j] + ulam[k], fam.horizon);
            std::vector<cxd> conj_alpha(nu);
            for (std::size_t k = 0; k < nu; ++k) conj_alpha[k] = std::conj(u.coefficients[k]);
            m = 0.5 * (m + compensated_dot(row, conj_alpha));
        }
        r[j] = std::abs(m - c.values[j]);
    }
    return r;
}

SolvabilityProfile solvability_diagnostic(const ExponentialFamily& fam,
                                          const MomentTargets& c, std::size_t max_order) {
    if (max_order == 0 || max_order > fam.size())
        throw std::invalid_argument("solvability_diagnostic: invalid max order");
    SolvabilityProfile prof;
    for (std::size_t n = 1; n <= max_order; ++n) {
        try {
            const MomentSolution s = solve_truncated_moment(fam, c, n);
            // ||u_n||^2 = c* G^{-1} c = c* alpha
            double nsq = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                nsq += (std::conj(c.values[j]) * s.control.coefficients[j]).real();
            prof.norms.push_back(std::sqrt(std::max(0.0, nsq)));
        } catch (const IllConditionedError&) {
            prof.truncated = true;
            break;
        }
    }
    prof.resolved_order = prof.norms.size();
    if (prof.resolved_order == 0) {
        prof.evidence = "truncated";
        return prof;
    }
    const std::size_t mid = (prof.resolved_order + 1) / 2;
    const double nm = prof.norms[mid - 1];
    prof.growth_ratio = nm > 0.0 ? prof.norms.back() / nm : 1.0;
    // Declared heuristic: ratio above 10 across the half-profile reads as blow-up.
    constexpr double kBlowupRatio = 10.0;
    if (prof.truncated)
        prof.evidence = "truncated";
    else
        prof.evidence = prof.growth_ratio > kBlowupRatio ? "blow-up" : "bounded";
    return prof;
}

std::vector<ControlSignal> build_biorthogonal(const ExponentialFamily& fam, std::size_t n) {
    if (n == 0 || n > fam.size())
        throw std::invalid_argument("build_biorthogonal: invalid order");
    const GramMatrix g = gram_matrix(fam, n);
    const MinEig ge = hermitian_min_eig(g);
    if (ge.below_precision_floor || !(ge.value > 0.0))
        throw IllConditionedError(ge.value, "build_biorthogonal: Gram matrix is singular");

    std::vector<ControlSignal> out;
    out.reserve(n);
    std::vector<cxd> ek(n, cxd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        ek.assign(n, cxd{0.0, 0.0});
        ek[k] = cxd{1.0, 0.0};
        const RefinedSolve sol = solve_hpd_refined(g.entries, ek);
        out.push_back(ControlSignal{sol.x, fam, false});
    }
    return out;
}

std::string control_to_json(const ControlSignal& u) {
    JsonWriter w;
    w.begin_object();
    w.key("horizon").value(u.horizon());
    w.key("real_projection").value(u.real_projection);
    w.key("terms").begin_array();
    for (std::size_t k = 0; k < u.order(); ++k) {
        w.begin_object();
        w.key("lambda").value(u.family.spectrum.eigenvalues[k]);
        w.key("b").value(u.family.input.coefficients[k]);
        w.key("alpha").value(u.coefficients[k]);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string control_trace_csv(const ControlSignal& u, std::size_t samples) {
    std::ostringstream os;
    os.precision(17);
    os << "t,re_u,im_u\n";
    const std::size_t m = std::max<std::size_t>(samples, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = u.horizon() * static_cast<double>(i) / static_cast<double>(m - 1);
        const cxd v = u.evaluate(t);
        os << t << ',' << v.real() << ',' << v.imag() << '\n';
    }
    return os.str();
}

}  // namespace nullctrl

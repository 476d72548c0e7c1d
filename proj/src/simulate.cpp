#include "nullctrl/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nullctrl/gram.hpp"
#include "nullctrl/json_writer.hpp"

namespace nullctrl {

namespace {

// Control convolution integral I_j(t) = integral_0^min(t,L) e^{-lambda_j s} b_j u(s) ds
// in closed form through phi.
cxd convolution_integral(const ControlProblem& p, const ControlSignal& u, std::size_t j,
                         double t) {
    const double upto = std::min(t, u.horizon());
    if (upto <= 0.0) return {0.0, 0.0};
    const cxd lam_j = p.spectrum.eigenvalues[j];
    const cxd b_j = p.input.coefficients[j];
    const auto& ulam = u.family.spectrum.eigenvalues;
    const auto& ub = u.family.input.coefficients;

    cxd acc{0.0, 0.0};
    for (std::size_t k = 0; k < u.order(); ++k)
        acc += u.coefficients[k] * std::conj(ub[k]) * phi(lam_j + std::conj(ulam[k]), upto);
    if (u.real_projection) {
        cxd conj_part{0.0, 0.0};
        for (std::size_t k = 0; k < u.order(); ++k)
            conj_part += std::conj(u.coefficients[k]) * ub[k] * phi(lam_j + ulam[k], upto);
        acc = 0.5 * (acc + conj_part);
    }
    return b_j * acc;
}

constexpr std::array<double, 4> kGlNodes = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168};
constexpr std::array<double, 4> kGlWeights = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

}  // namespace

std::vector<cxd> modal_state(const ControlProblem& p, const ControlSignal& u, double t) {
    if (t < 0.0) throw std::invalid_argument("modal_state: t must be >= 0");
    const std::size_t modes = std::min({p.spectrum.size(), p.input.size(), p.x0.size()});
    std::vector<cxd> x(modes);
    for (std::size_t j = 0; j < modes; ++j) {
        const cxd lam = p.spectrum.eigenvalues[j];
        x[j] = std::exp(lam * t) * (p.x0[j] + convolution_integral(p, u, j, t));
    }
    return x;
}

std::vector<cxd> quadrature_state_oracle(const ControlProblem& p, const ControlSignal& u,
                                         double t, std::size_t panels) {
    if (panels == 0) throw std::invalid_argument("quadrature_state_oracle: panels must be >= 1");
    const std::size_t modes = std::min({p.spectrum.size(), p.input.size(), p.x0.size()});
    std::vector<cxd> x(modes);
    const double upto = std::min(t, u.horizon());
    for (std::size_t j = 0; j < modes; ++j) {
        const cxd lam = p.spectrum.eigenvalues[j];
        const cxd b_j = p.input.coefficients[j];
        cxd integ{0.0, 0.0};
        if (upto > 0.0) {
            const double h = upto / static_cast<double>(panels);
            for (std::size_t pnl = 0; pnl < panels; ++pnl) {
                const double mid = (static_cast<double>(pnl) + 0.5) * h;
                const double half = 0.5 * h;
                for (std::size_t q = 0; q < 4; ++q) {
                    for (double sgn : {-1.0, 1.0}) {
                        const double s = mid + sgn * half * kGlNodes[q];
                        integ += kGlWeights[q] * half * std::exp(-lam * s) * b_j * u.evaluate(s);
                    }
                }
            }
        }
        x[j] = std::exp(lam * t) * (p.x0[j] + integ);
    }
    return x;
}

std::string to_string(TailStatus s) {
    switch (s) {
        case TailStatus::Complete: return "complete (no modes beyond the stored truncation)";
        case TailStatus::Decaying: return "decaying";
        case TailStatus::Inconclusive: return "not decaying - inconclusive";
    }
    return "unknown";
}

VerificationReport verify_null_controllability(const ControlProblem& p, const ControlSignal& u,
                                               std::size_t check_order, double tol) {
    const std::size_t modes = std::min({p.spectrum.size(), p.input.size(), p.x0.size()});
    if (check_order < u.order())
        throw std::invalid_argument(
            "verify_null_controllability: check order below controlled order");
    if (check_order > modes)
        throw std::invalid_argument(
            "verify_null_controllability: check order exceeds stored modes");

    VerificationReport rep;
    rep.controlled_order = u.order();
    rep.check_order = check_order;
    rep.tolerance = tol;
    rep.x0_norm = vector_norm(p.x0);

    const std::vector<cxd> x_t1 = modal_state(p, u, p.t1);
    rep.modal_residuals.resize(check_order);
    for (std::size_t j = 0; j < check_order; ++j) rep.modal_residuals[j] = std::abs(x_t1[j]);

    // Tail over the stored modes beyond J (closed-form bound, exact data).
    const double u_norm = u.norm();
    double max_b = 0.0;
    for (std::size_t j = 0; j < modes; ++j)
        max_b = std::max(max_b, std::abs(p.input.coefficients[j]));
    auto tail_term = [&](double re_lam, double x0_mag, double b_mag) {
        const double fnorm =
            b_mag * std::sqrt(std::max(0.0, phi(cxd{2.0 * re_lam, 0.0}, u.horizon()).real()));
        return std::exp(re_lam * p.t1) * (x0_mag + fnorm * u_norm);
    };
    rep.tail_bound = 0.0;
    for (std::size_t j = check_order; j < modes; ++j)
        rep.tail_bound = std::max(
            rep.tail_bound, tail_term(p.spectrum.eigenvalues[j].real(), std::abs(p.x0[j]),
                                      std::abs(p.input.coefficients[j])));

    // Beyond the stored truncation the behaviour depends on the spectrum's
    // growth law. Heat-type spectra give a superexponentially decaying
    // extrapolated bound (x0 is zero beyond its stored truncation; b is
    // bounded by the largest stored coefficient). Bounded-Re spectra do not
    // decay and the extension is labelled inconclusive.
    switch (p.spectrum.kind) {
        case SpectrumKind::Explicit:
            rep.tail_status = TailStatus::Complete;
            break;
        case SpectrumKind::Heat: {
            rep.tail_status = TailStatus::Decaying;
            const double pi2 = std::numbers::pi * std::numbers::pi;
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t j = modes + 1; j <= modes + 32; ++j) {
                const double jd = static_cast<double>(j);
                const double term = tail_term(-jd * jd * pi2, 0.0, max_b);
                rep.tail_bound = std::max(rep.tail_bound, term);
                if (term > prev) {
                    rep.tail_status = TailStatus::Inconclusive;  // not observed for t1 > L
                    break;
                }
                prev = term;
            }
            break;
        }
        case SpectrumKind::ImaginaryLadder:
        case SpectrumKind::StripPerturbed:
            rep.tail_status = TailStatus::Inconclusive;
            break;
    }

    // Persistence: for t >= t1 the flow is homogeneous, so
    // x_j(t) = exp(lambda_j (t - t1)) x_j(t1) exactly.
    for (double factor : {1.5, 2.0}) {
        const double t = p.t1 * factor;
        const std::vector<cxd> x_t = modal_state(p, u, t);
        for (std::size_t j = 0; j < u.order(); ++j) {
            const cxd predicted = std::exp(p.spectrum.eigenvalues[j] * (t - p.t1)) * x_t1[j];
            rep.persistence_defect = std::max(rep.persistence_defect, std::abs(x_t[j] - predicted));
        }
    }

    double max_res = 0.0;
    for (double r : rep.modal_residuals) max_res = std::max(max_res, r);
    rep.passed = max_res <= tol * std::max(1.0, rep.x0_norm) && rep.tail_bound <= tol;
    return rep;
}

std::string report_to_json(const VerificationReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("controlled_order").value(rep.controlled_order);
    w.key("check_order").value(rep.check_order);
    w.key("tolerance").value(rep.tolerance);
    w.key("x0_norm").value(rep.x0_norm);
    w.key("modal_residuals").begin_array();
    for (double r : rep.modal_residuals) w.value(r);
    w.end_array();
    w.key("tail_bound").value(rep.tail_bound);
    w.key("tail_status").value(to_string(rep.tail_status));
    w.key("persistence_defect").value(rep.persistence_defect);
    w.key("passed").value(rep.passed);
    w.end_object();
    return w.str();
}

std::string modal_trace_csv(const ControlProblem& p, const ControlSignal& u,
                            std::size_t check_order, double t_max, std::size_t samples) {
    std::ostringstream os;
    os.precision(17);
    os << "t,mode,re_x,im_x\n";
    const std::size_t m = std::max<std::size_t>(samples, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(m - 1);
        const std::vector<cxd> x = modal_state(p, u, t);
        for (std::size_t j = 0; j < std::min(check_order, x.size()); ++j)
            os << t << ',' << (j + 1) << ',' << x[j].real() << ',' << x[j].imag() << '\n';
    }
    return os.str();
}

}  // namespace nullctrl

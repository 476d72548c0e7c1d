#include "nullctrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nullctrl {

namespace {
constexpr double kPi = std::numbers::pi;

bool multiset_conjugate_closed(const std::vector<cxd>& ev) {
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const cxd target = std::conj(ev[i]);
        bool found = false;
        for (std::size_t j = 0; j < ev.size(); ++j) {
            if (used[j]) continue;
            if (ev[j] == target || std::abs(ev[j] - target) <=
                                       1e-14 * (1.0 + std::abs(target))) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}
}  // namespace

std::size_t ExponentialFamily::size() const {
    return std::min(spectrum.size(), input.size());
}

cxd ExponentialFamily::element(std::size_t j, double t) const {
    return std::exp(-spectrum.eigenvalues[j] * t) * input.coefficients[j];
}

ExponentialFamily ControlProblem::family() const {
    return exponential_family(spectrum, input, control_horizon());
}

Spectrum heat_spectrum(std::size_t n) {
    if (n == 0) throw std::invalid_argument("heat_spectrum: order must be >= 1");
    Spectrum s;
    s.kind = SpectrumKind::Heat;
    s.eigenvalues.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        s.eigenvalues.emplace_back(-jd * jd * kPi * kPi, 0.0);
    }
    s.re_lower_bound = s.eigenvalues.back().real();
    s.conjugate_closed = true;  // all real
    return s;
}

Spectrum imaginary_ladder_spectrum(std::size_t n) {
    if (n == 0) throw std::invalid_argument("imaginary_ladder_spectrum: order must be >= 1");
    Spectrum s;
    s.kind = SpectrumKind::ImaginaryLadder;
    for (std::size_t k = 1; k <= n; ++k)
        s.eigenvalues.emplace_back(0.0, static_cast<double>(k));
    s.re_lower_bound = 0.0;
    s.conjugate_closed = false;
    return s;
}

Spectrum strip_perturbed_spectrum(std::size_t n, DeviationRule rule) {
    if (n == 0) throw std::invalid_argument("strip_perturbed_spectrum: order must be >= 1");
    Spectrum s;
    s.kind = SpectrumKind::StripPerturbed;
    s.deviation = rule;
    double re_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= n; ++k) {
        cxd mu = cxd{0.0, static_cast<double>(k)} + rule(k);
        s.eigenvalues.push_back(mu);
        re_min = std::min(re_min, mu.real());
    }
    s.re_lower_bound = re_min;
    s.conjugate_closed = false;
    return s;
}

Spectrum explicit_spectrum(std::vector<cxd> eigenvalues) {
    if (eigenvalues.empty())
        throw std::invalid_argument("explicit_spectrum: empty eigenvalue list");
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
            if (eigenvalues[i] == eigenvalues[j])
                throw std::invalid_argument(
                    "explicit_spectrum: duplicate eigenvalues at positions " +
                    std::to_string(i + 1) + " and " + std::to_string(j + 1));
    Spectrum s;
    s.kind = SpectrumKind::Explicit;
    s.conjugate_closed = multiset_conjugate_closed(eigenvalues);
    double re_min = std::numeric_limits<double>::infinity();
    for (const cxd& ev : eigenvalues) re_min = std::min(re_min, ev.real());
    s.re_lower_bound = re_min;
    s.eigenvalues = std::move(eigenvalues);
    return s;
}

SpectrumValidation validate_spectrum(const Spectrum& s) {
    SpectrumValidation v;
    const auto& ev = s.eigenvalues;
    for (std::size_t i = 0; i < ev.size() && v.distinct; ++i) {
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            if (ev[i] == ev[j]) {
                v.distinct = false;
                v.duplicate_pair = {i, j};
                break;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        if (std::abs(ev[i]) > std::abs(ev[i + 1]) * (1.0 + 1e-15)) {
            v.ordered_by_modulus = false;
            break;
        }
    }
    v.re_min = std::numeric_limits<double>::infinity();
    for (const cxd& e : ev) v.re_min = std::min(v.re_min, e.real());
    if (s.re_lower_bound.has_value())
        v.re_bound_satisfied = v.re_min >= *s.re_lower_bound - 1e-15 * std::abs(*s.re_lower_bound);
    v.conjugate_closed = multiset_conjugate_closed(ev);
    return v;
}

ExponentialFamily exponential_family(const Spectrum& s, const InputVector& b, double horizon) {
    if (s.size() == 0) throw std::invalid_argument("exponential_family: empty spectrum");
    if (!(horizon > 0.0)) throw std::invalid_argument("exponential_family: horizon must be > 0");
    return ExponentialFamily{s, b, horizon};
}

std::string to_string(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::Explicit: return "explicit";
        case SpectrumKind::Heat: return "heat";
        case SpectrumKind::ImaginaryLadder: return "imaginary-ladder";
        case SpectrumKind::StripPerturbed: return "strip-perturbed";
    }
    return "unknown";
}

}  // namespace nullctrl

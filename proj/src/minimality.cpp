#include "nullctrl/minimality.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nullctrl/errors.hpp"

namespace nullctrl {

std::string to_string(MinimalityVerdict v) {
    switch (v) {
        case MinimalityVerdict::StrongEvidence: return "strong-evidence";
        case MinimalityVerdict::GeometricDecay: return "geometric-decay";
        case MinimalityVerdict::Degenerate: return "degenerate";
        case MinimalityVerdict::Unresolved: return "unresolved";
    }
    return "unknown";
}

MinimalityReport classify_minimality(const GammaSequence& g, ClassifierThresholds thresholds) {
    if (g.values.empty()) throw std::invalid_argument("classify_minimality: empty sequence");
    MinimalityReport rep;
    rep.gamma = g;
    rep.thresholds = thresholds;
    rep.gamma_estimate = g.values.back();

    const std::size_t n = g.values.size();
    const std::size_t mid = (n + 1) / 2;  // ceil(N/2), 1-based
    const double gmid = g.values[mid - 1];
    rep.decay_ratio = gmid != 0.0 ? g.values.back() / gmid
                                  : std::numeric_limits<double>::quiet_NaN();

    // A nonpositive gamma_n that is resolvable means linear dependence.
    // Entries under the precision floor are unresolved, not degenerate.
    for (std::size_t i = 0; i < n; ++i) {
        const bool flagged = i < g.below_floor.size() && g.below_floor[i];
        const double tol = i < g.tolerances.size() ? g.tolerances[i] : 0.0;
        if (g.values[i] <= tol && !flagged) {
            rep.verdict = MinimalityVerdict::Degenerate;
            return rep;
        }
    }
    const bool last_flagged = !g.below_floor.empty() && g.below_floor.back();
    if (std::isfinite(rep.decay_ratio) && rep.decay_ratio < thresholds.geometric_decay_below) {
        rep.verdict = MinimalityVerdict::GeometricDecay;
    } else if (std::isfinite(rep.decay_ratio) &&
               rep.decay_ratio >= thresholds.strong_evidence_at_least && !last_flagged) {
        rep.verdict = MinimalityVerdict::StrongEvidence;
    } else {
        rep.verdict = MinimalityVerdict::Unresolved;
    }
    return rep;
}

BoasCertificate boas_certificate(const ExponentialFamily& fam, double gamma_candidate,
                                 std::size_t trials, std::size_t n, std::uint64_t seed) {
    if (!(gamma_candidate > 0.0))
        throw std::invalid_argument("boas_certificate: gamma candidate must be > 0");
    if (n == 0 || n > fam.size())
        throw std::invalid_argument("boas_certificate: invalid order");

    const GramMatrix g = gram_matrix(fam, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    BoasCertificate cert;
    cert.gamma_candidate = gamma_candidate;
    cert.seed = seed;
    cert.trials = trials;
    cert.worst_ratio = std::numeric_limits<double>::infinity();

    std::vector<cxd> c(n);
    for (std::size_t t = 0; t < trials; ++t) {
        double csq = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = cxd{gauss(rng), gauss(rng)};
            csq += std::norm(c[j]);
        }
        if (csq == 0.0) continue;
        // ||sum c_j x_j||^2 = c* G c
        double quad = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                quad += (std::conj(c[j]) * g.entries.at(j, k) * c[k]).real();
        cert.worst_ratio = std::min(cert.worst_ratio, quad / csq);
    }
    cert.passed = cert.worst_ratio >= gamma_candidate * (1.0 - cert.tolerance);
    return cert;
}

GammaSequence scaled_gamma_bound(const GammaSequence& gamma_plain, const InputVector& b) {
    if (b.size() < gamma_plain.size())
        throw std::invalid_argument("scaled_gamma_bound: coefficient vector too short");
    for (std::size_t j = 0; j < gamma_plain.size(); ++j)
        if (b.coefficients[j] == cxd{0.0, 0.0})
            throw NecessaryConditionError("scaled_gamma_bound: b_" + std::to_string(j + 1) +
                                          " = 0 violates the nonvanishing hypothesis");
    GammaSequence bound;
    bound.eig_tolerance = gamma_plain.eig_tolerance;
    bound.below_floor = gamma_plain.below_floor;
    double min_bsq = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < gamma_plain.size(); ++n) {
        min_bsq = std::min(min_bsq, std::norm(b.coefficients[n]));
        bound.values.push_back(min_bsq * gamma_plain.values[n]);
        if (n < gamma_plain.tolerances.size())
            bound.tolerances.push_back(min_bsq * gamma_plain.tolerances[n]);
    }
    return bound;
}

}  // namespace nullctrl

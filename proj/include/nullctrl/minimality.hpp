#pragma once

#include <cstdint>
#include <string>

#include "nullctrl/gram.hpp"

namespace nullctrl {

enum class MinimalityVerdict { StrongEvidence, GeometricDecay, Degenerate, Unresolved };

std::string to_string(MinimalityVerdict v);

// Declared heuristic thresholds on the tail ratio gamma_N / gamma_{ceil(N/2)};
// reported verbatim so consumers can re-threshold.
struct ClassifierThresholds {
    double geometric_decay_below = 0.1;
    double strong_evidence_at_least = 0.5;
};

struct MinimalityReport {
    GammaSequence gamma;
    MinimalityVerdict verdict = MinimalityVerdict::Unresolved;
    double gamma_estimate = 0.0;  // last entry of gamma
    double decay_ratio = 0.0;     // gamma_N / gamma_{ceil(N/2)}
    ClassifierThresholds thresholds;
};

MinimalityReport classify_minimality(const GammaSequence& g,
                                     ClassifierThresholds thresholds = {});

// Randomized check of the lower frame inequality
// gamma * sum |c_k|^2 <= || sum c_j x_j ||^2
// over complex Gaussian coefficient vectors; the quadratic form is
// evaluated through the Gram matrix.
struct BoasCertificate {
    bool passed = false;
    double worst_ratio = 0.0;  // min over trials of c*Gc / sum |c_k|^2
    double gamma_candidate = 0.0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double tolerance = 1e-9;  // relative slack on the pass condition
};

BoasCertificate boas_certificate(const ExponentialFamily& fam, double gamma_candidate,
                                 std::size_t trials, std::size_t n,
                                 std::uint64_t seed = 0x5eed);

// Scaling transfer: if the plain family {exp(-lambda_j t)} has minimal
// eigenvalues gamma_n and all b_j are nonzero, then
// (min_{j<=n} |b_j|^2) * gamma_n lower-bounds the scaled family's gamma_n.
// Throws on any b_j = 0.
GammaSequence scaled_gamma_bound(const GammaSequence& gamma_plain, const InputVector& b);

}  // namespace nullctrl

#pragma once

#include <vector>

#include "nullctrl/linalg.hpp"
#include "nullctrl/spectral.hpp"

namespace nullctrl {

// Ratio below which a minimal eigenvalue is considered unresolvable in
// double precision (gamma_n / ||G||_2 under this is flagged, not trusted).
inline constexpr double kGammaPrecisionFloor = 1e-14;

// phi(s, L) = integral_0^L exp(-s t) dt = (1 - exp(-s L)) / s, entire in s.
// Evaluated by a short power series near s = 0 to avoid cancellation.
cxd phi(cxd s, double horizon);

struct GramMatrix {
    std::size_t order = 0;
    ComplexMatrix entries;  // Hermitian by construction
};

// Closed-form Gram matrix of the first n family elements:
// G_jk = b_j conj(b_k) phi(lambda_j + conj(lambda_k), L).
GramMatrix gram_matrix(const ExponentialFamily& fam, std::size_t n);

// Independent check: composite Gauss-Legendre quadrature of each
// inner-product integral. Converges to gram_matrix as panels grow.
GramMatrix gram_quadrature_oracle(const ExponentialFamily& fam, std::size_t n,
                                  std::size_t panels);

struct MinEig {
    double value = 0.0;
    bool below_precision_floor = false;  // value / ||G||_2 < kGammaPrecisionFloor
};

// Smallest eigenvalue of a Hermitian matrix (Jacobi). Small negative
// round-off results are reported as-is, flagged, never clamped.
MinEig hermitian_min_eig(const GramMatrix& g);

struct GammaSequence {
    std::vector<double> values;     // gamma_1 ... gamma_N
    std::vector<bool> below_floor;  // per-entry precision flag
    std::vector<double> tolerances; // per-entry eigensolver slack (1e-13 * ||G_n||_F)
    double eig_tolerance = 0.0;     // max of tolerances, scalar convenience

    std::size_t size() const { return values.size(); }
    double back() const { return values.back(); }
};

// gamma_n = min eig of the n-th leading Gram block, n = 1..N.
GammaSequence gamma_sequence(const ExponentialFamily& fam, std::size_t max_order);

// CSV export, row-major, "re,im" per cell.
std::string gram_to_csv(const GramMatrix& g);

}  // namespace nullctrl

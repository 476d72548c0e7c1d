#include "nullctrl/gram.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nullctrl/errors.hpp"

namespace nullctrl {

cxd phi(cxd s, double horizon) {
    const cxd z = s * horizon;
    if (std::abs(z) < 1e-4) {
        // L * (1 - z/2 + z^2/6 - z^3/24 + z^4/120 - z^5/720)
        cxd acc{1.0, 0.0};
        cxd zp{1.0, 0.0};
        double fact = 1.0;
        for (int k = 1; k <= 5; ++k) {
            zp *= -z;
            fact *= static_cast<double>(k + 1);
            acc += zp / fact;
        }
        return horizon * acc;
    }
    return (1.0 - std::exp(-z)) / s;
}

GramMatrix gram_matrix(const ExponentialFamily& fam, std::size_t n) {
    if (n == 0) throw std::invalid_argument("gram_matrix: order must be >= 1");
    if (n > fam.size()) throw std::invalid_argument("gram_matrix: order exceeds family size");
    GramMatrix g;
    g.order = n;
    g.entries = ComplexMatrix(n);
    const auto& lam = fam.spectrum.eigenvalues;
    const auto& b = fam.input.coefficients;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            cxd v = b[j] * std::conj(b[k]) * phi(lam[j] + std::conj(lam[k]), fam.horizon);
            if (j == k) v = cxd{v.real(), 0.0};
            g.entries.at(j, k) = v;
            g.entries.at(k, j) = std::conj(v);
        }
    }
    return g;
}

namespace {
// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168};
constexpr std::array<double, 4> kGlWeights = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

template <typename F>
cxd gl_integrate(F&& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    cxd acc{0.0, 0.0};
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        for (std::size_t q = 0; q < 4; ++q) {
            acc += kGlWeights[q] * half *
                   (f(mid - half * kGlNodes[q]) + f(mid + half * kGlNodes[q]));
        }
    }
    return acc;
}
}  // namespace

GramMatrix gram_quadrature_oracle(const ExponentialFamily& fam, std::size_t n,
                                  std::size_t panels) {
    if (n == 0) throw std::invalid_argument("gram_quadrature_oracle: order must be >= 1");
    if (panels == 0) throw std::invalid_argument("gram_quadrature_oracle: panels must be >= 1");
    GramMatrix g;
    g.order = n;
    g.entries = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            cxd v = gl_integrate(
                [&](double t) { return fam.element(j, t) * std::conj(fam.element(k, t)); },
                0.0, fam.horizon, panels);
            if (j == k) v = cxd{v.real(), 0.0};
            g.entries.at(j, k) = v;
            g.entries.at(k, j) = std::conj(v);
        }
    }
    return g;
}

MinEig hermitian_min_eig(const GramMatrix& g) {
    const std::vector<double> eig = hermitian_eigenvalues(g.entries);
    MinEig out;
    out.value = eig.front();
    double norm2 = 0.0;
    for (double e : eig) norm2 = std::max(norm2, std::abs(e));
    out.below_precision_floor = norm2 > 0.0 && out.value / norm2 < kGammaPrecisionFloor;
    return out;
}

GammaSequence gamma_sequence(const ExponentialFamily& fam, std::size_t max_order) {
    if (max_order == 0 || max_order > fam.size())
        throw std::invalid_argument("gamma_sequence: invalid max order");
    const GramMatrix full = gram_matrix(fam, max_order);
    GammaSequence seq;
    seq.values.reserve(max_order);
    for (std::size_t n = 1; n <= max_order; ++n) {
        GramMatrix block;
        block.order = n;
        block.entries = full.entries.leading_block(n);
        MinEig e = hermitian_min_eig(block);
        seq.values.push_back(e.value);
        seq.below_floor.push_back(e.below_precision_floor);
        seq.tolerances.push_back(1e-13 * block.entries.frobenius_norm());
        seq.eig_tolerance = std::max(seq.eig_tolerance, seq.tolerances.back());
    }
    return seq;
}

std::string gram_to_csv(const GramMatrix& g) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t j = 0; j < g.order; ++j) {
        for (std::size_t k = 0; k < g.order; ++k) {
            if (k) os << ',';
            os << g.entries.at(j, k).real() << ',' << g.entries.at(j, k).imag();
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace nullctrl

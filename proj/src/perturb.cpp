#include "nullctrl/perturb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "nullctrl/errors.hpp"
#include "nullctrl/json_writer.hpp"

namespace nullctrl {

namespace {

// Gram matrix of the differences y_j - x_j expanded into four phi terms.
ComplexMatrix difference_gram(const ExponentialFamily& ref, const ExponentialFamily& pert,
                              std::size_t n) {
    const double L = ref.horizon;
    const auto& lam = ref.spectrum.eigenvalues;
    const auto& mu = pert.spectrum.eigenvalues;
    const auto& br = ref.input.coefficients;
    const auto& bp = pert.input.coefficients;
    ComplexMatrix d(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const cxd v = bp[j] * std::conj(bp[k]) * phi(mu[j] + std::conj(mu[k]), L) -
                          bp[j] * std::conj(br[k]) * phi(mu[j] + std::conj(lam[k]), L) -
                          br[j] * std::conj(bp[k]) * phi(lam[j] + std::conj(mu[k]), L) +
                          br[j] * std::conj(br[k]) * phi(lam[j] + std::conj(lam[k]), L);
            d.at(j, k) = j == k ? cxd{v.real(), 0.0} : v;
            d.at(k, j) = std::conj(d.at(j, k));
        }
    }
    return d;
}

constexpr std::array<double, 4> kGlNodes = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168};
constexpr std::array<double, 4> kGlWeights = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

}  // namespace

double deviation_ratio(const ExponentialFamily& reference, const ExponentialFamily& perturbed,
                       std::size_t n) {
    if (reference.horizon != perturbed.horizon)
        throw std::invalid_argument("deviation_ratio: mismatched horizons");
    if (n == 0 || n > reference.size() || n > perturbed.size())
        throw std::invalid_argument("deviation_ratio: invalid order");

    const GramMatrix g = gram_matrix(reference, n);
    const ComplexMatrix d = difference_gram(reference, perturbed, n);

    // Generalized problem (D, G): factor G = L L* and diagonalize
    // L^{-1} D L^{-*} with the Hermitian eigensolver.
    const ComplexMatrix l = cholesky_factor(g.entries);

    // Columns of L^{-1} D: forward-substitute each column, then the
    // congruence M = (L^{-1} D) L^{-*} = L^{-1} (L^{-1} D*)* since D is Hermitian.
    ComplexMatrix tmp(n);  // L^{-1} D
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<cxd> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            cxd s = d.at(i, col);
            for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
            y[i] = s / l.at(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) tmp.at(i, col) = y[i];
    }
    ComplexMatrix m(n);  // L^{-1} D L^{-*}: forward-substitute rows of tmp*
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<cxd> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            cxd s = std::conj(tmp.at(row, i));
            for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
            y[i] = s / l.at(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) m.at(row, i) = std::conj(y[i]);
    }

    const std::vector<double> eig = hermitian_eigenvalues(m);
    return std::sqrt(std::max(0.0, eig.back()));
}

double transfer_bound(double alpha_sq, double q) {
    if (!(alpha_sq > 0.0)) throw std::invalid_argument("transfer_bound: alpha^2 must be > 0");
    if (q < 0.0 || q >= 1.0)
        throw std::domain_error("transfer_bound: inadmissible deviation ratio (q >= 1)");
    return alpha_sq * (1.0 - q) * (1.0 - q);
}

DeviationMass strip_deviation_mass(double t2, double gamma_strip, const DeviationRule& rule,
                                   std::size_t truncation) {
    if (!(t2 > 0.0)) throw std::invalid_argument("strip_deviation_mass: t2 must be > 0");
    if (truncation == 0) throw std::invalid_argument("strip_deviation_mass: K must be >= 1");

    auto integrand = [&](double t) {
        double s = 0.0;
        for (std::size_t k = 1; k <= truncation; ++k)
            s += std::norm(std::exp(rule(k) * t) - 1.0);
        return std::exp(2.0 * gamma_strip * t) * s;
    };

    DeviationMass out;
    const std::size_t panels = 64;
    const double h = t2 / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        for (std::size_t q = 0; q < 4; ++q)
            out.value += kGlWeights[q] * half *
                         (integrand(mid - half * kGlNodes[q]) + integrand(mid + half * kGlNodes[q]));
    }

    // Remainder: |e^{d t} - 1| <= |d| t e^{|d| t} with |d(k)| <= C/(K+1) for
    // k > K, and sum_{k>K} |d(k)|^2 <= C^2 / K.
    const double c_abs = std::abs(rule.coefficient);
    const double d_head = c_abs / static_cast<double>(truncation + 1);
    const double coeff_sum = c_abs * c_abs / static_cast<double>(truncation);
    out.remainder =
        coeff_sum * t2 * t2 * t2 * std::exp(2.0 * (gamma_strip + d_head) * t2);
    return out;
}

PerturbationReport perturbed_controllability_check(const ControlProblem& reference,
                                                   const ControlProblem& perturbed,
                                                   std::size_t n, double tol, bool force) {
    const ExponentialFamily ref_fam = reference.family();
    const ExponentialFamily pert_fam = perturbed.family();

    PerturbationReport rep;
    rep.q_values.reserve(n);
    for (std::size_t m = 1; m <= n; ++m)
        rep.q_values.push_back(deviation_ratio(ref_fam, pert_fam, m));
    rep.q_final = rep.q_values.back();
    rep.admissible = rep.q_final < 1.0;

    const GammaSequence ref_gamma = gamma_sequence(ref_fam, n);
    rep.reference_gamma = ref_gamma.back();
    rep.reference_verdict = classify_minimality(ref_gamma).verdict;

    const GramMatrix pert_g = gram_matrix(pert_fam, n);
    rep.perturbed_gamma_direct = hermitian_min_eig(pert_g).value;

    if (rep.admissible) rep.transferred_gamma = transfer_bound(rep.reference_gamma, rep.q_final);

    if (rep.admissible || force) {
        const SynthesisResult syn = synthesize_null_control(perturbed, n);
        rep.verification = verify_null_controllability(perturbed, syn.control, n, tol);
        rep.synthesis_attempted = true;
    }
    return rep;
}

std::string perturbation_to_json(const PerturbationReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("q_values").begin_array();
    for (double q : rep.q_values) w.value(q);
    w.end_array();
    w.key("q_final").value(rep.q_final);
    w.key("admissible").value(rep.admissible);
    w.key("reference_gamma").value(rep.reference_gamma);
    w.key("reference_verdict").value(to_string(rep.reference_verdict));
    w.key("transferred_gamma").value(rep.transferred_gamma);
    w.key("perturbed_gamma_direct").value(rep.perturbed_gamma_direct);
    w.key("synthesis_attempted").value(rep.synthesis_attempted);
    if (rep.synthesis_attempted) {
        w.key("verification_passed").value(rep.verification.passed);
        w.key("max_modal_residual");
        double mx = 0.0;
        for (double r : rep.verification.modal_residuals) mx = std::max(mx, r);
        w.value(mx);
        w.key("tail_status").value(to_string(rep.verification.tail_status));
    }
    w.end_object();
    return w.str();
}

std::string q_profile_csv(const PerturbationReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "n,q\n";
    for (std::size_t i = 0; i < rep.q_values.size(); ++i)
        os << (i + 1) << ',' << rep.q_values[i] << '\n';
    return os.str();
}

}  // namespace nullctrl

#include "nullctrl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nullctrl/errors.hpp"

namespace nullctrl {

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cxd& v : a) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d = std::max(d, std::abs(at(i, i).imag()));
        for (std::size_t j = i + 1; j < n; ++j)
            d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
    }
    return d;
}

ComplexMatrix ComplexMatrix::leading_block(std::size_t k) const {
    ComplexMatrix b(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) b.at(i, j) = at(i, j);
    return b;
}

double vector_norm(const std::vector<cxd>& v) {
    double s = 0.0;
    for (const cxd& x : v) s += std::norm(x);
    return std::sqrt(s);
}

namespace {

// Neumaier compensated accumulator with FMA-exact products.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    // Adds x*y together with its exact rounding error.
    void add_product(double x, double y) {
        double p = x * y;
        double e = std::fma(x, y, -p);
        add(p);
        add(e);
    }
    double value() const { return sum + comp; }
};

}  // namespace

cxd compensated_dot(const std::vector<cxd>& x, const std::vector<cxd>& y) {
    CompensatedSum re, im;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < n; ++k) {
        re.add_product(x[k].real(), y[k].real());
        re.add_product(-x[k].imag(), y[k].imag());
        im.add_product(x[k].real(), y[k].imag());
        im.add_product(x[k].imag(), y[k].real());
    }
    return {re.value(), im.value()};
}

std::vector<cxd> compensated_residual(const ComplexMatrix& m,
                                      const std::vector<cxd>& alpha,
                                      const std::vector<cxd>& c) {
    std::vector<cxd> r(m.n);
    for (std::size_t j = 0; j < m.n; ++j) {
        CompensatedSum re, im;
        re.add(c[j].real());
        im.add(c[j].imag());
        for (std::size_t k = 0; k < m.n; ++k) {
            const cxd& g = m.at(j, k);
            const cxd& x = alpha[k];
            re.add_product(-g.real(), x.real());
            re.add_product(g.imag(), x.imag());
            im.add_product(-g.real(), x.imag());
            im.add_product(-g.imag(), x.real());
        }
        r[j] = {re.value(), im.value()};
    }
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const JacobiOptions& opts) {
    const std::size_t n = m.n;
    const double scale = m.frobenius_norm();
    if (scale > 0.0) {
        double defect = m.hermitian_defect();
        if (defect > opts.hermitian_tol * scale)
            throw NonHermitianError(defect, "hermitian_eigenvalues: input is not Hermitian");
    }
    if (n == 0) return {};
    if (n == 1) return {m.at(0, 0).real()};

    // Work on an exactly Hermitian copy (average the mirrored entries).
    ComplexMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w.at(i, i) = cxd{m.at(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            cxd v = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
            w.at(i, j) = v;
            w.at(j, i) = std::conj(v);
        }
    }

    auto offdiag_mass = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(w.at(i, j));
        return std::sqrt(s);
    };

    const double tol = opts.offdiag_tol * (scale > 0.0 ? scale : 1.0);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (offdiag_mass() <= tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd apq = w.at(p, q);
                const double mpq = std::abs(apq);
                if (mpq <= 1e-300) continue;
                const double app = w.at(p, p).real();
                const double aqq = w.at(q, q).real();
                const cxd u = apq / mpq;  // phase of the pivot

                // Rotation angle zeroing the pivot: tan(2*phi) = 2|apq| / (aqq - app).
                const double tau = (aqq - app) / (2.0 * mpq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cr = 1.0 / std::sqrt(1.0 + t * t);
                const double sr = t * cr;
                const cxd s = sr * u;  // complex sine absorbing the pivot phase

                // A <- R* A R with R acting on the (p, q) plane:
                // col_p <- c*col_p - conj(s)*col_q; col_q <- s*col_p + c*col_q.
                for (std::size_t i = 0; i < n; ++i) {
                    cxd aip = w.at(i, p), aiq = w.at(i, q);
                    w.at(i, p) = cr * aip - std::conj(s) * aiq;
                    w.at(i, q) = s * aip + cr * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    cxd apj = w.at(p, j), aqj = w.at(q, j);
                    w.at(p, j) = cr * apj - s * aqj;
                    w.at(q, j) = std::conj(s) * apj + cr * aqj;
                }
                w.at(p, q) = cxd{0.0, 0.0};
                w.at(q, p) = cxd{0.0, 0.0};
                w.at(p, p) = cxd{w.at(p, p).real(), 0.0};
                w.at(q, q) = cxd{w.at(q, q).real(), 0.0};
            }
        }
    }
    const double mass = offdiag_mass();
    if (mass > tol)
        throw ConvergenceError(mass, "hermitian_eigenvalues: Jacobi sweeps did not converge");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = w.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

ComplexMatrix cholesky_factor(const ComplexMatrix& m) {
    const std::size_t n = m.n;
    ComplexMatrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m.at(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l.at(j, k));
        if (!(d > 0.0))
            throw IllConditionedError(d, "cholesky_factor: non-positive pivot at row " +
                                             std::to_string(j));
        const double ljj = std::sqrt(d);
        l.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cxd s = m.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l.at(i, k) * std::conj(l.at(j, k));
            l.at(i, j) = s / ljj;
        }
    }
    return l;
}

std::vector<cxd> cholesky_solve(const ComplexMatrix& lower, const std::vector<cxd>& b) {
    const std::size_t n = lower.n;
    std::vector<cxd> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        cxd s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= lower.at(i, k) * y[k];
        y[i] = s / lower.at(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cxd s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(lower.at(k, ii)) * x[k];
        x[ii] = s / lower.at(ii, ii);
    }
    return x;
}

RefinedSolve solve_hpd_refined(const ComplexMatrix& m, const std::vector<cxd>& b,
                               double target_rel) {
    const ComplexMatrix l = cholesky_factor(m);
    RefinedSolve out;
    out.x = cholesky_solve(l, b);

    const double bnorm = vector_norm(b);
    const double target = target_rel * (bnorm > 0.0 ? bnorm : 1.0);

    std::vector<cxd> r = compensated_residual(m, out.x, b);
    double best = vector_norm(r);
    std::vector<cxd> best_x = out.x;

    constexpr int kMaxRefine = 6;
    for (int step = 0; step < kMaxRefine && best > target; ++step) {
        std::vector<cxd> dx = cholesky_solve(l, r);
        for (std::size_t i = 0; i < m.n; ++i) out.x[i] += dx[i];
        r = compensated_residual(m, out.x, b);
        const double rn = vector_norm(r);
        ++out.refinement_steps;
        if (rn < best) {
            best = rn;
            best_x = out.x;
        } else {
            break;  // stagnated; keep the best iterate
        }
    }
    out.x = best_x;
    out.residual_norm = best;
    return out;
}

}  // namespace nullctrl

#include "nonnoether/conslaws.hpp"

#include "nonnoether/compiled.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace nonnoether {

std::vector<Expr> y_laws(const PhaseModel& m) {
    MultiVec hatW = schouten(m.E, m.W);
    Expr wn = top_coefficient(wedge_power(m.W, m.n));
    std::vector<Expr> Y;
    Y.reserve(static_cast<std::size_t>(m.n));
    MultiVec hk = MultiVec::scalar(m.dim(), Expr::constant(m.dim(), Rational(1)));
    for (int k = 1; k <= m.n; ++k) {
        hk = wedge(hk, hatW);
        MultiVec vol = wedge(hk, wedge_power(m.W, m.n - k));
        Y.push_back(top_coefficient(vol).exact_divide(wn));
    }
    return Y;
}

void c_and_i_laws(const PhaseModel& m, int k_max, std::vector<Expr>& C, std::vector<Expr>& I) {
    const int expr_dim = static_cast<int>(m.coords.size());
    Form le_omega = lie_derivative(m.E, m.omega);

    C.clear();
    for (int k = 1; k <= m.n; ++k) {
        Expr raw = interior_scalar(wedge_power(m.W, k), wedge_power(le_omega, k));
        Rational norm = factorial(k) * factorial(k);
        C.push_back(raw * (Rational(1) / norm));
    }

    // I^(m) from Newton's recursion over the elementary-symmetric family.
    I.clear();
    auto c_of = [&](int k) -> Expr {
        if (k >= 1 && k <= m.n) return C[static_cast<std::size_t>(k - 1)];
        return Expr(expr_dim);
    };
    for (int mm = 1; mm <= k_max; ++mm) {
        Expr im = c_of(mm) * Rational((mm % 2 == 0) ? -mm : mm);
        for (int j = 1; j <= mm - 1; ++j) {
            Expr term = I[static_cast<std::size_t>(mm - j - 1)] * c_of(j);
            if (j % 2 == 0)
                im += term;
            else
                im -= term;
        }
        I.push_back(im);
    }
}

ConservedSet conserved_set(const PhaseModel& m, int k_max) {
    ConservedSet s;
    s.Y = y_laws(m);
    c_and_i_laws(m, k_max, s.C, s.I);
    return s;
}

namespace {

Eigen::MatrixXd full_matrix_at(const MultiVec& v, const std::vector<double>& point, double time) {
    const int d = v.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (const auto& [idx, e] : v.components()) {
        double val = e.evaluate(point, time);
        M(idx[0], idx[1]) = val;
        M(idx[1], idx[0]) = -val;
    }
    return M;
}

} // namespace

SecularRoots secular_roots(const PhaseModel& m, const std::vector<double>& point, double time) {
    const int d = m.dim();
    MultiVec hatW = schouten(m.E, m.W);
    Eigen::MatrixXd A = full_matrix_at(hatW, point, time);
    Eigen::MatrixXd B = full_matrix_at(m.W, point, time);

    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(A, B, false);
    if (solver.info() != Eigen::Success) throw EigenSolveFailure("generalized eigensolver failed");

    std::vector<std::complex<double>> all;
    all.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::complex<double> alpha = solver.alphas()(i);
        double beta = solver.betas()(i);
        if (std::abs(beta) < 1e-300) throw EigenSolveFailure("infinite generalized eigenvalue");
        all.push_back(alpha / beta);
    }

    // Greedy nearest-neighbor pairing of the doubled spectrum.
    SecularRoots out;
    std::vector<bool> used(all.size(), false);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (used[j]) continue;
            double dd = std::abs(all[i] - all[j]);
            if (dd < best_dist) {
                best_dist = dd;
                best = j;
            }
        }
        used[best] = true;
        double tol = 1e-6 * (1.0 + std::abs(all[i]));
        if (best_dist > tol) out.pairing_warning = true;
        out.roots.push_back(0.5 * (all[i] + all[best]));
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const auto& r : out.roots)
        if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r.real()))) out.complex_roots = true;

    // Consistency with the wedge-ratio family: e_k(roots) must reproduce the
    // evaluated Y^(k) scaled by the binomial factor.
    std::vector<Expr> Y = y_laws(m);
    std::vector<std::complex<double>> esym(static_cast<std::size_t>(m.n) + 1,
                                           std::complex<double>(0.0));
    esym[0] = 1.0;
    for (const auto& r : out.roots)
        for (int k = m.n; k >= 1; --k)
            esym[static_cast<std::size_t>(k)] += r * esym[static_cast<std::size_t>(k - 1)];
    double worst = 0.0;
    for (int k = 1; k <= m.n; ++k) {
        double expected =
            Y[static_cast<std::size_t>(k - 1)].evaluate(point, time) * to_double(binomial(m.n, k));
        std::complex<double> got = esym[static_cast<std::size_t>(k)];
        double denom = 1.0 + std::abs(expected);
        worst = std::max(worst, std::abs(got - expected) / denom);
    }
    out.consistency_residual = worst;
    if (worst > 1e-8)
        throw EigenSolveFailure("secular roots inconsistent with the wedge-ratio family");
    return out;
}

InvolutivityReport involutivity(const PhaseModel& m, const std::vector<Expr>& family,
                                InvolutivityMode mode, int points, std::uint64_t seed) {
    const std::size_t k = family.size();
    InvolutivityReport rep;
    if (mode == InvolutivityMode::Symbolic) {
        rep.symbolic_zero = true;
        rep.symbolic.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            rep.symbolic[i].resize(k);
            for (std::size_t j = i + 1; j < k; ++j) {
                Expr b = poisson_bracket(m, family[i], family[j]);
                if (!b.is_zero()) rep.symbolic_zero = false;
                rep.symbolic[i][j] = b;
            }
        }
        return rep;
    }

    // Numeric sweep: evaluate the exact bracket expressions at random points.
    std::vector<std::vector<Expr>> brackets(k, std::vector<Expr>(k));
    std::vector<std::vector<CompiledExpr>> compiled(k, std::vector<CompiledExpr>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            brackets[i][j] = poisson_bracket(m, family[i], family[j]);
            compiled[i][j] = CompiledExpr(brackets[i][j]);
        }

    Lcg64 rng(seed);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(points),
                                         std::vector<double>(static_cast<std::size_t>(m.dim())));
    for (auto& p : pts)
        for (auto& x : p) x = rng.next_symmetric();

    rep.numeric.assign(k, std::vector<double>(k, 0.0));
    const int ki = static_cast<int>(k);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < ki; ++i) {
        for (int j = i + 1; j < ki; ++j) {
            double worst = 0.0;
            for (const auto& p : pts)
                worst = std::max(worst, std::abs(compiled[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(p, 0.0)));
            rep.numeric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = worst;
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) rep.max_abs = std::max(rep.max_abs, rep.numeric[i][j]);
    return rep;
}

} // namespace nonnoether

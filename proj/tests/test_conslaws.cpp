#include "nonnoether/conslaws.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/parser.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace nonnoether;

namespace {
Expr P(const PhaseModel& m, const std::string& s) { return parse_expr(s, m.coords); }
} // namespace

TEST_CASE("y_laws: toda2 and toda3 fixtures") {
    PhaseModel m2 = build_toda(2);
    auto y2 = y_laws(m2);
    auto e2 = fixtures::y_toda2();
    REQUIRE(y2.size() == 2);
    CHECK(y2[0] == P(m2, e2[0]));
    CHECK(y2[1] == P(m2, e2[1]));

    PhaseModel m3 = build_toda(3);
    auto y3 = y_laws(m3);
    auto e3 = fixtures::y_toda3();
    REQUIRE(y3.size() == 3);
    for (int k = 0; k < 3; ++k)
        CHECK(y3[static_cast<std::size_t>(k)] == P(m3, e3[static_cast<std::size_t>(k)]));
}

TEST_CASE("y_laws: zero generator gives zero laws") {
    PhaseModel m = build_toda(2);
    m.E = MultiVec(m.dim(), 1);
    m.s.reset();
    for (const Expr& y : y_laws(m)) CHECK(y.is_zero());
}

TEST_CASE("c_and_i_laws: binomial relation C = binom(n,k) Y exactly, n = 2..5") {
    for (int n : {2, 3, 4, 5}) {
        PhaseModel m = build_toda(n);
        auto Y = y_laws(m);
        std::vector<Expr> C, I;
        c_and_i_laws(m, n, C, I);
        for (int k = 1; k <= n; ++k) {
            Expr expect = Y[static_cast<std::size_t>(k - 1)] * binomial(n, k);
            CHECK(C[static_cast<std::size_t>(k - 1)] == expect);
        }
    }
}

TEST_CASE("c_and_i_laws: printed trace families") {
    PhaseModel m2 = build_toda(2);
    std::vector<Expr> C2, I2;
    c_and_i_laws(m2, 2, C2, I2);
    auto e2 = fixtures::i_laws_toda2();
    CHECK(I2[0] == P(m2, e2[0]));
    CHECK(I2[1] == P(m2, e2[1]));

    PhaseModel m3 = build_toda(3);
    std::vector<Expr> C3, I3;
    c_and_i_laws(m3, 3, C3, I3);
    auto e3 = fixtures::i_laws_toda3();
    for (int k = 0; k < 3; ++k)
        CHECK(I3[static_cast<std::size_t>(k)] == P(m3, e3[static_cast<std::size_t>(k)]));
}

TEST_CASE("c_and_i_laws: n-particle trace family table for n = 4, 5") {
    for (int n : {4, 5}) {
        PhaseModel m = build_toda(n);
        std::vector<Expr> C, I;
        c_and_i_laws(m, 4, C, I);
        auto table = fixtures::i_laws_toda_n(n);
        for (int k = 0; k < 4; ++k)
            CHECK(I[static_cast<std::size_t>(k)] == P(m, table[static_cast<std::size_t>(k)]));
    }
}

TEST_CASE("conservation of every family member (symbolic, n = 2,3)") {
    for (int n : {2, 3}) {
        PhaseModel m = build_toda(n);
        ConservedSet s = conserved_set(m, n);
        for (const Expr& f : s.Y) CHECK(total_time_derivative(m, f).is_zero());
        for (const Expr& f : s.C) CHECK(total_time_derivative(m, f).is_zero());
        for (const Expr& f : s.I) CHECK(total_time_derivative(m, f).is_zero());
    }
}

TEST_CASE("conservation pointwise for n = 4, 5") {
    Lcg64 rng(99);
    for (int n : {4, 5}) {
        PhaseModel m = build_toda(n);
        ConservedSet s = conserved_set(m, n);
        std::vector<Expr> all;
        for (const auto& f : s.Y) all.push_back(total_time_derivative(m, f));
        for (const auto& f : s.I) all.push_back(total_time_derivative(m, f));
        for (const Expr& r : all) {
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> pt(static_cast<std::size_t>(m.dim()));
                for (auto& x : pt) x = rng.next_symmetric();
                double tt = rng.next_symmetric();
                CHECK(std::abs(r.evaluate(pt, tt)) < 1e-9);
            }
        }
    }
}

TEST_CASE("secular_roots: golden quadratic values for toda2") {
    PhaseModel m = build_toda(2);
    SecularRoots r = secular_roots(m, {1.0, 0.0, 0.0, 0.0}, 0.0);
    REQUIRE(r.roots.size() == 2);
    // roots of c^2 - c - 1
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(r.roots[0].real() == doctest::Approx(1.0 - golden).epsilon(1e-9));
    CHECK(r.roots[1].real() == doctest::Approx(golden).epsilon(1e-9));
    CHECK(!r.complex_roots);

    SecularRoots r0 = secular_roots(m, {0.0, 0.0, 0.0, 0.0}, 0.0);
    CHECK(r0.roots[0].real() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r0.roots[1].real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("secular_roots: zero generator gives zero roots") {
    PhaseModel m = build_toda(2);
    m.E = MultiVec(m.dim(), 1);
    m.s.reset();
    SecularRoots r = secular_roots(m, {0.3, -0.2, 0.5, 0.1}, 0.0);
    for (const auto& c : r.roots) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("secular identities: e_k(roots) and power sums at random points") {
    Lcg64 rng(4242);
    for (int n : {2, 3, 4, 5}) {
        PhaseModel m = build_toda(n);
        auto Y = y_laws(m);
        std::vector<Expr> C, I;
        c_and_i_laws(m, n, C, I);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<double> pt(static_cast<std::size_t>(m.dim()));
            for (auto& x : pt) x = rng.next_symmetric();
            SecularRoots r = secular_roots(m, pt, 0.0);
            CHECK(r.consistency_residual < 1e-8);
            // power sums against I^(k)
            for (int k = 1; k <= n; ++k) {
                std::complex<double> ps(0.0);
                for (const auto& c : r.roots) ps += std::pow(c, k);
                double expect = I[static_cast<std::size_t>(k - 1)].evaluate(pt, 0.0);
                CHECK(std::abs(ps - expect) <= 1e-8 * (1.0 + std::abs(expect)));
            }
        }
    }
}

TEST_CASE("involutivity: symbolic for toda2, numeric for toda4") {
    PhaseModel m2 = build_toda(2);
    auto rep2 = involutivity(m2, y_laws(m2), InvolutivityMode::Symbolic);
    CHECK(rep2.symbolic_zero);

    CHECK(poisson_bracket(m2, m2.h, m2.h).is_zero());

    PhaseModel m4 = build_toda(4);
    std::vector<Expr> C, I;
    c_and_i_laws(m4, 4, C, I);
    auto rep4 = involutivity(m4, I, InvolutivityMode::Numeric, 100, 42);
    CHECK(rep4.max_abs < 1e-8);
}

TEST_CASE("functional independence: Jacobian of the Y family has rank n") {
    Lcg64 rng(1234);
    for (int n : {2, 3, 4, 5}) {
        PhaseModel m = build_toda(n);
        auto Y = y_laws(m);
        std::vector<double> pt(static_cast<std::size_t>(m.dim()));
        for (auto& x : pt) x = rng.next_symmetric();
        Eigen::MatrixXd J(n, m.dim());
        for (int k = 0; k < n; ++k)
            for (int a = 0; a < m.dim(); ++a)
                J(k, a) = Y[static_cast<std::size_t>(k)].differentiate_coord(a).evaluate(pt, 0.0);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
        CHECK(qr.rank() == n);
    }
}

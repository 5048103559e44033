#include "nonnoether/conslaws.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/parser.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace nonnoether;

namespace {

Expr P(const PhaseModel& m, const std::string& s) { return parse_expr(s, m.coords); }

MultiVec basis_vec(int dim, int a) {
    MultiVec v(dim, 1);
    v.add_component({a}, Expr::constant(dim, Rational(1)));
    return v;
}

Form basis_form(int dim, int a) {
    Form f(dim, 1);
    f.add_component({a}, Expr::constant(dim, Rational(1)));
    return f;
}

// random polynomial of low degree over the model coordinates
Expr random_poly(Lcg64& rng, int dim) {
    Expr e(dim);
    int terms = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int t = 0; t < terms; ++t) {
        long long c = static_cast<long long>(rng.next_u64() % 5) - 2;
        if (c == 0) c = 1;
        Expr term = Expr::constant(dim, Rational(c));
        int monos = static_cast<int>(rng.next_u64() % 3);
        for (int i = 0; i < monos; ++i)
            term = term * Expr::coord(dim, static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim)));
        e += term;
    }
    return e;
}

MultiVec random_multivec(Lcg64& rng, int dim, int degree) {
    MultiVec v(dim, degree);
    int comps = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int c = 0; c < comps; ++c) {
        std::set<int> picked;
        while (static_cast<int>(picked.size()) < degree)
            picked.insert(static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim)));
        IndexTuple idx(picked.begin(), picked.end());
        v.add_component(idx, random_poly(rng, dim));
    }
    return v;
}

} // namespace

TEST_CASE("wedge: fixtures for the two-particle volume fields") {
    PhaseModel m = build_toda(2);
    MultiVec hatW = schouten(m.E, m.W);
    MultiVec ww = wedge(m.W, m.W);
    CHECK(top_coefficient(ww) == P(m, "-2"));
    CHECK(ww.components().size() == 1);
    MultiVec hw = wedge(hatW, m.W);
    CHECK(top_coefficient(hw) == P(m, "-(z1 + z2)"));
    MultiVec hh = wedge(hatW, hatW);
    CHECK(top_coefficient(hh) == P(m, "-2*(z1*z2 - exp(z3 - z4))"));
}

TEST_CASE("wedge: X ^ X = 0 for degree-1 fields") {
    Lcg64 rng(5);
    for (int i = 0; i < 10; ++i) {
        MultiVec x = random_multivec(rng, 4, 1);
        CHECK(wedge(x, x).is_zero());
    }
}

TEST_CASE("wedge: parallel path matches the serial reference exactly") {
    PhaseModel m = build_toda(4);
    MultiVec hatW = schouten(m.E, m.W);
    set_parallel_wedge(false);
    MultiVec serial = wedge_power(hatW, 3);
    set_parallel_wedge(true);
    MultiVec parallel = wedge_power(hatW, 3);
    set_parallel_wedge(false);
    CHECK(serial == parallel);
}

TEST_CASE("interior: dual basis pairing normalization") {
    int dim = 4;
    MultiVec v(dim, 2);
    v.add_component({0, 2}, Expr::constant(dim, Rational(1)));
    Form f(dim, 2);
    f.add_component({0, 2}, Expr::constant(dim, Rational(1)));
    CHECK(interior_scalar(v, f) == Expr::constant(dim, Rational(1)));
}

TEST_CASE("interior: i_E omega is a potential for L_E omega") {
    PhaseModel m = build_toda(2);
    Form theta = interior(m.E, m.omega);
    CHECK(exterior_derivative(theta) == lie_derivative(m.E, m.omega));
}

TEST_CASE("interior: C1 contraction fixture") {
    PhaseModel m = build_toda(2);
    Form le = lie_derivative(m.E, m.omega);
    CHECK(interior_scalar(m.W, le) == P(m, "z1 + z2"));
}

TEST_CASE("schouten: vector-field commutator") {
    int dim = 4;
    MultiVec d1 = basis_vec(dim, 0);
    MultiVec z1d2(dim, 1);
    z1d2.add_component({1}, Expr::coord(dim, 0));
    CHECK(schouten(d1, z1d2) == basis_vec(dim, 1));
}

TEST_CASE("schouten: [W,W] = 0 and [E,W] matches the printed bivector") {
    PhaseModel m = build_toda(2);
    CHECK(schouten(m.W, m.W).is_zero());
    CHECK(schouten(m.E, m.W) == fixtures::bivector_from_table(m, fixtures::hatw_toda2()));
}

TEST_CASE("schouten: [X, f] = X(f) and graded antisymmetry") {
    Lcg64 rng(17);
    int dim = 4;
    for (int i = 0; i < 12; ++i) {
        MultiVec X = random_multivec(rng, dim, 1);
        Expr f = random_poly(rng, dim);
        MultiVec fs = MultiVec::scalar(dim, f);
        CHECK(schouten(X, fs) == MultiVec::scalar(dim, interior_scalar(X, differential(f))));
    }
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= 2; ++q) {
            if (p + q == 0) continue;
            MultiVec a = random_multivec(rng, dim, p);
            MultiVec b = random_multivec(rng, dim, q);
            MultiVec ab = schouten(a, b);
            MultiVec ba = schouten(b, a);
            int sign = ((p - 1) * (q - 1)) % 2 == 0 ? -1 : 1;
            MultiVec expect(dim, ab.degree());
            for (const auto& [idx, e] : ba.components())
                expect.add_component(idx, sign < 0 ? -e : e);
            CHECK(ab == expect);
        }
    }
}

TEST_CASE("schouten: Liouville property for exact one-forms") {
    PhaseModel m = build_toda(2);
    Lcg64 rng(23);
    for (int i = 0; i < 8; ++i) {
        Expr f = random_poly(rng, 4);
        MultiVec xf = musical_raise(m, differential(f));
        CHECK(schouten(xf, m.W).is_zero());
    }
}

TEST_CASE("poisson bracket: Jacobi identity and homomorphism") {
    PhaseModel m = build_toda(2);
    Lcg64 rng(29);
    for (int i = 0; i < 6; ++i) {
        Expr f = random_poly(rng, 4), g = random_poly(rng, 4), h = random_poly(rng, 4);
        Expr jac = poisson_bracket(m, f, poisson_bracket(m, g, h)) +
                   poisson_bracket(m, h, poisson_bracket(m, f, g)) +
                   poisson_bracket(m, g, poisson_bracket(m, h, f));
        CHECK(jac.is_zero());

        MultiVec xf = musical_raise(m, differential(f));
        MultiVec xg = musical_raise(m, differential(g));
        MultiVec lhs = schouten(xf, xg);
        MultiVec rhs = musical_raise(m, differential(poisson_bracket(m, f, g)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("poisson bracket: {f,g} = L_{X_f} g = -L_{X_g} f") {
    PhaseModel m = build_toda(2);
    Lcg64 rng(31);
    for (int i = 0; i < 6; ++i) {
        Expr f = random_poly(rng, 4), g = random_poly(rng, 4);
        Expr fg = poisson_bracket(m, f, g);
        MultiVec xf = musical_raise(m, differential(f));
        MultiVec xg = musical_raise(m, differential(g));
        CHECK(fg == interior_scalar(xf, differential(g)));
        CHECK(fg == -interior_scalar(xg, differential(f)));
    }
}

TEST_CASE("exterior derivative: fixtures and nilpotency") {
    PhaseModel m = build_toda(2);
    Form u(4, 1);
    u.add_component({2}, Expr::coord(4, 0));  // z1 dz3
    Form du = exterior_derivative(u);
    Form expect(4, 2);
    expect.add_component({0, 2}, Expr::constant(4, Rational(1)));
    CHECK(du == expect);

    CHECK(exterior_derivative(m.omega).is_zero());
    CHECK(exterior_derivative(lie_derivative(m.E, m.omega)).is_zero());

    Lcg64 rng(37);
    for (int i = 0; i < 8; ++i) {
        Form f(4, 1);
        f.add_component({static_cast<int>(rng.next_u64() % 4)}, random_poly(rng, 4));
        CHECK(exterior_derivative(exterior_derivative(f)).is_zero());
    }
}

TEST_CASE("exterior derivative realization through the bracket") {
    // d(u) = Phi_omega([W, Phi_W(u)]) for 0-forms and basis 1-forms; this is
    // the identity that pins the bracket sign on (2,q) degrees.
    PhaseModel m = build_toda(2);
    Lcg64 rng(41);
    for (int i = 0; i < 6; ++i) {
        Expr f = random_poly(rng, 4);
        Form lhs = differential(f);
        Form rhs = musical_lower(m, schouten(m.W, MultiVec::scalar(4, f)));
        CHECK(lhs == rhs);

        Form u(4, 1);
        u.add_component({static_cast<int>(rng.next_u64() % 4)}, random_poly(rng, 4));
        Form lhs1 = exterior_derivative(u);
        Form rhs1 = musical_lower(m, schouten(m.W, musical_raise(m, u)));
        CHECK(lhs1 == rhs1);
    }
}

TEST_CASE("lie derivative: L_E omega matches Phi_omega([E,W])") {
    PhaseModel m = build_toda(2);
    Form via_cartan = lie_derivative(m.E, m.omega);
    Form via_musical = musical_lower(m, schouten(m.E, m.W));
    CHECK(via_cartan == via_musical);
    CHECK(via_cartan == fixtures::form_from_table(m, 2, fixtures::le_omega_toda_n(2)));
}

TEST_CASE("lie derivative: invariant volume form of toda3") {
    PhaseModel m = build_toda(3);
    MultiVec X = hamiltonian_field(m);
    CHECK(lie_derivative(X, *m.volume).is_zero());
}

TEST_CASE("lie derivative: constant-coefficient objects killed by basis fields") {
    PhaseModel m = build_toda(2);
    MultiVec d1 = basis_vec(4, 0);
    CHECK(lie_derivative(d1, m.omega).is_zero());
    CHECK(lie_derivative(d1, m.W).is_zero());
}

TEST_CASE("lie derivative: Cartan formula matches finite-difference pullback") {
    // Flow phi_eps of X applied to a 1-form u: (phi_eps^* u - u)/eps -> L_X u.
    PhaseModel m = build_toda(2);
    Lcg64 rng(43);
    MultiVec X = random_multivec(rng, 4, 1);
    Form u(4, 1);
    for (int a = 0; a < 4; ++a) u.add_component({a}, random_poly(rng, 4));
    Form lu = lie_derivative(X, u);

    std::vector<double> z{0.2, -0.4, 0.7, 0.1};
    double eps = 1e-5;
    // one Euler step of the flow and its Jacobian d(phi)/dz
    std::vector<double> flowed(4);
    std::vector<std::vector<double>> jac(4, std::vector<double>(4, 0.0));
    for (int a = 0; a < 4; ++a) {
        Expr xa = X.component_or_zero({a});
        flowed[static_cast<std::size_t>(a)] = z[static_cast<std::size_t>(a)] + eps * xa.evaluate(z, 0.0);
        for (int b = 0; b < 4; ++b)
            jac[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                (a == b ? 1.0 : 0.0) + eps * xa.differentiate_coord(b).evaluate(z, 0.0);
    }
    for (int b = 0; b < 4; ++b) {
        // (phi^* u)_b = sum_a u_a(phi(z)) dphi_a/dz_b
        double pulled = 0.0;
        for (int a = 0; a < 4; ++a)
            pulled += u.component_or_zero({a}).evaluate(flowed, 0.0) *
                      jac[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        double fd = (pulled - u.component_or_zero({b}).evaluate(z, 0.0)) / eps;
        double sym = lu.component_or_zero({b}).evaluate(z, 0.0);
        CHECK(std::abs(fd - sym) < 1e-4 * (1 + std::abs(sym)));
    }
}

TEST_CASE("musical: Hamiltonian field reproduces the equations of motion") {
    PhaseModel m = build_toda(2);
    MultiVec xh = hamiltonian_field(m);
    CHECK(xh.component_or_zero({0}) == P(m, "-exp(z3 - z4)"));
    CHECK(xh.component_or_zero({1}) == P(m, "exp(z3 - z4)"));
    CHECK(xh.component_or_zero({2}) == P(m, "z1"));
    CHECK(xh.component_or_zero({3}) == P(m, "z2"));
}

TEST_CASE("musical: raise/lower round trip on all basis elements") {
    PhaseModel m = build_toda(3);
    for (int a = 0; a < m.dim(); ++a) {
        Form u = basis_form(m.dim(), a);
        CHECK(musical_lower(m, musical_raise(m, u)) == u);
        MultiVec v = basis_vec(m.dim(), a);
        CHECK(musical_raise(m, musical_lower(m, v)) == v);
    }
}

TEST_CASE("musical: lowering hatW gives the second symplectic structure") {
    PhaseModel m = build_toda(2);
    MultiVec hatW = schouten(m.E, m.W);
    CHECK(musical_lower(m, hatW) == lie_derivative(m.E, m.omega));
}

TEST_CASE("model validation: derives omega for constant W and rejects bad pairs") {
    PhaseModel m = build_toda(2);
    PhaseModel copy = m;
    copy.omega_supplied = false;
    copy.omega = Form();
    copy.validate();
    CHECK(copy.omega == m.omega);

    PhaseModel bad = m;
    bad.omega = Form(4, 2);
    bad.omega.add_component({0, 2}, Expr::constant(4, Rational(2)));
    bad.omega.add_component({1, 3}, Expr::constant(4, Rational(1)));
    bad.omega_supplied = true;
    CHECK_THROWS_AS(bad.validate(), InconsistentPair);
}

TEST_CASE("degree errors") {
    PhaseModel m = build_toda(2);
    CHECK_THROWS_AS(wedge(wedge(m.W, m.W), m.W), DegreeOverflow);
    Form f(4, 1);
    f.add_component({0}, Expr::constant(4, Rational(1)));
    CHECK_THROWS_AS(interior(m.W, f), DegreeMismatch);
}

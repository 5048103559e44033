#include "nonnoether/conslaws.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/parser.hpp"
#include "nonnoether/symmetry.hpp"

#include <doctest.h>

using namespace nonnoether;

namespace {
Expr P(const PhaseModel& m, const std::string& s) { return parse_expr(s, m.coords); }

PhaseModel perturbed_toda(int n, int component) {
    PhaseModel m = build_toda(n);
    MultiVec E2(m.dim(), 1);
    for (const auto& [idx, e] : m.E.components()) E2.add_component(idx, e);
    E2.add_component({component}, Expr::coord(m.dim(), 0).pow(2));
    m.E = E2;
    return m;
}
} // namespace

TEST_CASE("check_symmetry: toda2 is a non-Noether symmetry") {
    PhaseModel m = build_toda(2);
    SymmetryReport r = check_symmetry(m);
    CHECK(r.is_symmetry);
    CHECK(!r.is_noether);
    CHECK(r.yang_baxter);
    CHECK(r.residuals.at("symmetry").is_zero());
}

TEST_CASE("check_symmetry: toda3 is a non-Noether symmetry") {
    PhaseModel m = build_toda(3);
    SymmetryReport r = check_symmetry(m);
    CHECK(r.is_symmetry);
    CHECK(!r.is_noether);
    CHECK(r.yang_baxter);
}

TEST_CASE("check_symmetry: the evolution field itself is Noether") {
    PhaseModel m = build_toda(2);
    m.E = hamiltonian_field(m);
    m.s.reset();
    SymmetryReport r = check_symmetry(m);
    CHECK(r.is_symmetry);
    CHECK(r.is_noether);
}

TEST_CASE("check_yang_baxter: generic perturbation breaks the condition") {
    PhaseModel m = build_toda(2);
    MultiVec E(m.dim(), 1);
    E.add_component({2}, Expr::coord(m.dim(), 0).pow(2));  // z1^2 d/dz3
    m.E = E;
    YangBaxterResult r = check_yang_baxter(m);
    CHECK(!r.residual.is_zero());
    CHECK(!r.defect.is_zero());
}

TEST_CASE("check_bihamiltonian: toda2 and toda3 triples vanish") {
    for (int n : {2, 3}) {
        PhaseModel m = build_toda(n);
        BiHamiltonianReport r = check_bihamiltonian(m);
        CHECK(r.compatible);
        CHECK(r.nondegenerate);
        if (n == 2) CHECK(r.wn_witness == P(m, "-2"));
    }
}

TEST_CASE("check_bihamiltonian: constant W with E = 0 degenerates consistently") {
    PhaseModel m = build_toda(2);
    m.E = MultiVec(m.dim(), 1);
    m.s.reset();
    BiHamiltonianReport r = check_bihamiltonian(m);
    CHECK(r.compatible);
    CHECK(schouten(m.E, m.W).is_zero());
}

TEST_CASE("hojman_invariant: toda3 sample") {
    PhaseModel m = build_toda(3);
    auto fam = hojman_invariant(hamiltonian_field(m), m.E, *m.volume, 1);
    CHECK(fam[0] == P(m, fixtures::hojman_j_toda3()));
    CHECK(fam[1] == P(m, fixtures::hojman_j1_toda3()));
}

TEST_CASE("hojman_invariant: E = X gives the zero invariant") {
    PhaseModel m = build_toda(3);
    MultiVec X = hamiltonian_field(m);
    auto fam = hojman_invariant(X, X, *m.volume, 1);
    CHECK(fam[0].is_zero());
    CHECK(fam[1].is_zero());
}

TEST_CASE("hojman_invariant: precondition failures") {
    PhaseModel m = build_toda(3);
    MultiVec bad(m.dim(), 1);
    bad.add_component({0}, Expr::coord(m.dim(), 0));
    CHECK_THROWS_AS(hojman_invariant(bad, m.E, *m.volume, 1), NotLiouville);
    MultiVec notsym(m.dim(), 1);
    notsym.add_component({0}, Expr::coord(m.dim(), 3).pow(2));
    CHECK_THROWS_AS(hojman_invariant(hamiltonian_field(m), notsym, *m.volume, 1), NotASymmetry);
}

TEST_CASE("orbit_family: toda chains give c0 = 3, c1 = -1") {
    for (int n : {2, 3, 4, 5}) {
        PhaseModel m = build_toda(n);
        Expr J(m.dim());
        for (int i = 0; i < n; ++i) J += Expr::coord(m.dim(), i);
        OrbitFamily fam = orbit_family(m, J, 2);
        REQUIRE(fam.c0.has_value());
        REQUIRE(fam.c1.has_value());
        CHECK(*fam.c0 == Rational(3));
        CHECK(*fam.c1 == Rational(-1));
        CHECK(fam.family[1] == P(m, fixtures::orbit_j1_toda_n(n)));
        CHECK(fam.family[2] == P(m, fixtures::orbit_j2_toda_n(n)));
    }
}

TEST_CASE("orbit_family: Hamiltonian seed gives a constant family") {
    PhaseModel m = build_toda(2);
    PhaseModel mh = m;
    mh.E = hamiltonian_field(m);
    mh.s = differential(m.h);
    OrbitFamily fam = orbit_family(mh, m.h, 2);
    CHECK(fam.family[1].is_zero());
    CHECK(fam.family[2].is_zero());
}

TEST_CASE("orbit_family: seed mismatch is rejected") {
    PhaseModel m = build_toda(2);
    m.s = differential(m.h);
    Expr J(m.dim());
    CHECK_THROWS_AS(orbit_family(m, J, 1), SeedMismatch);
    m.s.reset();
    CHECK_THROWS_AS(orbit_family(m, J, 1), SeedMismatch);
}

TEST_CASE("orbit_family: members are in involution (symbolic n <= 3)") {
    for (int n : {2, 3}) {
        PhaseModel m = build_toda(n);
        Expr J(m.dim());
        for (int i = 0; i < n; ++i) J += Expr::coord(m.dim(), i);
        OrbitFamily fam = orbit_family(m, J, 3);
        InvolutivityReport rep = involutivity(m, fam.family, InvolutivityMode::Symbolic);
        CHECK(rep.symbolic_zero);
    }
}

TEST_CASE("negative control: perturbed generator loses the symmetry") {
    PhaseModel m = perturbed_toda(2, 0);
    SymmetryReport r = check_symmetry(m);
    CHECK((!r.is_symmetry || !r.yang_baxter));
    CHECK((!r.residuals.at("symmetry").is_zero() || !r.residuals.at("yang_baxter").is_zero()));
}

TEST_CASE("d/dt Y^(k) vanishes for verified symmetries") {
    for (int n : {2, 3}) {
        PhaseModel m = build_toda(n);
        REQUIRE(check_symmetry(m).is_symmetry);
        for (const Expr& y : y_laws(m)) CHECK(total_time_derivative(m, y).is_zero());
    }
}

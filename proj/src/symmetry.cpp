#include "nonnoether/symmetry.hpp"

#include "nonnoether/errors.hpp"

namespace nonnoether {

namespace {

MultiVec subtract(const MultiVec& a, const MultiVec& b) {
    MultiVec r(a.dim(), a.degree());
    for (const auto& [idx, e] : a.components()) r.add_component(idx, e);
    for (const auto& [idx, e] : b.components()) r.add_component(idx, -e);
    return r;
}

MultiVec dE_dt(const MultiVec& E) {
    MultiVec r(E.dim(), 1);
    for (const auto& [idx, e] : E.components()) r.add_component(idx, e.differentiate_time());
    return r;
}

// Exact rational ratio a/b of two components, or nullopt when either the
// quotient is not an exact rational constant or b is zero.
std::optional<Rational> constant_ratio(const Expr& a, const Expr& b) {
    if (b.is_zero()) return std::nullopt;
    try {
        Expr q = a.exact_divide(b);
        if (!q.is_rational_constant()) return std::nullopt;
        return q.rational_value();
    } catch (const NotDivisible&) {
        return std::nullopt;
    }
}

// Tests U == c * V with a first-nonzero-component pivot; exact.
std::optional<Rational> proportionality_constant(const MultiVec& U, const MultiVec& V) {
    const Expr* pivot_u = nullptr;
    const Expr* pivot_v = nullptr;
    for (const auto& [idx, e] : V.components()) {
        if (!e.is_zero()) {
            pivot_v = &e;
            pivot_u = U.find(idx);
            break;
        }
    }
    if (!pivot_v) return std::nullopt;
    if (!pivot_u) {
        // U vanishes on the pivot; proportional only if U == 0 entirely.
        return U.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
    }
    auto c = constant_ratio(*pivot_u, *pivot_v);
    if (!c) return std::nullopt;
    // Verify across all components: U - c V == 0.
    MultiVec diff = U;
    for (const auto& [idx, e] : V.components()) diff.add_component(idx, -(e * *c));
    if (!diff.is_zero()) return std::nullopt;
    return c;
}

} // namespace

SymmetryReport check_symmetry(const PhaseModel& m) {
    SymmetryReport rep;
    const int expr_dim = static_cast<int>(m.coords.size());

    MultiVec Xh = hamiltonian_field(m);
    rep.symmetry_residual = subtract(dE_dt(m.E), schouten(m.E, Xh));
    rep.is_symmetry = rep.symmetry_residual.is_zero();

    rep.noether_residual = schouten(m.E, m.W);
    rep.is_noether = rep.is_symmetry && rep.noether_residual.is_zero();

    YangBaxterResult yb = check_yang_baxter(m);
    rep.yang_baxter_residual = yb.residual;
    rep.yang_baxter = yb.residual.is_zero();

    rep.residuals["symmetry"] = rep.symmetry_residual.first_nonzero(expr_dim);
    rep.residuals["noether"] = rep.noether_residual.first_nonzero(expr_dim);
    rep.residuals["yang_baxter"] = yb.defect;
    return rep;
}

YangBaxterResult check_yang_baxter(const PhaseModel& m) {
    MultiVec hatW = schouten(m.E, m.W);
    MultiVec inner = schouten(m.E, hatW);
    YangBaxterResult r;
    r.residual = schouten(inner, m.W);
    r.defect = r.residual.first_nonzero(static_cast<int>(m.coords.size()));
    return r;
}

BiHamiltonianReport check_bihamiltonian(const PhaseModel& m) {
    BiHamiltonianReport rep;
    MultiVec hatW = schouten(m.E, m.W);
    rep.r_ww = schouten(m.W, m.W);
    rep.r_hw_w = schouten(hatW, m.W);
    rep.r_hw_hw = schouten(hatW, hatW);
    rep.wn_witness = top_coefficient(wedge_power(m.W, m.n));
    rep.compatible = rep.r_ww.is_zero() && rep.r_hw_w.is_zero() && rep.r_hw_hw.is_zero();
    rep.nondegenerate = !rep.wn_witness.is_zero();
    return rep;
}

std::vector<Expr> hojman_invariant(const MultiVec& X, const MultiVec& E, const Form& volume,
                                   int depth) {
    const int expr_dim = volume.components().empty() ? X.dim()
                                                     : volume.components().begin()->second.dim();
    if (!lie_derivative(X, volume).is_zero())
        throw NotLiouville("volume form is not invariant under the evolution field");
    MultiVec comm_residual = subtract(dE_dt(E), schouten(E, X));
    if (!comm_residual.is_zero())
        throw NotASymmetry("E does not commute with the evolution field");

    Expr omega_coeff = top_coefficient(volume);
    Expr J = top_coefficient(lie_derivative(E, volume)).exact_divide(omega_coeff);

    std::vector<Expr> family{J};
    for (int k = 0; k < depth; ++k) {
        const Expr& prev = family.back();
        family.push_back(interior_scalar(E, differential(prev)));
    }
    // Conservation along X: dJ/dt = dJ/dt_explicit + X(J) = 0 for each member.
    for (const Expr& f : family) {
        Expr ddt = f.differentiate_time() + interior_scalar(X, differential(f));
        if (!ddt.is_zero())
            throw NotASymmetry("constructed invariant is not conserved; check preconditions");
    }
    (void)expr_dim;
    return family;
}

OrbitFamily orbit_family(const PhaseModel& m, const Expr& J, int depth) {
    if (!m.s) throw SeedMismatch("model has no seed 1-form s");
    MultiVec Ws = musical_raise(m, *m.s);
    MultiVec seed_residual = subtract(m.E, Ws);
    if (!seed_residual.is_zero()) throw SeedMismatch("E != W(s) for the supplied seed form");

    // The two sides of the first orbit condition, built from the proof
    // objects: with u' = i_{W(s)} L_{W(s)} omega,
    //   U = Phi_W(d u')            (left side)
    //   V = [W(s), [W(s), W]]      (right side)
    // and the condition reads U = c0 V.
    Form le_omega = lie_derivative(m.E, m.omega);
    Form uprime = interior(m.E, le_omega);
    MultiVec U = musical_raise(m, exterior_derivative(uprime));
    MultiVec V = schouten(m.E, schouten(m.E, m.W));

    OrbitFamily out;
    auto c0 = proportionality_constant(U, V);
    if (c0 && *c0 != Rational(-1)) out.c0 = c0;

    // Second condition: W(L_{W(s)} dJ) = c1 [W(s), W](dJ), with the bracket
    // taken in the Lie-derivative convention the proof uses, i.e. the
    // negative of the public bracket.
    Form dJ = differential(J);
    MultiVec A = musical_raise(m, lie_derivative(m.E, dJ));
    MultiVec hatW = schouten(m.E, m.W);
    MultiVec Y = contract(hatW, dJ);
    MultiVec Yneg(Y.dim(), Y.degree());
    for (const auto& [idx, e] : Y.components()) Yneg.add_component(idx, -e);
    auto c1 = proportionality_constant(A, Yneg);
    if (c1 && *c1 != Rational(0)) out.c1 = c1;

    out.family.push_back(J);
    for (int k = 0; k < depth; ++k)
        out.family.push_back(interior_scalar(m.E, differential(out.family.back())));
    return out;
}

} // namespace nonnoether

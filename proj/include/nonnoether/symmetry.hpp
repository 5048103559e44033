#pragma once

#include "nonnoether/geom.hpp"
#include "nonnoether/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nonnoether {

// Outcome of the symmetry checks. `residuals` holds, per property, a defect
// expression that is identically zero iff the property holds (the first
// nonzero component of the underlying tensor residual); the full residual
// tensors are kept alongside for diagnosis.
struct SymmetryReport {
    bool is_symmetry = false;
    bool is_noether = false;
    bool yang_baxter = false;
    MultiVec symmetry_residual;     // dE/dt - [E, W(dh)], degree 1
    MultiVec noether_residual;      // [E, W], degree 2 (zero iff Noether)
    MultiVec yang_baxter_residual;  // [[E,[E,W]], W], degree 3
    std::map<std::string, Expr> residuals;
};

// Verifies dE/dt = [E, W(dh)], classifies Noether vs non-Noether and runs
// the Yang-Baxter check.
SymmetryReport check_symmetry(const PhaseModel& m);

// Residual trivector of [[E,[E,W]],W], plus its defect expression.
struct YangBaxterResult {
    MultiVec residual;  // degree 3
    Expr defect;        // zero iff the condition holds
};
YangBaxterResult check_yang_baxter(const PhaseModel& m);

// Residuals of the compatibility triple [W,W], [hatW,W], [hatW,hatW] plus
// the nondegeneracy witness (top coefficient of W^n).
struct BiHamiltonianReport {
    MultiVec r_ww;
    MultiVec r_hw_w;
    MultiVec r_hw_hw;
    Expr wn_witness;
    bool compatible = false;
    bool nondegenerate = false;
};
BiHamiltonianReport check_bihamiltonian(const PhaseModel& m);

// Hojman construction: J = L_E(volume)/volume and its Lie ladder
// J^(k) = (L_E)^k J, k <= depth. Preconditions: L_X volume = 0 (else
// NotLiouville) and dE/dt = [E,X] (else NotASymmetry). Every member is
// verified conserved along X.
std::vector<Expr> hojman_invariant(const MultiVec& X, const MultiVec& E, const Form& volume,
                                   int depth);

// Orbit-family construction from the seed 1-form s with E = W(s):
// extracts the two proportionality constants and the ladder
// J^(k) = (L_{W(s)})^k J. Constants are exact rationals or absent when the
// defining proportionality fails (or c0 = -1 / c1 = 0).
struct OrbitFamily {
    std::optional<Rational> c0;
    std::optional<Rational> c1;
    std::vector<Expr> family;  // J^(0..depth)
};
OrbitFamily orbit_family(const PhaseModel& m, const Expr& J, int depth);

} // namespace nonnoether

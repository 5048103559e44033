#pragma once

#include "nonnoether/model.hpp"

#include <vector>

namespace nonnoether {

// Lax pair of the symmetry: L is the matrix of the invariant recursion
// operator on vector fields (column b holds the components of R_E(d_b)), P
// the corresponding evolution operator. L and P reproduce the printed
// two- and three-particle matrices entry for entry; note the printed pair
// uses mutually transposed layouts, so the Lax equation for this pair reads
// dL/dt = P^T L - L P^T (see lax_residual).
struct LaxPair {
    Tensor11 L;
    Tensor11 P;
};

LaxPair lax_pair(const PhaseModel& m);

// Entrywise (d/dt_explicit + {h,.}) L - (P^T L - L P^T); identically zero
// iff the Lax equation holds.
Tensor11 lax_residual(const PhaseModel& m, const LaxPair& lp);

// Recursion operator in both representations: R_vectors acts on vector
// fields by the matrix L (components (R X)_a = sum_b L_ab X_b), R_forms is
// its transpose acting on 1-forms ((R u)_a = sum_b L_ba u_b). The two are
// interior-pairing duals.
struct RecursionOperator {
    Tensor11 R_vectors;  // = L
    Tensor11 R_forms;    // = L^T
};

RecursionOperator fn_operator(const PhaseModel& m);

// Applies the form-side operator to a 1-form / the vector-side to a vector.
Form apply_to_form(const RecursionOperator& R, const Form& u);
MultiVec apply_to_vector(const RecursionOperator& R, const MultiVec& X);

// The second differential of the invariant bidifferential calculus:
// dbar u = Phi_omega([[E,W], Phi_W(u)]) for any form degree (for 0-forms
// this reduces to Phi_omega(hatW(df))).
Form dbar(const PhaseModel& m, const Form& u);

// Symbolic verification of the bicomplex identities on all coordinate
// functions and basis 1-forms, plus the Lenard ladder
// (k+1) dbar I^(k) = k d I^(k+1) for consecutive members of I.
struct BicomplexReport {
    bool dbar_nilpotent = false;     // dbar^2 = 0 on coords and basis 1-forms
    bool anticommutes = false;       // d dbar + dbar d = 0 on the same set
    bool lenard_holds = false;       // ladder residuals all zero
    std::vector<Form> dbar2_residuals;
    std::vector<Form> anticommute_residuals;
    std::vector<Form> lenard_residuals;
};
BicomplexReport bicomplex_verify(const PhaseModel& m, const std::vector<Expr>& I);

// Froelicher-Nijenhuis torsion T(R)(X,Y) on all coordinate basis pairs;
// entries are degree-1 multivector residuals. All zero iff torsion vanishes.
std::vector<MultiVec> fn_torsion(const PhaseModel& m, const RecursionOperator& R);

// Residual 1-forms (k+1) R_forms(dI^(k)) - k dI^(k+1).
std::vector<Form> recursion_check(const PhaseModel& m, const RecursionOperator& R,
                                  const std::vector<Expr>& I);

} // namespace nonnoether

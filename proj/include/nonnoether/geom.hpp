#pragma once

#include "nonnoether/model.hpp"
#include "nonnoether/tensors.hpp"

namespace nonnoether {

// Exterior and multivector calculus on a single global coordinate patch.
//
// Conventions, pinned once by the calibration fixtures and then frozen:
//  - interior(d_{i1}^...^d_{ip}, dz_{i1}^...^dz_{ip}) = +1 on increasing
//    tuples (contraction applies the first factor innermost);
//  - a p-vector applied to a 1-form inserts it into the first slot, so the
//    Hamiltonian field W(dh) reproduces the Toda equations of motion;
//  - Phi_omega(X) = -i_X omega, Phi_W(u) = W(u), mutually inverse;
//  - the Schouten bracket carries the sign (-1)^{p+q} relative to the
//    Lie-derivative convention on (p,q)-degrees, which makes [E, W] match
//    the bivector the conservation-law machinery expects and makes
//    d(u) = Phi_omega([W, Phi_W(u)]) hold verbatim.

MultiVec wedge(const MultiVec& a, const MultiVec& b);
Form wedge(const Form& a, const Form& b);

// Repeated wedge a^k; k = 0 gives the scalar 1.
MultiVec wedge_power(const MultiVec& a, int k);
Form wedge_power(const Form& a, int k);

// Full contraction pairing of a degree-p multivector into a degree-q >= p
// form; the result has degree q - p (a scalar Expr when p = q).
Form interior(const MultiVec& v, const Form& f);
Expr interior_scalar(const MultiVec& v, const Form& f);

// p-vector applied to a 1-form (first-slot insertion), degree p -> p-1.
MultiVec contract(const MultiVec& v, const Form& u1);

// Schouten bracket, degree p + q - 1. Extends the vector-field commutator;
// graded antisymmetry [a,b] = -(-1)^{(p-1)(q-1)}[b,a] holds, [X, f] = X(f).
MultiVec schouten(const MultiVec& a, const MultiVec& b);

Form exterior_derivative(const Form& f);

// d of a 0-form given as Expr.
Form differential(const Expr& f);

Form lie_derivative(const MultiVec& X, const Form& f);       // Cartan formula
MultiVec lie_derivative(const MultiVec& X, const MultiVec& v); // Schouten bracket

enum class MusicalDirection { Lower, Raise };
// Index lowering (Phi_omega) / raising (Phi_W), extended multiplicatively to
// all degrees. Requires a validated model.
Form musical_lower(const PhaseModel& m, const MultiVec& v);
MultiVec musical_raise(const PhaseModel& m, const Form& f);

// {f,g} = interior(W, df ^ dg).
Expr poisson_bracket(const PhaseModel& m, const Expr& f, const Expr& g);

// W(dh): the evolution vector field, X_h(f) = {h, f}.
MultiVec hamiltonian_field(const PhaseModel& m);

// Total time derivative d/dt = d/dt_explicit + {h, .}.
Expr total_time_derivative(const PhaseModel& m, const Expr& f);

// Coefficient of the single top-degree component (degree 2n input).
Expr top_coefficient(const MultiVec& v);
Expr top_coefficient(const Form& f);

// Enables OpenMP parallelism over output components in wedge products; the
// serial path is kept as the reference and results are identical (exact
// arithmetic). Returns the previous setting.
bool set_parallel_wedge(bool enabled);
bool parallel_wedge_enabled();

} // namespace nonnoether

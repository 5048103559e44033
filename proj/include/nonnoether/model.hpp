#pragma once

#include "nonnoether/tensors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nonnoether {

// A complete finite-dimensional system: 2n-dimensional phase space with
// coordinates `coords`, Poisson bivector W, symplectic form omega (supplied
// or derived), Hamiltonian h and a candidate symmetry generator E whose
// components may carry explicit t. `s` seeds the orbit-family construction
// and `volume` the Hojman invariant.
struct PhaseModel {
    std::string name;
    int n = 0;  // half-dimension; phase space dimension is 2n
    std::vector<std::string> coords;
    MultiVec W;          // degree 2
    Form omega;          // degree 2, populated by validate() when derivable
    bool omega_supplied = false;
    Expr h;
    MultiVec E;          // degree 1
    std::optional<Form> s;       // degree 1
    std::optional<Form> volume;  // degree 2n

    int dim() const { return 2 * n; }

    // Checks the structural invariants before any command runs:
    //  - W has maximal rank (W^n != 0, symbolically),
    //  - omega, when absent and W has rational-constant components, is
    //    derived by exact matrix inversion,
    //  - Phi_omega . Phi_W = id on a basis (else InconsistentPair),
    //  - d(omega) = 0.
    void validate();
};

} // namespace nonnoether

#pragma once

#include "nonnoether/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nonnoether {

// Builder spec for the n-particle open Toda chain in the z-convention
// z_i = p_i, z_{n+i} = q_i (coordinates named z1..z2n).
struct TodaSpec {
    int n = 2;
};

// Builds the full phase model: W = sum d/dp_i ^ d/dq_i, omega the matching
// symplectic form, h = 1/2 sum p_i^2 + sum e^{q_i - q_{i+1}}, the explicit
// time-dependent symmetry generator E, the seed 1-form s = -i_E omega and
// the coordinate volume form. The model is validated before return.
PhaseModel build_toda(int n);

enum class PdeEquation { KdV, MKdV };

struct PdeSpec {
    PdeEquation equation = PdeEquation::KdV;
    double domain_length = 80.0;
    int grid_points = 1024;  // power of two >= 256
    // Conserved-density integrands, as expressions in (u, ux, uxx, uxxx);
    // the rational prefactors of the printed functionals are folded in.
    std::vector<Expr> densities;
    std::vector<std::string> density_names;
};

PdeSpec make_pde_spec(PdeEquation eq, double domain_length, int grid_points);

// Spatially discretized PDE model: right-hand side via 4th-order central
// differences on a periodic grid, plus density evaluators.
struct PdeModel {
    PdeSpec spec;
    double dx = 0.0;

    // du/dt = rhs(u); `out` must have grid_points entries.
    void rhs(const std::vector<double>& u, std::vector<double>& out, bool parallel) const;
    // Value of density k on state u (rectangle rule, compensated summation).
    double density(int k, const std::vector<double>& u) const;
    int density_count() const { return static_cast<int>(spec.densities.size()); }
};

PdeModel build_pde(const PdeSpec& spec);

// Traveling soliton profile for u_t + u_xxx + u u_x = 0:
// u(x,t) = 12 kappa^2 sech^2(kappa (x - 4 kappa^2 t - x0)), periodized.
double kdv_soliton(double x, double t, double kappa, double x0, double domain_length);

// Built-in model names accepted by the CLI: toda2, toda3, toda4, toda5,
// toda:<n>. Throws UnknownSymbol for anything else.
PhaseModel built_in_model(const std::string& name);
bool is_builtin_model_name(const std::string& name);

// ---------------------------------------------------------------------------
// Fixture tables: the expected outputs for the two- and three-particle Toda
// chains, stored as expression strings in the expression grammar and parsed
// at test time. Entries carry corrections where the printed source tables
// are internally inconsistent (the corrections are forced by the cross-
// identities the suite checks, e.g. the secular/elementary-symmetric link).
// ---------------------------------------------------------------------------
namespace fixtures {

struct SparseEntry {
    std::vector<int> index;  // 0-based coordinate indices
    std::string expr;
};

MultiVec bivector_from_table(const PhaseModel& m, const std::vector<SparseEntry>& entries);
Form form_from_table(const PhaseModel& m, int degree, const std::vector<SparseEntry>& entries);
Tensor11 matrix_from_table(const PhaseModel& m, const std::vector<std::vector<std::string>>& rows,
                           bool acts_on_forms);

// hat W = [E, W] for toda2 / toda3.
std::vector<SparseEntry> hatw_toda2();
std::vector<SparseEntry> hatw_toda3();

// Y-law families.
std::vector<std::string> y_toda2();
std::vector<std::string> y_toda3();

// Lax pair matrices.
std::vector<std::vector<std::string>> lax_l_toda2();
std::vector<std::vector<std::string>> lax_p_toda2();
std::vector<std::vector<std::string>> lax_l_toda3();
std::vector<std::vector<std::string>> lax_p_toda3();

// I^(k) via the trace formulas.
std::vector<std::string> i_laws_toda2();
std::vector<std::string> i_laws_toda3();

// dbar images of the coordinate functions.
std::vector<std::vector<SparseEntry>> dbar_toda2();
std::vector<std::vector<SparseEntry>> dbar_toda3();
// dbar images for the n-particle chain (general table).
std::vector<std::vector<SparseEntry>> dbar_toda_n(int n);

// L_E omega.
std::vector<SparseEntry> le_omega_toda2();
std::vector<SparseEntry> le_omega_toda_n(int n);

// Orbit family members J^(1), J^(2) for the n-particle chain.
std::string orbit_j1_toda_n(int n);
std::string orbit_j2_toda_n(int n);

// I^(1..4) of the n-particle chain (trace-family table).
std::vector<std::string> i_laws_toda_n(int n);

// Hojman invariants of toda3.
std::string hojman_j_toda3();
std::string hojman_j1_toda3();

} // namespace fixtures

} // namespace nonnoether

#pragma once

#include "nonnoether/model.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/operators.hpp"

#include <string>
#include <vector>

namespace nonnoether {

// Sampled Hamiltonian flow with conserved-quantity monitors.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // one state per recorded time
    std::vector<std::string> monitor_names;
    // monitors[k][i] = value of monitor k at times[i]
    std::vector<std::vector<double>> monitors;

    // Max over monitors of the relative drift |v(t) - v(0)| / (1 + |v(0)|).
    double max_relative_drift() const;
    double relative_drift(int k) const;
};

// Classical fixed-step RK4 on z' = W(dh)(z); monitor expressions are
// compiled once and recorded every step. Throws NonFiniteState on blowup.
Trajectory integrate_hamiltonian(const PhaseModel& m, const std::vector<double>& start, double T,
                                 double dt, const std::vector<Expr>& monitors,
                                 const std::vector<std::string>& monitor_names = {});

// Max absolute eigenvalue drift of the numeric Lax matrix along a
// trajectory, eigenvalues matched across time by nearest-neighbor
// continuation. `stride` subsamples the trajectory.
double isospectral_check(const PhaseModel& m, const LaxPair& lp, const Trajectory& traj,
                         int stride = 100);

// Measured RK4 convergence order from a dt-halving ladder against a
// reference run at dt/2^(levels+2).
double rk4_order_estimate(const PhaseModel& m, const std::vector<double>& start, double T,
                          double dt0, int levels = 3);

// Report of one PDE integration.
struct PdeRunReport {
    double dt = 0.0;
    int steps = 0;
    std::vector<std::string> density_names;
    std::vector<double> initial;          // density values at t = 0
    std::vector<double> final_values;     // density values at t = T
    std::vector<double> relative_drift;   // |final - initial| / (1 + |initial|)
    double l2_shape_error = -1.0;         // vs exact soliton, when applicable
};

// RK4 + 4th-order finite differences on the periodic grid. dt defaults to
// the stability heuristic 0.2 dx^3 when dt_override <= 0. When `kappa` > 0
// the initial profile is the traveling soliton and the report carries the
// L2 shape error against the exact translate at t = T.
PdeRunReport pde_run(const PdeModel& model, const std::vector<double>& u0, double T,
                     double dt_override = 0.0, int monitored_densities = 3, double kappa = 0.0,
                     double x0 = 0.0, bool parallel = true);

// Convenience: soliton initial condition for a KdV model.
std::vector<double> soliton_profile(const PdeModel& model, double kappa, double x0);

// sech-pulse profile u(x) = a sech(k (x - x0)), periodized domain.
std::vector<double> sech_profile(const PdeModel& model, double amplitude, double k, double x0);

} // namespace nonnoether

#include "nonnoether/numverify.hpp"

#include "nonnoether/compiled.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace nonnoether {

double Trajectory::relative_drift(int k) const {
    const auto& series = monitors[static_cast<std::size_t>(k)];
    if (series.empty()) return 0.0;
    double v0 = series.front();
    double worst = 0.0;
    for (double v : series) worst = std::max(worst, std::abs(v - v0));
    return worst / (1.0 + std::abs(v0));
}

double Trajectory::max_relative_drift() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < monitors.size(); ++k)
        worst = std::max(worst, relative_drift(static_cast<int>(k)));
    return worst;
}

namespace {

struct FlowField {
    std::vector<CompiledExpr> components;

    explicit FlowField(const PhaseModel& m) {
        MultiVec Xh = hamiltonian_field(m);
        components.reserve(static_cast<std::size_t>(m.dim()));
        for (int a = 0; a < m.dim(); ++a)
            components.emplace_back(Xh.component_or_zero({a}));
    }

    void eval(const std::vector<double>& z, double t, std::vector<double>& out) const {
        for (std::size_t a = 0; a < components.size(); ++a) out[a] = components[a].eval(z, t);
    }
};

void rk4_step(const FlowField& f, std::vector<double>& z, double t, double dt,
              std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
    const std::size_t d = z.size();
    f.eval(z, t, k1);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
    f.eval(tmp, t + 0.5 * dt, k2);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
    f.eval(tmp, t + 0.5 * dt, k3);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + dt * k3[i];
    f.eval(tmp, t + dt, k4);
    for (std::size_t i = 0; i < d; ++i)
        z[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
}

void check_finite(const std::vector<double>& z) {
    for (double v : z)
        if (!std::isfinite(v)) throw NonFiniteState("trajectory left the finite domain");
}

std::vector<double> integrate_raw(const PhaseModel& m, std::vector<double> z, double T, double dt) {
    FlowField f(m);
    const std::size_t d = z.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    long long steps = std::llround(T / dt);
    double t = 0.0;
    for (long long s = 0; s < steps; ++s) {
        rk4_step(f, z, t, dt, k1, k2, k3, k4, tmp);
        t = (s + 1) * dt;
    }
    check_finite(z);
    return z;
}

} // namespace

Trajectory integrate_hamiltonian(const PhaseModel& m, const std::vector<double>& start, double T,
                                 double dt, const std::vector<Expr>& monitors,
                                 const std::vector<std::string>& monitor_names) {
    if (dt <= 0 || T <= 0) throw NonFiniteState("T and dt must be positive");
    if (static_cast<int>(start.size()) != m.dim())
        throw UnboundCoordinate("start state has wrong dimension");
    if (!m.h.differentiate_time().is_zero())
        throw NotASymmetry("integrate_hamiltonian requires a time-independent Hamiltonian");

    FlowField f(m);
    std::vector<CompiledExpr> mons;
    mons.reserve(monitors.size());
    for (const Expr& e : monitors) mons.emplace_back(e);

    Trajectory traj;
    traj.monitor_names = monitor_names;
    if (traj.monitor_names.size() != monitors.size()) {
        traj.monitor_names.resize(monitors.size());
        for (std::size_t i = 0; i < monitors.size(); ++i)
            if (traj.monitor_names[i].empty())
                traj.monitor_names[i] = "monitor" + std::to_string(i + 1);
    }
    traj.monitors.resize(monitors.size());

    std::vector<double> z = start;
    const std::size_t d = z.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    long long steps = std::llround(T / dt);

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(z);
        for (std::size_t k = 0; k < mons.size(); ++k)
            traj.monitors[k].push_back(mons[k].eval(z, t));
    };
    record(0.0);
    double t = 0.0;
    for (long long s = 0; s < steps; ++s) {
        rk4_step(f, z, t, dt, k1, k2, k3, k4, tmp);
        t = (s + 1) * dt;
        check_finite(z);
        record(t);
    }
    return traj;
}

double isospectral_check(const PhaseModel& m, const LaxPair& lp, const Trajectory& traj,
                         int stride) {
    const int d = m.dim();
    std::vector<std::vector<CompiledExpr>> entries(static_cast<std::size_t>(d),
                                                   std::vector<CompiledExpr>(static_cast<std::size_t>(d)));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            CompiledExpr(lp.L.at(a, b));

    std::vector<std::complex<double>> prev;
    std::vector<std::complex<double>> ref;
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); i += static_cast<std::size_t>(std::max(1, stride))) {
        Eigen::MatrixXd M(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                M(a, b) = entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].eval(
                    traj.states[i], traj.times[i]);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
        if (solver.info() != Eigen::Success) throw EigenSolveFailure("Lax eigensolve failed");
        std::vector<std::complex<double>> eig(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) eig[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);

        if (prev.empty()) {
            std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
                if (a.real() != b.real()) return a.real() < b.real();
                return a.imag() < b.imag();
            });
            ref = eig;
        } else {
            // Greedy nearest-neighbor continuation against the previous frame.
            std::vector<std::complex<double>> matched(eig.size());
            std::vector<bool> used(eig.size(), false);
            for (std::size_t p = 0; p < prev.size(); ++p) {
                double best = std::numeric_limits<double>::infinity();
                std::size_t bi = 0;
                for (std::size_t q = 0; q < eig.size(); ++q) {
                    if (used[q]) continue;
                    double dd = std::abs(eig[q] - prev[p]);
                    if (dd < best) {
                        best = dd;
                        bi = q;
                    }
                }
                used[bi] = true;
                matched[p] = eig[bi];
            }
            eig = matched;
            for (std::size_t k = 0; k < eig.size(); ++k)
                worst = std::max(worst, std::abs(eig[k] - ref[k]));
        }
        prev = eig;
    }
    return worst;
}

double rk4_order_estimate(const PhaseModel& m, const std::vector<double>& start, double T,
                          double dt0, int levels) {
    std::vector<double> ref = integrate_raw(m, start, T, dt0 / std::pow(2.0, levels + 2));
    std::vector<double> errors;
    for (int l = 0; l < levels; ++l) {
        std::vector<double> z = integrate_raw(m, start, T, dt0 / std::pow(2.0, l));
        double err = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) err = std::max(err, std::abs(z[i] - ref[i]));
        errors.push_back(err);
    }
    // Least-squares slope of log2(error) against refinement level.
    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_xy = 0;
    for (int l = 0; l < levels; ++l) {
        double x = l, y = std::log2(errors[static_cast<std::size_t>(l)]);
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
    }
    double n = levels;
    double slope = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x * sum_x);
    return -slope;  // error halves 2^order per level
}

std::vector<double> soliton_profile(const PdeModel& model, double kappa, double x0) {
    std::vector<double> u(static_cast<std::size_t>(model.spec.grid_points));
    for (int i = 0; i < model.spec.grid_points; ++i)
        u[static_cast<std::size_t>(i)] = kdv_soliton(i * model.dx, 0.0, kappa, x0,
                                                     model.spec.domain_length);
    return u;
}

std::vector<double> sech_profile(const PdeModel& model, double amplitude, double k, double x0) {
    std::vector<double> u(static_cast<std::size_t>(model.spec.grid_points));
    for (int i = 0; i < model.spec.grid_points; ++i) {
        double xi = i * model.dx - x0;
        double L = model.spec.domain_length;
        xi = std::fmod(xi, L);
        if (xi < -L / 2) xi += L;
        if (xi >= L / 2) xi -= L;
        u[static_cast<std::size_t>(i)] = amplitude / std::cosh(k * xi);
    }
    return u;
}

PdeRunReport pde_run(const PdeModel& model, const std::vector<double>& u0, double T,
                     double dt_override, int monitored_densities, double kappa, double x0,
                     bool parallel) {
    const int n = model.spec.grid_points;
    if (static_cast<int>(u0.size()) != n) throw BadGrid("initial profile size mismatch");

    PdeRunReport rep;
    rep.dt = dt_override > 0 ? dt_override : 0.2 * model.dx * model.dx * model.dx;
    long long steps = std::llround(T / rep.dt);
    rep.steps = static_cast<int>(steps);
    int nd = std::min<int>(monitored_densities, model.density_count());

    std::vector<double> u = u0;
    for (int k = 0; k < nd; ++k) {
        rep.density_names.push_back(model.spec.density_names[static_cast<std::size_t>(k)]);
        rep.initial.push_back(model.density(k, u));
    }

    std::vector<double> k1(static_cast<std::size_t>(n)), k2(static_cast<std::size_t>(n)),
        k3(static_cast<std::size_t>(n)), k4(static_cast<std::size_t>(n)),
        tmp(static_cast<std::size_t>(n));
    const double blowup_bound = 1e6;
    for (long long s = 0; s < steps; ++s) {
        model.rhs(u, k1, parallel);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] +
                                               0.5 * rep.dt * k1[static_cast<std::size_t>(i)];
        model.rhs(tmp, k2, parallel);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] +
                                               0.5 * rep.dt * k2[static_cast<std::size_t>(i)];
        model.rhs(tmp, k3, parallel);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] +
                                               rep.dt * k3[static_cast<std::size_t>(i)];
        model.rhs(tmp, k4, parallel);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            u[static_cast<std::size_t>(i)] +=
                rep.dt / 6.0 *
                (k1[static_cast<std::size_t>(i)] +
                 2.0 * (k2[static_cast<std::size_t>(i)] + k3[static_cast<std::size_t>(i)]) +
                 k4[static_cast<std::size_t>(i)]);
            norm = std::max(norm, std::abs(u[static_cast<std::size_t>(i)]));
        }
        if (!std::isfinite(norm) || norm > blowup_bound)
            throw Unstable("PDE run diverged; check the CFL step");
    }

    double t_final = steps * rep.dt;
    for (int k = 0; k < nd; ++k) {
        double v = model.density(k, u);
        rep.final_values.push_back(v);
        rep.relative_drift.push_back(std::abs(v - rep.initial[static_cast<std::size_t>(k)]) /
                                     (1.0 + std::abs(rep.initial[static_cast<std::size_t>(k)])));
    }

    if (kappa > 0.0 && model.spec.equation == PdeEquation::KdV) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            double exact = kdv_soliton(i * model.dx, t_final, kappa, x0, model.spec.domain_length);
            double diff = u[static_cast<std::size_t>(i)] - exact;
            num += diff * diff;
            den += exact * exact;
        }
        rep.l2_shape_error = std::sqrt(num / den);
    }
    return rep;
}

} // namespace nonnoether

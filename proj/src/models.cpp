#include "nonnoether/models.hpp"

#include "nonnoether/compiled.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/parser.hpp"

#include <cmath>
#include <sstream>

namespace nonnoether {

namespace {

int epsilon_sign(int k) { return k > 0 ? 1 : (k < 0 ? -1 : 0); }

// exp(q_i - q_{i+1}) in the z-coordinates, 1-based particle index.
Expr exp_gap(int n, int i) {
    std::vector<Rational> w(static_cast<std::size_t>(2 * n), Rational(0));
    w[static_cast<std::size_t>(n + i - 1)] = 1;
    w[static_cast<std::size_t>(n + i)] = -1;
    return Expr::exp_linear(2 * n, w);
}

Expr p_coord(int n, int i) { return Expr::coord(2 * n, i - 1); }

} // namespace

PhaseModel build_toda(int n) {
    if (n < 2) throw UnknownSymbol("toda model needs n >= 2");
    const int d = 2 * n;
    PhaseModel m;
    m.name = "toda" + std::to_string(n);
    m.n = n;
    m.coords.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) m.coords[static_cast<std::size_t>(i)] = "z" + std::to_string(i + 1);

    m.W = MultiVec(d, 2);
    m.omega = Form(d, 2);
    for (int i = 0; i < n; ++i) {
        m.W.add_component({i, n + i}, Expr::constant(d, Rational(1)));
        m.omega.add_component({i, n + i}, Expr::constant(d, Rational(1)));
    }
    m.omega_supplied = true;

    m.h = Expr(d);
    for (int i = 1; i <= n; ++i) m.h += Expr::constant(d, Rational(1, 2)) * p_coord(n, i).pow(2);
    for (int i = 1; i <= n - 1; ++i) m.h += exp_gap(n, i);

    const Expr t = Expr::time_var(d);
    const Expr half = Expr::constant(d, Rational(1, 2));
    m.E = MultiVec(d, 1);
    for (int i = 1; i <= n; ++i) {
        // momentum components
        Expr ep = half * p_coord(n, i).pow(2);
        if (i >= 2) {
            ep += Expr::constant(d, Rational(n - i + 2)) * exp_gap(n, i - 1);
            ep += half * t * (p_coord(n, i - 1) + p_coord(n, i)) * exp_gap(n, i - 1);
        }
        if (i <= n - 1) {
            ep -= Expr::constant(d, Rational(n - i)) * exp_gap(n, i);
            ep -= half * t * (p_coord(n, i) + p_coord(n, i + 1)) * exp_gap(n, i);
        }
        m.E.add_component({i - 1}, ep);

        // position components
        Expr eq = Expr::constant(d, Rational(n - i + 1)) * p_coord(n, i);
        for (int k = 1; k < i; ++k) eq -= half * p_coord(n, k);
        for (int k = i + 1; k <= n; ++k) eq += half * p_coord(n, k);
        Expr inner = p_coord(n, i).pow(2);
        if (epsilon_sign(i - 1)) inner += exp_gap(n, i - 1);
        if (epsilon_sign(n - i)) inner += exp_gap(n, i);
        eq += half * t * inner;
        m.E.add_component({n + i - 1}, eq);
    }

    m.s = musical_lower(m, m.E);  // Phi_omega(E) = -i_E omega

    Form vol(d, d);
    IndexTuple top(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) top[static_cast<std::size_t>(i)] = i;
    vol.add_component(top, Expr::constant(d, Rational(1)));
    m.volume = vol;

    m.validate();
    return m;
}

PdeSpec make_pde_spec(PdeEquation eq, double domain_length, int grid_points) {
    PdeSpec s;
    s.equation = eq;
    s.domain_length = domain_length;
    s.grid_points = grid_points;
    const std::vector<std::string> names{"u", "ux", "uxx", "uxxx"};
    auto P = [&](const std::string& txt) { return parse_expr(txt, names); };
    if (eq == PdeEquation::KdV) {
        s.densities = {
            P("2/3*u"),
            P("4/9*u^2"),
            P("8/27*u^3 - 8/9*ux^2"),
            P("16/81*u^4 - 64/27*u*ux^2 + 64/45*uxx^2"),
        };
    } else {
        s.densities = {
            P("-4*u^2"),
            P("16*u^4 + 16*ux^2"),
            P("-64*u^6 - 320*u^2*ux^2 - 32*uxx^2"),
            P("256*u^8 + 3584*u^4*ux^2 - 1792/5*ux^4 + 3584/5*u^2*uxx^2 + 256/5*uxxx^2"),
        };
    }
    s.density_names = {"I1", "I2", "I3", "I4"};
    return s;
}

PdeModel build_pde(const PdeSpec& spec) {
    if (spec.grid_points < 256 || (spec.grid_points & (spec.grid_points - 1)) != 0)
        throw BadGrid("grid must be a power of two >= 256");
    if (spec.domain_length <= 0) throw BadGrid("domain length must be positive");
    PdeModel m;
    m.spec = spec;
    m.dx = spec.domain_length / spec.grid_points;
    return m;
}

namespace {

inline int wrap(int i, int n) { return (i % n + n) % n; }

// 4th-order central first derivative.
inline double d1(const std::vector<double>& u, int i, int n, double inv12h) {
    return (-u[static_cast<std::size_t>(wrap(i + 2, n))] + 8 * u[static_cast<std::size_t>(wrap(i + 1, n))] -
            8 * u[static_cast<std::size_t>(wrap(i - 1, n))] + u[static_cast<std::size_t>(wrap(i - 2, n))]) *
           inv12h;
}

// 4th-order central second derivative.
inline double d2(const std::vector<double>& u, int i, int n, double inv12h2) {
    return (-u[static_cast<std::size_t>(wrap(i + 2, n))] + 16 * u[static_cast<std::size_t>(wrap(i + 1, n))] -
            30 * u[static_cast<std::size_t>(i)] + 16 * u[static_cast<std::size_t>(wrap(i - 1, n))] -
            u[static_cast<std::size_t>(wrap(i - 2, n))]) *
           inv12h2;
}

// 4th-order central third derivative.
inline double d3(const std::vector<double>& u, int i, int n, double inv8h3) {
    return (u[static_cast<std::size_t>(wrap(i - 3, n))] - 8 * u[static_cast<std::size_t>(wrap(i - 2, n))] +
            13 * u[static_cast<std::size_t>(wrap(i - 1, n))] - 13 * u[static_cast<std::size_t>(wrap(i + 1, n))] +
            8 * u[static_cast<std::size_t>(wrap(i + 2, n))] - u[static_cast<std::size_t>(wrap(i + 3, n))]) *
           inv8h3;
}

} // namespace

void PdeModel::rhs(const std::vector<double>& u, std::vector<double>& out, bool parallel) const {
    const int n = spec.grid_points;
    const double inv12h = 1.0 / (12.0 * dx);
    const double inv8h3 = 1.0 / (8.0 * dx * dx * dx);
    const bool kdv = spec.equation == PdeEquation::KdV;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < n; ++i) {
        double ux = d1(u, i, n, inv12h);
        double uxxx = d3(u, i, n, inv8h3);
        double ui = u[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = kdv ? -(uxxx + ui * ux) : -uxxx + 6.0 * ui * ui * ux;
    }
#ifndef _OPENMP
    (void)parallel;
#endif
}

double PdeModel::density(int k, const std::vector<double>& u) const {
    const int n = spec.grid_points;
    const double inv12h = 1.0 / (12.0 * dx);
    const double inv12h2 = 1.0 / (12.0 * dx * dx);
    const double inv8h3 = 1.0 / (8.0 * dx * dx * dx);
    CompiledExpr c(spec.densities[static_cast<std::size_t>(k)]);
    // Kahan summation keeps the conservation-drift floor well below the
    // discretization error the acceptance tolerances measure.
    double sum = 0.0, comp = 0.0;
    double vars[4];
    for (int i = 0; i < n; ++i) {
        vars[0] = u[static_cast<std::size_t>(i)];
        vars[1] = d1(u, i, n, inv12h);
        vars[2] = d2(u, i, n, inv12h2);
        vars[3] = d3(u, i, n, inv8h3);
        double y = c.eval(vars, 0.0) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * dx;
}

double kdv_soliton(double x, double t, double kappa, double x0, double domain_length) {
    double xi = std::fmod(x - 4.0 * kappa * kappa * t - x0, domain_length);
    if (xi < -domain_length / 2) xi += domain_length;
    if (xi >= domain_length / 2) xi -= domain_length;
    double s = 1.0 / std::cosh(kappa * xi);
    return 12.0 * kappa * kappa * s * s;
}

bool is_builtin_model_name(const std::string& name) {
    if (name.rfind("toda:", 0) == 0) return true;
    return name == "toda2" || name == "toda3" || name == "toda4" || name == "toda5";
}

PhaseModel built_in_model(const std::string& name) {
    if (name.rfind("toda:", 0) == 0) {
        int n = std::stoi(name.substr(5));
        return build_toda(n);
    }
    if (name.rfind("toda", 0) == 0 && name.size() == 5) {
        int n = name[4] - '0';
        if (n >= 2 && n <= 9) return build_toda(n);
    }
    throw UnknownSymbol("unknown built-in model '" + name + "'");
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------
namespace fixtures {

MultiVec bivector_from_table(const PhaseModel& m, const std::vector<SparseEntry>& entries) {
    MultiVec v(m.dim(), 2);
    for (const auto& e : entries) v.add_component(e.index, parse_expr(e.expr, m.coords));
    return v;
}

Form form_from_table(const PhaseModel& m, int degree, const std::vector<SparseEntry>& entries) {
    Form f(m.dim(), degree);
    for (const auto& e : entries) f.add_component(e.index, parse_expr(e.expr, m.coords));
    return f;
}

Tensor11 matrix_from_table(const PhaseModel& m, const std::vector<std::vector<std::string>>& rows,
                           bool acts_on_forms) {
    Tensor11 t(m.dim(), acts_on_forms);
    for (int a = 0; a < m.dim(); ++a)
        for (int b = 0; b < m.dim(); ++b)
            t.at(a, b) = parse_expr(rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], m.coords);
    return t;
}

std::vector<SparseEntry> hatw_toda2() {
    return {
        {{0, 2}, "z1"},
        {{1, 3}, "z2"},
        {{0, 1}, "exp(z3 - z4)"},
        {{2, 3}, "1"},
    };
}

// The printed three-particle table garbles one basis bivector; the q-q block
// below is the one the n-particle formula produces and the only one
// consistent with the Y-law samples and [hatW, W] = 0.
std::vector<SparseEntry> hatw_toda3() {
    return {
        {{0, 3}, "z1"},
        {{1, 4}, "z2"},
        {{2, 5}, "z3"},
        {{0, 1}, "exp(z4 - z5)"},
        {{1, 2}, "exp(z5 - z6)"},
        {{3, 4}, "1"},
        {{3, 5}, "1"},
        {{4, 5}, "1"},
    };
}

std::vector<std::string> y_toda2() {
    return {"1/2*z1 + 1/2*z2", "z1*z2 - exp(z3 - z4)"};
}

// Y^(1) carries 1/3, not the printed 1/6: the secular identity
// Y^(k) = (n-k)!k!/n! e_k(c) with sum c_i = z1+z2+z3 fixes the coefficient.
std::vector<std::string> y_toda3() {
    return {
        "1/3*(z1 + z2 + z3)",
        "1/3*(z1*z2 + z1*z3 + z2*z3 - exp(z4 - z5) - exp(z5 - z6))",
        "z1*z2*z3 - z3*exp(z4 - z5) - z1*exp(z5 - z6)",
    };
}

std::vector<std::vector<std::string>> lax_l_toda2() {
    return {
        {"z1", "0", "0", "-exp(z3 - z4)"},
        {"0", "z2", "exp(z3 - z4)", "0"},
        {"0", "1", "z1", "0"},
        {"-1", "0", "0", "z2"},
    };
}

std::vector<std::vector<std::string>> lax_p_toda2() {
    return {
        {"0", "0", "1", "0"},
        {"0", "0", "0", "1"},
        {"-exp(z3 - z4)", "exp(z3 - z4)", "0", "0"},
        {"exp(z3 - z4)", "-exp(z3 - z4)", "0", "0"},
    };
}

std::vector<std::vector<std::string>> lax_l_toda3() {
    return {
        {"z1", "0", "0", "0", "-exp(z4 - z5)", "0"},
        {"0", "z2", "0", "exp(z4 - z5)", "0", "-exp(z5 - z6)"},
        {"0", "0", "z3", "0", "exp(z5 - z6)", "0"},
        {"0", "-1", "-1", "z1", "0", "0"},
        {"1", "0", "-1", "0", "z2", "0"},
        {"1", "1", "0", "0", "0", "z3"},
    };
}

std::vector<std::vector<std::string>> lax_p_toda3() {
    return {
        {"0", "0", "0", "1", "0", "0"},
        {"0", "0", "0", "0", "1", "0"},
        {"0", "0", "0", "0", "0", "1"},
        {"-exp(z4 - z5)", "exp(z4 - z5)", "0", "0", "0", "0"},
        {"exp(z4 - z5)", "-exp(z4 - z5) - exp(z5 - z6)", "exp(z5 - z6)", "0", "0", "0"},
        {"0", "exp(z5 - z6)", "-exp(z5 - z6)", "0", "0", "0"},
    };
}

std::vector<std::string> i_laws_toda2() {
    return {"z1 + z2", "z1^2 + z2^2 + 2*exp(z3 - z4)"};
}

// I^(1) includes z3; the trace of the printed Lax matrix fixes it.
std::vector<std::string> i_laws_toda3() {
    return {
        "z1 + z2 + z3",
        "z1^2 + z2^2 + z3^2 + 2*exp(z4 - z5) + 2*exp(z5 - z6)",
        "z1^3 + z2^3 + z3^3 + 3*(z1 + z2)*exp(z4 - z5) + 3*(z2 + z3)*exp(z5 - z6)",
    };
}

std::vector<std::vector<SparseEntry>> dbar_toda2() {
    return {
        {{{0}, "z1"}, {{3}, "-exp(z3 - z4)"}},
        {{{1}, "z2"}, {{2}, "exp(z3 - z4)"}},
        {{{2}, "z1"}, {{1}, "1"}},
        {{{3}, "z2"}, {{0}, "-1"}},
    };
}

std::vector<std::vector<SparseEntry>> dbar_toda3() {
    return {
        {{{0}, "z1"}, {{4}, "-exp(z4 - z5)"}},
        {{{1}, "z2"}, {{3}, "exp(z4 - z5)"}, {{5}, "-exp(z5 - z6)"}},
        {{{2}, "z3"}, {{4}, "exp(z5 - z6)"}},
        {{{3}, "z1"}, {{1}, "-1"}, {{2}, "-1"}},
        {{{4}, "z2"}, {{0}, "1"}, {{2}, "-1"}},
        {{{5}, "z3"}, {{0}, "1"}, {{1}, "1"}},
    };
}

namespace {

std::string gap(int n, int i) {
    std::ostringstream os;
    os << "exp(z" << (n + i) << " - z" << (n + i + 1) << ")";
    return os.str();
}

} // namespace

std::vector<std::vector<SparseEntry>> dbar_toda_n(int n) {
    std::vector<std::vector<SparseEntry>> table(static_cast<std::size_t>(2 * n));
    for (int i = 1; i <= n; ++i) {
        // dbar p_i = p_i dp_i - e^{q_i - q_{i+1}} dq_{i+1} + e^{q_{i-1} - q_i} dq_i
        auto& dp = table[static_cast<std::size_t>(i - 1)];
        dp.push_back({{i - 1}, "z" + std::to_string(i)});
        if (i <= n - 1) dp.push_back({{n + i}, "-" + gap(n, i)});
        if (i >= 2) dp.push_back({{n + i - 1}, gap(n, i - 1)});
        // dbar q_i = p_i dq_i + sum_{j>i} dp_j - sum_{j<i} dp_j
        auto& dq = table[static_cast<std::size_t>(n + i - 1)];
        dq.push_back({{n + i - 1}, "z" + std::to_string(i)});
        for (int j = i + 1; j <= n; ++j) dq.push_back({{j - 1}, "1"});
        for (int j = 1; j < i; ++j) dq.push_back({{j - 1}, "-1"});
    }
    return table;
}

std::vector<SparseEntry> le_omega_toda_n(int n) {
    std::vector<SparseEntry> entries;
    for (int i = 1; i <= n; ++i) entries.push_back({{i - 1, n + i - 1}, "z" + std::to_string(i)});
    for (int i = 1; i <= n - 1; ++i) entries.push_back({{n + i - 1, n + i}, gap(n, i)});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) entries.push_back({{i - 1, j - 1}, "1"});
    return entries;
}

std::vector<SparseEntry> le_omega_toda2() { return le_omega_toda_n(2); }

std::string orbit_j1_toda_n(int n) {
    std::ostringstream os;
    for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "1/2*z" << i << "^2";
    for (int i = 1; i <= n - 1; ++i) os << " + " << gap(n, i);
    return os.str();
}

std::string orbit_j2_toda_n(int n) {
    std::ostringstream os;
    for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "1/2*z" << i << "^3";
    for (int i = 1; i <= n - 1; ++i)
        os << " + 3/2*(z" << i << " + z" << (i + 1) << ")*" << gap(n, i);
    return os.str();
}

std::vector<std::string> i_laws_toda_n(int n) {
    std::vector<std::string> laws;
    {
        std::ostringstream os;
        for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "z" << i;
        laws.push_back(os.str());
    }
    {
        std::ostringstream os;
        for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "z" << i << "^2";
        for (int i = 1; i <= n - 1; ++i) os << " + 2*" << gap(n, i);
        laws.push_back(os.str());
    }
    {
        std::ostringstream os;
        for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "z" << i << "^3";
        for (int i = 1; i <= n - 1; ++i)
            os << " + 3*(z" << i << " + z" << (i + 1) << ")*" << gap(n, i);
        laws.push_back(os.str());
    }
    {
        std::ostringstream os;
        for (int i = 1; i <= n; ++i) os << (i > 1 ? " + " : "") << "z" << i << "^4";
        for (int i = 1; i <= n - 1; ++i)
            os << " + 4*(z" << i << "^2 + 2*z" << i << "*z" << (i + 1) << " + z" << (i + 1) << "^2)*"
               << gap(n, i);
        for (int i = 1; i <= n - 1; ++i)
            os << " + 2*exp(2*z" << (n + i) << " - 2*z" << (n + i + 1) << ")";
        for (int i = 1; i <= n - 2; ++i)
            os << " + 4*exp(z" << (n + i) << " - z" << (n + i + 2) << ")";
        laws.push_back(os.str());
    }
    return laws;
}

std::string hojman_j_toda3() { return "z1 + z2 + z3"; }

std::string hojman_j1_toda3() {
    return "1/2*(z1^2 + z2^2 + z3^2) + exp(z4 - z5) + exp(z5 - z6)";
}

} // namespace fixtures

} // namespace nonnoether

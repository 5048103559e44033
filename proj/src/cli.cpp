#include "nonnoether/cli.hpp"

#include "nonnoether/conslaws.hpp"
#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/modelfile.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/numverify.hpp"
#include "nonnoether/operators.hpp"
#include "nonnoether/parser.hpp"
#include "nonnoether/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace nonnoether::cli {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

struct ReportBuilder {
    json root;
    json checks = json::array();
    bool all_pass = true;

    ReportBuilder(const std::string& command, std::uint64_t seed) {
        root["schema"] = kReportSchema;
        root["version"] = kToolVersion;
        root["command"] = command;
        root["seed"] = seed;
    }

    void add(const std::string& name, bool pass, const json& detail = json::object()) {
        json c = detail;
        c["name"] = name;
        c["status"] = pass ? "pass" : "fail";
        checks.push_back(c);
        if (!pass) all_pass = false;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (detail.contains("value")) std::cout << ": " << detail["value"].dump();
        if (!pass && detail.contains("residual")) std::cout << "  residual=" << detail["residual"].dump();
        std::cout << "\n";
    }

    void info(const std::string& key, const json& value) { root[key] = value; }

    int finish(const std::string& json_path) {
        root["checks"] = checks;
        root["ok"] = all_pass;
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) {
                std::cerr << "error: cannot write JSON report to " << json_path << "\n";
                return 2;
            }
            out << root.dump(2) << "\n";
        }
        return all_pass ? 0 : 1;
    }
};

struct CommonOpts {
    std::string model_name;
    std::string file_path;
    std::string json_path;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    int points = 100;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model_name, "built-in model name (toda2..toda5, toda:<n>)");
    cmd->add_option("--file", o.file_path, "path to a JSON model file");
    cmd->add_option("--json", o.json_path, "write the machine-readable report here");
    cmd->add_option("--seed", o.seed, "PRNG seed for sampled checks");
    cmd->add_option("--tol", o.tol, "numeric tolerance");
    cmd->add_option("--points", o.points, "sample-point count for numeric sweeps");
}

PhaseModel load_model(const CommonOpts& o) {
    if (!o.file_path.empty()) return load_model_file(o.file_path);
    if (!o.model_name.empty()) return built_in_model(o.model_name);
    throw ParseError("no model given: use --model <name> or --file <path>");
}

std::vector<double> parse_point(const std::string& csv, int dim, std::uint64_t seed) {
    std::vector<double> p;
    if (csv.empty()) {
        Lcg64 rng(seed);
        for (int i = 0; i < dim; ++i) p.push_back(rng.next_symmetric());
        return p;
    }
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
    if (static_cast<int>(p.size()) != dim)
        throw ParseError("point must have exactly " + std::to_string(dim) + " components");
    return p;
}

json expr_json(const Expr& e, const PhaseModel& m) { return e.to_string(m.coords); }

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int run_symcheck(const CommonOpts& o) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("symcheck", o.seed);
    rep.info("model", m.name);
    SymmetryReport sr = check_symmetry(m);
    rep.add("is_symmetry", sr.is_symmetry,
            {{"residual", expr_json(sr.residuals.at("symmetry"), m)}});
    rep.add("yang_baxter", sr.yang_baxter,
            {{"residual", expr_json(sr.residuals.at("yang_baxter"), m)}});
    std::cout << "is_noether=" << (sr.is_noether ? "true" : "false") << "\n";
    rep.info("is_noether", sr.is_noether);
    rep.info("is_symmetry", sr.is_symmetry);
    rep.info("yang_baxter", sr.yang_baxter);
    return rep.finish(o.json_path);
}

int run_conslaws(const CommonOpts& o, const std::string& family, const std::string& point_csv,
                 double time, int kmax_opt, const std::string& invol_mode) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("conslaws", o.seed);
    rep.info("model", m.name);
    rep.info("family", family);
    int kmax = kmax_opt > 0 ? kmax_opt : m.n;

    if (family == "Y") {
        std::vector<Expr> Y = y_laws(m);
        json list = json::array();
        for (std::size_t k = 0; k < Y.size(); ++k) {
            bool conserved = total_time_derivative(m, Y[k]).is_zero();
            std::string txt = Y[k].to_string(m.coords);
            std::cout << "Y(" << (k + 1) << ") = " << txt << "\n";
            list.push_back(txt);
            rep.add("Y" + std::to_string(k + 1) + "_conserved", conserved);
        }
        rep.info("expressions", list);
    } else if (family == "C" || family == "I") {
        std::vector<Expr> C, I;
        c_and_i_laws(m, kmax, C, I);
        const auto& fam = (family == "C") ? C : I;
        json list = json::array();
        for (std::size_t k = 0; k < fam.size(); ++k) {
            bool conserved = total_time_derivative(m, fam[k]).is_zero();
            std::string txt = fam[k].to_string(m.coords);
            std::cout << family << "(" << (k + 1) << ") = " << txt << "\n";
            list.push_back(txt);
            rep.add(family + std::to_string(k + 1) + "_conserved", conserved);
        }
        rep.info("expressions", list);
    } else if (family == "roots") {
        std::vector<double> p = parse_point(point_csv, m.dim(), o.seed);
        SecularRoots r = secular_roots(m, p, time);
        json list = json::array();
        for (const auto& c : r.roots) {
            std::cout << "root: " << fmt_double(c.real());
            if (r.complex_roots) std::cout << " + " << fmt_double(c.imag()) << "i";
            std::cout << "\n";
            list.push_back({{"re", c.real()}, {"im", c.imag()}});
        }
        rep.info("roots", list);
        rep.info("complex_roots", r.complex_roots);
        rep.info("pairing_warning", r.pairing_warning);
        rep.add("secular_consistency", r.consistency_residual <= 1e-8,
                {{"value", r.consistency_residual}});
    } else {
        throw ParseError("--family must be one of Y, C, I, roots");
    }

    if (invol_mode == "symbolic" || invol_mode == "numeric") {
        std::vector<Expr> fam = y_laws(m);
        InvolutivityMode mode =
            invol_mode == "symbolic" ? InvolutivityMode::Symbolic : InvolutivityMode::Numeric;
        InvolutivityReport ir = involutivity(m, fam, mode, o.points, o.seed);
        if (mode == InvolutivityMode::Symbolic)
            rep.add("involutivity_symbolic", ir.symbolic_zero);
        else
            rep.add("involutivity_numeric", ir.max_abs < o.tol, {{"value", ir.max_abs}});
    }
    return rep.finish(o.json_path);
}

int run_lax(const CommonOpts& o) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("lax", o.seed);
    rep.info("model", m.name);
    LaxPair lp = lax_pair(m);
    json lmat = json::array(), pmat = json::array();
    for (int a = 0; a < m.dim(); ++a) {
        json lrow = json::array(), prow = json::array();
        for (int b = 0; b < m.dim(); ++b) {
            lrow.push_back(lp.L.at(a, b).to_string(m.coords));
            prow.push_back(lp.P.at(a, b).to_string(m.coords));
        }
        lmat.push_back(lrow);
        pmat.push_back(prow);
    }
    rep.info("L", lmat);
    rep.info("P", pmat);
    std::cout << "L nonzero entries: " << lp.L.nonzero_count() << "\n";
    Tensor11 res = lax_residual(m, lp);
    rep.add("lax_equation", res.is_zero(),
            {{"residual", res.first_nonzero().to_string(m.coords)}});
    return rep.finish(o.json_path);
}

int run_bidiff(const CommonOpts& o) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("bidiff", o.seed);
    rep.info("model", m.name);
    std::vector<Expr> C, I;
    c_and_i_laws(m, m.n, C, I);

    json table = json::array();
    for (int a = 0; a < m.dim(); ++a) {
        Form img = dbar(m, Form::scalar(m.dim(), Expr::coord(m.dim(), a)));
        json row = json::array();
        for (const auto& [idx, e] : img.components())
            row.push_back({{"i", idx[0] + 1}, {"expr", e.to_string(m.coords)}});
        table.push_back(row);
        std::cout << "dbar " << m.coords[static_cast<std::size_t>(a)] << " = ";
        bool first = true;
        for (const auto& [idx, e] : img.components()) {
            if (!first) std::cout << " + ";
            std::cout << "(" << e.to_string(m.coords) << ")*d" << m.coords[static_cast<std::size_t>(idx[0])];
            first = false;
        }
        std::cout << "\n";
    }
    rep.info("dbar_coords", table);

    BicomplexReport br = bicomplex_verify(m, I);
    rep.add("dbar_nilpotent", br.dbar_nilpotent);
    rep.add("anticommutes", br.anticommutes);
    rep.add("lenard_scheme", br.lenard_holds);
    return rep.finish(o.json_path);
}

int run_fnop(const CommonOpts& o) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("fnop", o.seed);
    rep.info("model", m.name);
    RecursionOperator R = fn_operator(m);
    json mat = json::array();
    for (int a = 0; a < m.dim(); ++a) {
        json row = json::array();
        for (int b = 0; b < m.dim(); ++b) row.push_back(R.R_vectors.at(a, b).to_string(m.coords));
        mat.push_back(row);
    }
    rep.info("R_vectors", mat);

    bool duality = R.R_forms == R.R_vectors.transposed();
    rep.add("transpose_duality", duality);

    auto torsion = fn_torsion(m, R);
    bool torsion_zero = true;
    for (const auto& t : torsion)
        if (!t.is_zero()) torsion_zero = false;
    rep.add("torsion_vanishes", torsion_zero);

    std::vector<Expr> C, I;
    c_and_i_laws(m, m.n, C, I);
    auto rec = recursion_check(m, R, I);
    bool rec_zero = true;
    for (const auto& r : rec)
        if (!r.is_zero()) rec_zero = false;
    rep.add("recursion_relation", rec_zero);

    Tensor11 invariance(m.dim(), false);
    for (int a = 0; a < m.dim(); ++a)
        for (int b = 0; b < m.dim(); ++b)
            invariance.at(a, b) = total_time_derivative(m, R.R_vectors.at(a, b));
    rep.add("operator_invariant", invariance.is_zero());
    return rep.finish(o.json_path);
}

int run_orbit(const CommonOpts& o, const std::string& j_text, int depth) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("orbit", o.seed);
    rep.info("model", m.name);
    Expr J;
    if (!j_text.empty()) {
        J = parse_expr(j_text, m.coords);
    } else {
        // default: total momentum of the first n coordinates
        J = Expr(m.dim());
        for (int i = 0; i < m.n; ++i) J += Expr::coord(m.dim(), i);
    }
    OrbitFamily fam = orbit_family(m, J, depth);
    rep.add("c0_found", fam.c0.has_value(),
            {{"value", fam.c0 ? rational_to_string(*fam.c0) : "none"}});
    rep.add("c1_found", fam.c1.has_value(),
            {{"value", fam.c1 ? rational_to_string(*fam.c1) : "none"}});
    json list = json::array();
    for (std::size_t k = 0; k < fam.family.size(); ++k) {
        std::string txt = fam.family[k].to_string(m.coords);
        std::cout << "J(" << k << ") = " << txt << "\n";
        list.push_back(txt);
    }
    rep.info("family", list);
    InvolutivityReport ir = involutivity(m, fam.family, InvolutivityMode::Numeric, o.points, o.seed);
    rep.add("family_involutive_numeric", ir.max_abs < o.tol, {{"value", ir.max_abs}});
    return rep.finish(o.json_path);
}

int run_hojman(const CommonOpts& o, int depth) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("hojman", o.seed);
    rep.info("model", m.name);
    if (!m.volume) throw ParseError("model has no volume form; hojman needs one");
    std::vector<Expr> family = hojman_invariant(hamiltonian_field(m), m.E, *m.volume, depth);
    json list = json::array();
    for (std::size_t k = 0; k < family.size(); ++k) {
        std::string txt = family[k].to_string(m.coords);
        std::cout << "J(" << k << ") = " << txt << "\n";
        list.push_back(txt);
    }
    rep.info("family", list);
    rep.add("family_conserved", true);  // hojman_invariant verifies internally
    return rep.finish(o.json_path);
}

int run_numverify(const CommonOpts& o, double T, double dt, const std::string& start_csv) {
    PhaseModel m = load_model(o);
    ReportBuilder rep("numverify", o.seed);
    rep.info("model", m.name);
    rep.info("T", T);
    rep.info("dt", dt);

    std::vector<double> start;
    if (!start_csv.empty()) {
        start = parse_point(start_csv, m.dim(), o.seed);
    } else if (m.name == "toda2") {
        start = {1.0, -1.0, 1.0, 0.0};
    } else {
        start = parse_point("", m.dim(), o.seed);
    }
    rep.info("start", start);

    std::vector<Expr> monitors = y_laws(m);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < monitors.size(); ++k) names.push_back("Y" + std::to_string(k + 1));
    monitors.push_back(m.h);
    names.push_back("h");

    Trajectory traj = integrate_hamiltonian(m, start, T, dt, monitors, names);
    json drift = json::object();
    for (std::size_t k = 0; k < monitors.size(); ++k) {
        double dr = traj.relative_drift(static_cast<int>(k));
        drift[names[k]] = dr;
        std::cout << "drift " << names[k] << " = " << fmt_double(dr) << "\n";
        rep.add("drift_" + names[k], dr < o.tol, {{"value", dr}});
    }
    rep.info("drift", drift);

    LaxPair lp = lax_pair(m);
    double eig_drift = isospectral_check(m, lp, traj, 100);
    std::cout << "lax eigenvalue drift = " << fmt_double(eig_drift) << "\n";
    rep.add("lax_eigenvalue_drift", eig_drift < 1e-6, {{"value", eig_drift}});
    return rep.finish(o.json_path);
}

int run_pde(const CommonOpts& o, const std::string& which, int grid, double T, double dt,
            double kappa, double length) {
    ReportBuilder rep("pde", o.seed);
    rep.info("equation", which);
    PdeEquation eq;
    if (which == "kdv")
        eq = PdeEquation::KdV;
    else if (which == "mkdv")
        eq = PdeEquation::MKdV;
    else
        throw ParseError("--model must be kdv or mkdv for the pde command");

    PdeModel model = build_pde(make_pde_spec(eq, length, grid));
    rep.info("grid", grid);
    rep.info("domain_length", length);

    PdeRunReport r;
    if (eq == PdeEquation::KdV) {
        double x0 = length / 4.0;
        std::vector<double> u0 = soliton_profile(model, kappa, x0);
        r = pde_run(model, u0, T, dt, 3, kappa, x0);
        rep.info("kappa", kappa);
    } else {
        std::vector<double> u0 = sech_profile(model, 0.5, 1.0, length / 2.0);
        r = pde_run(model, u0, T, dt, 2);
    }
    rep.info("dt", r.dt);
    rep.info("steps", r.steps);

    const std::vector<double> kdv_tols{1e-7, 1e-6, 1e-4};
    const std::vector<double> mkdv_tols{1e-6, 1e-6};
    const auto& tols = eq == PdeEquation::KdV ? kdv_tols : mkdv_tols;
    for (std::size_t k = 0; k < r.relative_drift.size(); ++k) {
        double tol = k < tols.size() ? tols[k] : 1e-4;
        std::cout << "drift " << r.density_names[k] << " = " << fmt_double(r.relative_drift[k]) << "\n";
        rep.add("drift_" + r.density_names[k], r.relative_drift[k] < tol,
                {{"value", r.relative_drift[k]}, {"tolerance", tol}});
    }
    if (r.l2_shape_error >= 0) {
        std::cout << "soliton L2 shape error = " << fmt_double(r.l2_shape_error) << "\n";
        rep.add("l2_shape_error", r.l2_shape_error < 1e-3, {{"value", r.l2_shape_error}});
    }
    return rep.finish(o.json_path);
}

int run_export(const CommonOpts& o, const std::string& out_path) {
    PhaseModel m = load_model(o);
    std::string text = model_to_json_text(m);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write to '" + out_path + "'");
        out << text;
    }
    ReportBuilder rep("export-model", o.seed);
    rep.info("model", m.name);
    rep.add("exported", true);
    return rep.finish(o.json_path);
}

int run_fixtures(const CommonOpts& o);

} // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"non-Noether symmetry toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string family = "Y", point_csv, invol_mode, j_text, start_csv, out_path;
    std::string pde_model = "kdv";
    double T = 10.0, dt = 1e-3, kappa = 0.5, length = 80.0, time_at = 0.0;
    int kmax = 0, depth = 3, hdepth = 2, grid = 1024;

    auto* symcheck = app.add_subcommand("symcheck", "verify and classify the symmetry generator");
    add_common(symcheck, o);

    auto* conslaws_cmd = app.add_subcommand("conslaws", "conservation-law families");
    add_common(conslaws_cmd, o);
    conslaws_cmd->add_option("--family", family, "Y | C | I | roots");
    conslaws_cmd->add_option("--point", point_csv, "phase-space point (csv) for roots");
    conslaws_cmd->add_option("--time", time_at, "time for roots evaluation");
    conslaws_cmd->add_option("--kmax", kmax, "number of I-laws (default n)");
    conslaws_cmd->add_option("--involutivity", invol_mode, "also check involutivity: symbolic | numeric");

    auto* lax = app.add_subcommand("lax", "Lax pair and residual");
    add_common(lax, o);

    auto* bidiff = app.add_subcommand("bidiff", "bidifferential calculus");
    add_common(bidiff, o);

    auto* fnop = app.add_subcommand("fnop", "recursion operator, torsion, recursion relation");
    add_common(fnop, o);

    auto* orbit = app.add_subcommand("orbit", "one-parameter orbit family");
    add_common(orbit, o);
    orbit->add_option("--J", j_text, "seed conservation law (default: total momentum)");
    orbit->add_option("--depth", depth, "family depth");

    auto* hojman = app.add_subcommand("hojman", "volume-form invariants");
    add_common(hojman, o);
    hojman->add_option("--depth", hdepth, "ladder depth");

    auto* numv = app.add_subcommand("numverify", "RK4 trajectory drift checks");
    add_common(numv, o);
    numv->add_option("--T", T, "integration time");
    numv->add_option("--dt", dt, "step size");
    numv->add_option("--start", start_csv, "start state (csv)");

    auto* pde = app.add_subcommand("pde", "KdV / mKdV conserved-density runs");
    add_common(pde, o);
    pde->add_option("--T", T, "integration time");
    pde->add_option("--dt", dt, "step size (default 0.2 dx^3)")->default_val(0.0);
    pde->add_option("--grid", grid, "grid points (power of two >= 256)");
    pde->add_option("--kappa", kappa, "soliton parameter");
    pde->add_option("--length", length, "domain length");

    auto* exportm = app.add_subcommand("export-model", "write a model as a JSON model file");
    add_common(exportm, o);
    exportm->add_option("--out", out_path, "output path (default stdout)");

    auto* fixtures = app.add_subcommand("fixtures", "run the full fixture suite");
    add_common(fixtures, o);

    std::vector<const char*> argv;
    argv.push_back("nonnoether");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (symcheck->parsed()) return run_symcheck(o);
        if (conslaws_cmd->parsed()) return run_conslaws(o, family, point_csv, time_at, kmax, invol_mode);
        if (lax->parsed()) return run_lax(o);
        if (bidiff->parsed()) return run_bidiff(o);
        if (fnop->parsed()) return run_fnop(o);
        if (orbit->parsed()) return run_orbit(o, j_text, depth);
        if (hojman->parsed()) return run_hojman(o, hdepth);
        if (numv->parsed()) return run_numverify(o, T, dt, start_csv);
        if (pde->parsed())
            return run_pde(o, o.model_name.empty() ? pde_model : o.model_name, grid, T, dt, kappa,
                           length);
        if (exportm->parsed()) return run_export(o, out_path);
        if (fixtures->parsed()) return run_fixtures(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownSymbol& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args);
}

namespace {

int run_fixtures(const CommonOpts& o) {
    ReportBuilder rep("fixtures", o.seed);

    PhaseModel t2 = build_toda(2);
    PhaseModel t3 = build_toda(3);

    // Schouten bracket [E, W] tables.
    rep.add("toda2_hatW", schouten(t2.E, t2.W) ==
                              fixtures::bivector_from_table(t2, fixtures::hatw_toda2()));
    rep.add("toda3_hatW", schouten(t3.E, t3.W) ==
                              fixtures::bivector_from_table(t3, fixtures::hatw_toda3()));

    // Y-law families.
    {
        auto y2 = y_laws(t2);
        auto expect = fixtures::y_toda2();
        bool ok = y2.size() == expect.size();
        for (std::size_t k = 0; ok && k < y2.size(); ++k)
            ok = (y2[k] == parse_expr(expect[k], t2.coords));
        rep.add("toda2_Y_laws", ok);
        auto y3 = y_laws(t3);
        auto expect3 = fixtures::y_toda3();
        ok = y3.size() == expect3.size();
        for (std::size_t k = 0; ok && k < y3.size(); ++k)
            ok = (y3[k] == parse_expr(expect3[k], t3.coords));
        rep.add("toda3_Y_laws", ok);
    }

    // Lax matrices.
    {
        LaxPair lp2 = lax_pair(t2);
        rep.add("toda2_L", lp2.L == fixtures::matrix_from_table(t2, fixtures::lax_l_toda2(), false) &&
                               lp2.L.nonzero_count() == 8);
        rep.add("toda2_P", lp2.P == fixtures::matrix_from_table(t2, fixtures::lax_p_toda2(), false));
        LaxPair lp3 = lax_pair(t3);
        rep.add("toda3_L", lp3.L == fixtures::matrix_from_table(t3, fixtures::lax_l_toda3(), false) &&
                               lp3.L.nonzero_count() == 16);
        rep.add("toda3_P", lp3.P == fixtures::matrix_from_table(t3, fixtures::lax_p_toda3(), false));
    }

    // dbar coordinate tables.
    auto check_dbar = [&](const PhaseModel& m, const std::vector<std::vector<fixtures::SparseEntry>>& table,
                          const std::string& name) {
        bool ok = true;
        for (int a = 0; a < m.dim() && ok; ++a) {
            Form img = dbar(m, Form::scalar(m.dim(), Expr::coord(m.dim(), a)));
            Form expect = fixtures::form_from_table(m, 1, table[static_cast<std::size_t>(a)]);
            ok = (img == expect);
        }
        rep.add(name, ok);
    };
    check_dbar(t2, fixtures::dbar_toda2(), "toda2_dbar");
    check_dbar(t3, fixtures::dbar_toda3(), "toda3_dbar");

    // Recursion operator displays (transpose of the Lax matrix).
    {
        RecursionOperator R2 = fn_operator(t2);
        rep.add("toda2_recursion_operator",
                R2.R_forms == fixtures::matrix_from_table(t2, fixtures::lax_l_toda2(), false).transposed());
        RecursionOperator R3 = fn_operator(t3);
        rep.add("toda3_recursion_operator",
                R3.R_forms == fixtures::matrix_from_table(t3, fixtures::lax_l_toda3(), false).transposed());
    }

    // L_E omega.
    rep.add("toda2_le_omega", lie_derivative(t2.E, t2.omega) ==
                                  fixtures::form_from_table(t2, 2, fixtures::le_omega_toda_n(2)));
    rep.add("toda3_le_omega", lie_derivative(t3.E, t3.omega) ==
                                  fixtures::form_from_table(t3, 2, fixtures::le_omega_toda_n(3)));

    // Trace family.
    {
        std::vector<Expr> C2, I2;
        c_and_i_laws(t2, 2, C2, I2);
        auto exp2 = fixtures::i_laws_toda2();
        bool ok = I2.size() == exp2.size();
        for (std::size_t k = 0; ok && k < I2.size(); ++k)
            ok = (I2[k] == parse_expr(exp2[k], t2.coords));
        rep.add("toda2_I_laws", ok);

        std::vector<Expr> C3, I3;
        c_and_i_laws(t3, 3, C3, I3);
        auto exp3 = fixtures::i_laws_toda3();
        ok = I3.size() == exp3.size();
        for (std::size_t k = 0; ok && k < I3.size(); ++k)
            ok = (I3[k] == parse_expr(exp3[k], t3.coords));
        rep.add("toda3_I_laws", ok);
    }

    // Hojman invariants.
    {
        auto fam = hojman_invariant(hamiltonian_field(t3), t3.E, *t3.volume, 1);
        rep.add("toda3_hojman",
                fam[0] == parse_expr(fixtures::hojman_j_toda3(), t3.coords) &&
                    fam[1] == parse_expr(fixtures::hojman_j1_toda3(), t3.coords));
    }

    // Orbit family members.
    {
        Expr J(t2.dim());
        for (int i = 0; i < t2.n; ++i) J += Expr::coord(t2.dim(), i);
        OrbitFamily fam = orbit_family(t2, J, 2);
        rep.add("toda2_orbit",
                fam.c0 && *fam.c0 == Rational(3) && fam.c1 && *fam.c1 == Rational(-1) &&
                    fam.family[1] == parse_expr(fixtures::orbit_j1_toda_n(2), t2.coords) &&
                    fam.family[2] == parse_expr(fixtures::orbit_j2_toda_n(2), t2.coords));
    }

    return rep.finish(o.json_path);
}

} // namespace

} // namespace nonnoether::cli

#include "nonnoether/modelfile.hpp"

#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"
#include "nonnoether/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nonnoether {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& why) {
    throw ParseError(origin + ": field '" + field + "': " + why);
}

Expr parse_field(const std::string& origin, const std::string& field, const std::string& text,
                 const std::vector<std::string>& coords) {
    try {
        return parse_expr(text, coords);
    } catch (const std::exception& e) {
        fail(origin, field, std::string(e.what()) + " in expression '" + text + "'");
    }
}

} // namespace

PhaseModel load_model_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(origin + ": invalid JSON: " + e.what());
    }

    PhaseModel m;
    if (!j.contains("dim") || !j["dim"].is_number_integer()) fail(origin, "dim", "missing or not an integer");
    int d = j["dim"].get<int>();
    if (d <= 0 || d % 2 != 0) fail(origin, "dim", "must be a positive even integer");
    m.n = d / 2;
    m.name = j.value("name", std::string("model"));

    if (!j.contains("coords") || !j["coords"].is_array() || static_cast<int>(j["coords"].size()) != d)
        fail(origin, "coords", "must list exactly dim coordinate names");
    for (const auto& c : j["coords"]) m.coords.push_back(c.get<std::string>());

    auto read_sparse2 = [&](const char* field, int degree) {
        std::vector<std::tuple<int, int, Expr>> out;
        if (!j.contains(field)) return out;
        if (!j[field].is_array()) fail(origin, field, "must be an array of {i,j,expr}");
        for (const auto& ent : j[field]) {
            int i = ent.value("i", 0), jj = ent.value("j", 0);
            if (i < 1 || jj < 1 || i > d || jj > d || i >= jj)
                fail(origin, field, "indices must satisfy 1 <= i < j <= dim");
            out.emplace_back(i - 1, jj - 1,
                             parse_field(origin, field, ent.value("expr", std::string("0")), m.coords));
        }
        (void)degree;
        return out;
    };

    m.W = MultiVec(d, 2);
    for (auto& [i, jj, e] : read_sparse2("poisson", 2)) m.W.add_component({i, jj}, e);
    if (m.W.is_zero()) fail(origin, "poisson", "W must be nonzero");

    if (j.contains("symplectic")) {
        m.omega = Form(d, 2);
        for (auto& [i, jj, e] : read_sparse2("symplectic", 2)) m.omega.add_component({i, jj}, e);
        m.omega_supplied = true;
    }

    if (!j.contains("hamiltonian")) fail(origin, "hamiltonian", "missing");
    m.h = parse_field(origin, "hamiltonian", j["hamiltonian"].get<std::string>(), m.coords);

    if (!j.contains("symmetry") || !j["symmetry"].is_array() ||
        static_cast<int>(j["symmetry"].size()) != d)
        fail(origin, "symmetry", "must list exactly dim generator components");
    m.E = MultiVec(d, 1);
    for (int a = 0; a < d; ++a) {
        Expr e = parse_field(origin, "symmetry", j["symmetry"][static_cast<std::size_t>(a)].get<std::string>(),
                             m.coords);
        m.E.add_component({a}, e);
    }

    if (j.contains("s_form")) {
        Form s(d, 1);
        if (!j["s_form"].is_array()) fail(origin, "s_form", "must be an array of {i,expr}");
        for (const auto& ent : j["s_form"]) {
            int i = ent.value("i", 0);
            if (i < 1 || i > d) fail(origin, "s_form", "index out of range");
            s.add_component({i - 1}, parse_field(origin, "s_form", ent.value("expr", std::string("0")), m.coords));
        }
        m.s = s;
    }

    if (j.contains("volume")) {
        Form vol(d, d);
        IndexTuple top(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) top[static_cast<std::size_t>(i)] = i;
        vol.add_component(top, parse_field(origin, "volume", j["volume"].get<std::string>(), m.coords));
        m.volume = vol;
    }

    try {
        m.validate();
    } catch (const std::exception& e) {
        throw ParseError(origin + ": model validation failed: " + e.what());
    }
    return m;
}

PhaseModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model_json_text(ss.str(), path);
}

std::string model_to_json_text(const PhaseModel& m) {
    json j;
    j["name"] = m.name;
    j["dim"] = m.dim();
    j["coords"] = m.coords;

    json poisson = json::array();
    for (const auto& [idx, e] : m.W.components())
        poisson.push_back({{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"expr", e.to_string(m.coords)}});
    j["poisson"] = poisson;

    json symplectic = json::array();
    for (const auto& [idx, e] : m.omega.components())
        symplectic.push_back({{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"expr", e.to_string(m.coords)}});
    j["symplectic"] = symplectic;

    j["hamiltonian"] = m.h.to_string(m.coords);

    json sym = json::array();
    for (int a = 0; a < m.dim(); ++a) sym.push_back(m.E.component_or_zero({a}).to_string(m.coords));
    j["symmetry"] = sym;

    if (m.s) {
        json s = json::array();
        for (const auto& [idx, e] : m.s->components())
            s.push_back({{"i", idx[0] + 1}, {"expr", e.to_string(m.coords)}});
        j["s_form"] = s;
    }
    if (m.volume) {
        j["volume"] = top_coefficient(*m.volume).to_string(m.coords);
    }
    return j.dump(2) + "\n";
}

void save_model_file(const PhaseModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    out << model_to_json_text(m);
}

} // namespace nonnoether

#include "nonnoether/geom.hpp"

#include "nonnoether/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nonnoether {

namespace {

bool g_parallel_wedge = false;

// Iterated contraction sign of increasing tuple I into increasing tuple J
// (first factor of I applied innermost). Returns false if I is not a subset
// of J; on success `rest` holds J \ I.
bool contraction_sign(const IndexTuple& I, const IndexTuple& J, int& sign, IndexTuple& rest) {
    rest = J;
    sign = 1;
    for (int idx : I) {
        auto it = std::find(rest.begin(), rest.end(), idx);
        if (it == rest.end()) return false;
        int pos = static_cast<int>(it - rest.begin());
        if (pos % 2 != 0) sign = -sign;
        rest.erase(it);
    }
    return true;
}

struct WedgeTask {
    IndexTuple out;
    // contributing component pairs: sign, left Expr, right Expr
    std::vector<std::tuple<int, const Expr*, const Expr*>> parts;
};

template <class T>
T wedge_impl(const T& a, const T& b) {
    if (a.degree() + b.degree() > a.dim())
        throw DegreeOverflow("wedge: degree exceeds manifold dimension");
    T r(a.dim(), a.degree() + b.degree());
    if (a.is_zero() || b.is_zero()) return r;

    std::map<IndexTuple, WedgeTask> tasks;
    IndexTuple merged;
    for (const auto& [ia, ea] : a.components()) {
        for (const auto& [ib, eb] : b.components()) {
            int sign = detail::merge_tuples(ia, ib, merged);
            if (sign == 0) continue;
            auto& task = tasks[merged];
            task.out = merged;
            task.parts.emplace_back(sign, &ea, &eb);
        }
    }

    std::vector<const WedgeTask*> order;
    order.reserve(tasks.size());
    for (const auto& [idx, task] : tasks) order.push_back(&task);
    std::vector<Expr> results(order.size());

#ifdef _OPENMP
    const bool parallel = g_parallel_wedge && order.size() > 8;
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t i = 0; i < order.size(); ++i) {
        Expr sum;
        for (const auto& [sign, ea, eb] : order[i]->parts) {
            Expr prod = *ea * *eb;
            if (sign < 0) prod = -prod;
            sum += prod;
        }
        results[i] = std::move(sum);
    }

    for (std::size_t i = 0; i < order.size(); ++i) r.add_component(order[i]->out, results[i]);
    return r;
}

template <class T>
T wedge_power_impl(const T& a, int k, int expr_dim) {
    T r(a.dim(), 0);
    r.add_component({}, Expr::constant(expr_dim, Rational(1)));
    for (int i = 0; i < k; ++i) r = wedge_impl(r, a);
    return r;
}

int expr_dim_of(const detail::AltTensor& t, int fallback) {
    for (const auto& [idx, e] : t.components()) return e.dim();
    return fallback;
}

} // namespace

bool set_parallel_wedge(bool enabled) {
    bool prev = g_parallel_wedge;
    g_parallel_wedge = enabled;
    return prev;
}

bool parallel_wedge_enabled() { return g_parallel_wedge; }

MultiVec wedge(const MultiVec& a, const MultiVec& b) { return wedge_impl(a, b); }
Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }

MultiVec wedge_power(const MultiVec& a, int k) { return wedge_power_impl(a, k, expr_dim_of(a, a.dim())); }
Form wedge_power(const Form& a, int k) { return wedge_power_impl(a, k, expr_dim_of(a, a.dim())); }

Form interior(const MultiVec& v, const Form& f) {
    if (v.degree() > f.degree())
        throw DegreeMismatch("interior: multivector degree exceeds form degree");
    Form r(f.dim(), f.degree() - v.degree());
    int sign;
    IndexTuple rest;
    for (const auto& [I, ve] : v.components()) {
        for (const auto& [J, fe] : f.components()) {
            if (!contraction_sign(I, J, sign, rest)) continue;
            Expr prod = ve * fe;
            if (sign < 0) prod = -prod;
            r.add_component(rest, prod);
        }
    }
    return r;
}

Expr interior_scalar(const MultiVec& v, const Form& f) {
    if (v.degree() != f.degree()) throw DegreeMismatch("interior_scalar: degrees differ");
    Form r = interior(v, f);
    return r.component_or_zero({});
}

MultiVec contract(const MultiVec& v, const Form& u1) {
    assert(u1.degree() == 1);
    if (v.degree() < 1) throw DegreeMismatch("contract: need degree >= 1 multivector");
    MultiVec r(v.dim(), v.degree() - 1);
    for (const auto& [I, ve] : v.components()) {
        for (std::size_t rpos = 0; rpos < I.size(); ++rpos) {
            const Expr* ue = u1.find({I[rpos]});
            if (!ue) continue;
            Expr prod = ve * *ue;
            if (rpos % 2 != 0) prod = -prod;
            IndexTuple rest;
            rest.reserve(I.size() - 1);
            for (std::size_t k = 0; k < I.size(); ++k)
                if (k != rpos) rest.push_back(I[k]);
            r.add_component(rest, prod);
        }
    }
    return r;
}

namespace {

// Candidate Schouten bracket: the Lie-derivative-convention bracket with
// [X, V] = L_X V. The public bracket rescales it by (-1)^{p+q}; that global
// choice is what reproduces the calibration fixtures ([E,W] for the Toda
// model, and d(u) = Phi_omega([W, Phi_W(u)]) on every degree).
MultiVec schouten_candidate(const MultiVec& a, const MultiVec& b, int expr_dim) {
    const int p = a.degree(), q = b.degree();
    MultiVec r(a.dim(), p + q - 1);
    const int anti = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
    IndexTuple merged, sub;
    for (const auto& [I, f] : a.components()) {
        for (const auto& [J, g] : b.components()) {
            // sum over omitted a-factor: f * d_{i_r} g
            for (std::size_t r0 = 0; r0 < I.size(); ++r0) {
                Expr dg = g.differentiate_coord(I[r0]);
                if (dg.is_zero()) continue;
                sub.clear();
                for (std::size_t k = 0; k < I.size(); ++k)
                    if (k != r0) sub.push_back(I[k]);
                int sign = detail::merge_tuples(sub, J, merged);
                if (sign == 0) continue;
                int s = ((p - 1 - static_cast<int>(r0)) % 2 == 0) ? 1 : -1;
                Expr term = f * dg;
                if (sign * s < 0) term = -term;
                r.add_component(merged, term);
            }
            // sum over omitted b-factor: g * d_{j_s} f
            for (std::size_t s0 = 0; s0 < J.size(); ++s0) {
                Expr df = f.differentiate_coord(J[s0]);
                if (df.is_zero()) continue;
                sub.clear();
                for (std::size_t k = 0; k < J.size(); ++k)
                    if (k != s0) sub.push_back(J[k]);
                int sign = detail::merge_tuples(sub, I, merged);
                if (sign == 0) continue;
                int s = ((q - 1 - static_cast<int>(s0)) % 2 == 0) ? 1 : -1;
                Expr term = g * df;
                if (-anti * sign * s < 0) term = -term;
                r.add_component(merged, term);
            }
        }
    }
    (void)expr_dim;
    return r;
}

} // namespace

MultiVec schouten(const MultiVec& a, const MultiVec& b) {
    const int p = a.degree(), q = b.degree();
    if (p + q - 1 > a.dim()) throw DegreeOverflow("schouten: resulting degree too large");
    int expr_dim = expr_dim_of(a, expr_dim_of(b, a.dim()));

    if (p == 0 && q == 0) return MultiVec(a.dim(), 0);
    if (q == 0) {
        // [A, f] = A(df)
        Expr f = b.component_or_zero({});
        return contract(a, differential(f));
    }
    if (p == 0) {
        // [f, B] = -(-1)^{q-1} B(df), the graded-antisymmetric partner
        Expr f = a.component_or_zero({});
        MultiVec c = contract(b, differential(f));
        if ((q - 1) % 2 == 0) {
            MultiVec neg(c.dim(), c.degree());
            for (const auto& [idx, e] : c.components()) neg.add_component(idx, -e);
            return neg;
        }
        return c;
    }

    MultiVec cand = schouten_candidate(a, b, expr_dim);
    if ((p + q) % 2 == 0) return cand;
    MultiVec r(cand.dim(), cand.degree());
    for (const auto& [idx, e] : cand.components()) r.add_component(idx, -e);
    return r;
}

Form exterior_derivative(const Form& f) {
    if (f.degree() >= f.dim()) throw DegreeOverflow("exterior_derivative: top degree");
    Form r(f.dim(), f.degree() + 1);
    IndexTuple merged;
    for (const auto& [J, e] : f.components()) {
        for (int a = 0; a < f.dim(); ++a) {
            Expr de = e.differentiate_coord(a);
            if (de.is_zero()) continue;
            IndexTuple single{a};
            int sign = detail::merge_tuples(single, J, merged);
            if (sign == 0) continue;
            if (sign < 0) de = -de;
            r.add_component(merged, de);
        }
    }
    return r;
}

Form differential(const Expr& f) {
    Form r(f.dim(), 1);
    for (int a = 0; a < f.dim(); ++a) {
        Expr de = f.differentiate_coord(a);
        if (!de.is_zero()) r.add_component({a}, de);
    }
    return r;
}

Form lie_derivative(const MultiVec& X, const Form& f) {
    assert(X.degree() == 1);
    if (f.degree() == 0) {
        Expr g = f.component_or_zero({});
        return Form::scalar(f.dim(), interior_scalar(X, differential(g)));
    }
    Form r(f.dim(), f.degree());
    if (f.degree() < f.dim()) {
        // i_X du vanishes identically on top-degree forms
        Form a = interior(X, exterior_derivative(f));
        for (const auto& [idx, e] : a.components()) r.add_component(idx, e);
    }
    Form b = exterior_derivative(interior(X, f));
    for (const auto& [idx, e] : b.components()) r.add_component(idx, e);
    return r;
}

MultiVec lie_derivative(const MultiVec& X, const MultiVec& v) {
    assert(X.degree() == 1);
    return schouten(X, v);
}

namespace {

// Image of the basis vector d_a under Phi_omega, as a 1-form.
Form lower_basis(const PhaseModel& m, int a, int expr_dim) {
    Form r(m.dim(), 1);
    for (const auto& [idx, e] : m.omega.components()) {
        if (idx[0] == a) {
            r.add_component({idx[1]}, -e);
        } else if (idx[1] == a) {
            r.add_component({idx[0]}, e);
        }
    }
    (void)expr_dim;
    return r;
}

// Image of the basis 1-form dz_a under Phi_W, as a vector field.
MultiVec raise_basis(const PhaseModel& m, int a, int expr_dim) {
    MultiVec r(m.dim(), 1);
    for (const auto& [idx, e] : m.W.components()) {
        if (idx[0] == a) {
            r.add_component({idx[1]}, e);
        } else if (idx[1] == a) {
            r.add_component({idx[0]}, -e);
        }
    }
    (void)expr_dim;
    return r;
}

} // namespace

Form musical_lower(const PhaseModel& m, const MultiVec& v) {
    int expr_dim = static_cast<int>(m.coords.size());
    Form r(m.dim(), v.degree());
    for (const auto& [I, e] : v.components()) {
        Form acc = Form::scalar(m.dim(), Expr::constant(expr_dim, Rational(1)));
        for (int idx : I) acc = wedge(acc, lower_basis(m, idx, expr_dim));
        for (const auto& [J, w] : acc.components()) r.add_component(J, e * w);
    }
    return r;
}

MultiVec musical_raise(const PhaseModel& m, const Form& f) {
    int expr_dim = static_cast<int>(m.coords.size());
    MultiVec r(m.dim(), f.degree());
    for (const auto& [J, e] : f.components()) {
        MultiVec acc = MultiVec::scalar(m.dim(), Expr::constant(expr_dim, Rational(1)));
        for (int idx : J) acc = wedge(acc, raise_basis(m, idx, expr_dim));
        for (const auto& [I, w] : acc.components()) r.add_component(I, e * w);
    }
    return r;
}

Expr poisson_bracket(const PhaseModel& m, const Expr& f, const Expr& g) {
    return interior_scalar(m.W, wedge(differential(f), differential(g)));
}

MultiVec hamiltonian_field(const PhaseModel& m) { return contract(m.W, differential(m.h)); }

Expr total_time_derivative(const PhaseModel& m, const Expr& f) {
    return f.differentiate_time() + poisson_bracket(m, m.h, f);
}

Expr top_coefficient(const MultiVec& v) {
    assert(v.degree() == v.dim());
    IndexTuple top(v.dim());
    for (int i = 0; i < v.dim(); ++i) top[i] = i;
    return v.component_or_zero(top);
}

Expr top_coefficient(const Form& f) {
    assert(f.degree() == f.dim());
    IndexTuple top(f.dim());
    for (int i = 0; i < f.dim(); ++i) top[i] = i;
    return f.component_or_zero(top);
}

} // namespace nonnoether

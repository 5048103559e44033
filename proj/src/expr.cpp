#include "nonnoether/expr.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace nonnoether {

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

Expr Expr::constant(int dim, const Rational& c) {
    Expr e(dim);
    if (c != 0) {
        TermKey k;
        k.mono.assign(dim, 0);
        k.expv.assign(dim, Rational(0));
        e.terms_.emplace(std::move(k), c);
    }
    return e;
}

Expr Expr::coord(int dim, int a) {
    if (a < 0 || a >= dim) throw UnknownSymbol("coordinate index out of range");
    Expr e(dim);
    TermKey k;
    k.mono.assign(dim, 0);
    k.expv.assign(dim, Rational(0));
    k.mono[a] = 1;
    e.terms_.emplace(std::move(k), Rational(1));
    return e;
}

Expr Expr::time_var(int dim) {
    Expr e(dim);
    TermKey k;
    k.t_exp = 1;
    k.mono.assign(dim, 0);
    k.expv.assign(dim, Rational(0));
    e.terms_.emplace(std::move(k), Rational(1));
    return e;
}

Expr Expr::exp_linear(int dim, const std::vector<Rational>& weights) {
    assert(static_cast<int>(weights.size()) == dim);
    Expr e(dim);
    TermKey k;
    k.mono.assign(dim, 0);
    k.expv = weights;
    e.terms_.emplace(std::move(k), Rational(1));
    return e;
}

bool Expr::is_rational_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const TermKey& k = terms_.begin()->first;
    if (k.t_exp != 0) return false;
    for (int m : k.mono)
        if (m != 0) return false;
    for (const Rational& r : k.expv)
        if (r != 0) return false;
    return true;
}

Rational Expr::rational_value() const {
    if (terms_.empty()) return Rational(0);
    assert(is_rational_constant());
    return terms_.begin()->second;
}

void Expr::add_term(const TermKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Expr Expr::operator-() const {
    Expr r(dim_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

Expr& Expr::operator+=(const Expr& o) {
    assert(dim_ == o.dim_ || is_zero() || o.is_zero());
    if (terms_.empty()) dim_ = o.dim_;
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

Expr& Expr::operator-=(const Expr& o) {
    assert(dim_ == o.dim_ || is_zero() || o.is_zero());
    if (terms_.empty()) dim_ = o.dim_;
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
    Expr r(a.dim_ ? a.dim_ : b.dim_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    assert(a.dim_ == b.dim_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            TermKey k;
            k.t_exp = ka.t_exp + kb.t_exp;
            k.mono.resize(ka.mono.size());
            for (std::size_t i = 0; i < ka.mono.size(); ++i) k.mono[i] = ka.mono[i] + kb.mono[i];
            k.expv.resize(ka.expv.size());
            for (std::size_t i = 0; i < ka.expv.size(); ++i) k.expv[i] = ka.expv[i] + kb.expv[i];
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

Expr Expr::operator*(const Rational& c) const {
    Expr r(dim_);
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

Expr Expr::pow(unsigned k) const {
    Expr r = Expr::constant(dim_, Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Expr Expr::differentiate_coord(int var) const {
    if (var < 0 || var >= dim_) throw UnknownSymbol("differentiate: coordinate out of range");
    Expr r(dim_);
    for (const auto& [k, c] : terms_) {
        if (k.mono[var] > 0) {
            TermKey nk = k;
            nk.mono[var] -= 1;
            r.add_term(nk, c * k.mono[var]);
        }
        if (k.expv[var] != 0) {
            r.add_term(k, c * k.expv[var]);
        }
    }
    return r;
}

Expr Expr::differentiate_time() const {
    Expr r(dim_);
    for (const auto& [k, c] : terms_) {
        if (k.t_exp > 0) {
            TermKey nk = k;
            nk.t_exp -= 1;
            r.add_term(nk, c * k.t_exp);
        }
    }
    return r;
}

double Expr::evaluate(std::span<const double> point, double time) const {
    if (static_cast<int>(point.size()) != dim_)
        throw UnboundCoordinate("evaluate: point dimension mismatch");
    double sum = 0.0;
    for (const auto& [k, c] : terms_) {
        double v = to_double(c);
        for (int i = 0; i < k.t_exp; ++i) v *= time;
        for (int a = 0; a < dim_; ++a) {
            for (int i = 0; i < k.mono[a]; ++i) v *= point[a];
        }
        double arg = 0.0;
        bool has_exp = false;
        for (int a = 0; a < dim_; ++a) {
            if (k.expv[a] != 0) {
                has_exp = true;
                arg += to_double(k.expv[a]) * point[a];
            }
        }
        if (has_exp) v *= std::exp(arg);
        sum += v;
    }
    return sum;
}

namespace {

// A term key t^i z^m exp(v) divides another iff the quotient key has
// non-negative t and monomial exponents (exp-vectors always subtract).
bool key_divides(const TermKey& den, const TermKey& num) {
    if (den.t_exp > num.t_exp) return false;
    for (std::size_t i = 0; i < den.mono.size(); ++i)
        if (den.mono[i] > num.mono[i]) return false;
    return true;
}

TermKey key_quotient(const TermKey& num, const TermKey& den) {
    TermKey k;
    k.t_exp = num.t_exp - den.t_exp;
    k.mono.resize(num.mono.size());
    for (std::size_t i = 0; i < num.mono.size(); ++i) k.mono[i] = num.mono[i] - den.mono[i];
    k.expv.resize(num.expv.size());
    for (std::size_t i = 0; i < num.expv.size(); ++i) k.expv[i] = num.expv[i] - den.expv[i];
    return k;
}

} // namespace

Expr Expr::exact_divide(const Expr& den) const {
    if (den.is_zero()) throw NotDivisible("division by zero expression");
    if (is_zero()) return Expr(dim_);

    // Single-term divisor: divide every term, checking structural divisibility.
    if (den.terms_.size() == 1) {
        const auto& [dk, dc] = *den.terms_.begin();
        Expr q(dim_);
        for (const auto& [k, c] : terms_) {
            if (!key_divides(dk, k)) throw NotDivisible("term not divisible by divisor term");
            q.terms_.emplace(key_quotient(k, dk), c / dc);
        }
        return q;
    }

    // General case: division w.r.t. the canonical term order. When an exact
    // quotient exists every step emits one of its terms, so the step count is
    // bounded by the quotient size; a cap plus a final product check rejects
    // inexact inputs (the exp-lattice order is not well-founded, so the loop
    // alone cannot prove non-divisibility).
    Expr rem = *this;
    Expr q(dim_);
    const auto lead = [](const Expr& e) { return std::prev(e.terms_.end()); };
    std::size_t cap = 4 * terms_.size() + 16;
    while (!rem.is_zero() && cap-- > 0) {
        auto ln = lead(rem);
        auto ld = lead(den);
        if (!key_divides(ld->first, ln->first)) throw NotDivisible("leading term not divisible");
        TermKey qk = key_quotient(ln->first, ld->first);
        Rational qc = ln->second / ld->second;
        Expr qt(dim_);
        qt.terms_.emplace(qk, qc);
        q += qt;
        rem -= qt * den;
    }
    if (!rem.is_zero() || !(q * den == *this)) throw NotDivisible("no exact quotient");
    return q;
}

std::string Expr::to_string(const std::vector<std::string>& coord_names) const {
    if (terms_.empty()) return "0";
    assert(static_cast<int>(coord_names.size()) == dim_);
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        bool has_factor = false;
        if (k.t_exp > 0) has_factor = true;
        for (int a = 0; a < dim_; ++a)
            if (k.mono[a] > 0) has_factor = true;
        bool has_exp = false;
        for (int a = 0; a < dim_; ++a)
            if (k.expv[a] != 0) has_exp = true;
        if (has_exp) has_factor = true;

        bool need_coeff = (mag != 1) || !has_factor;
        bool wrote = false;
        if (need_coeff) {
            os << rational_to_string(mag);
            wrote = true;
        }
        if (k.t_exp > 0) {
            if (wrote) os << "*";
            os << "t";
            if (k.t_exp > 1) os << "^" << k.t_exp;
            wrote = true;
        }
        for (int a = 0; a < dim_; ++a) {
            if (k.mono[a] > 0) {
                if (wrote) os << "*";
                os << coord_names[a];
                if (k.mono[a] > 1) os << "^" << k.mono[a];
                wrote = true;
            }
        }
        if (has_exp) {
            if (wrote) os << "*";
            os << "exp(";
            bool efirst = true;
            for (int a = 0; a < dim_; ++a) {
                const Rational& w = k.expv[a];
                if (w == 0) continue;
                Rational wmag = w < 0 ? Rational(-w) : w;
                if (efirst) {
                    if (w < 0) os << "-";
                    efirst = false;
                } else {
                    os << (w < 0 ? " - " : " + ");
                }
                if (wmag != 1) os << rational_to_string(wmag) << "*";
                os << coord_names[a];
            }
            os << ")";
        }
    }
    return os.str();
}

} // namespace nonnoether

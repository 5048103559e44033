#pragma once

#include "nonnoether/errors.hpp"
#include "nonnoether/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace nonnoether {

// Key of one normal-form term:  t^t_exp * prod_a z_a^mono[a] * exp(sum_a expv[a]*z_a).
// Ordering is lexicographic on (t_exp, mono, expv); this order is canonical and
// pinned so serialized output is byte-stable.
struct TermKey {
    int t_exp = 0;
    std::vector<int> mono;       // one entry per coordinate, >= 0
    std::vector<Rational> expv;  // rational-linear form inside a single exp()

    friend bool operator==(const TermKey& a, const TermKey& b) = default;
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.t_exp != b.t_exp) return a.t_exp < b.t_exp;
        if (a.mono != b.mono) return a.mono < b.mono;
        return a.expv < b.expv;
    }
};

// Exact symbolic scalar in normal form: a finite sum of rational multiples of
// t-powers, coordinate monomials and exponentials of rational-linear forms in
// the coordinates. Closed under +, *, d/dz_a and d/dt; equality of normal
// forms is structural equality of the term maps. Immutable in spirit: every
// operation returns a fresh value.
class Expr {
public:
    Expr() : dim_(0) {}
    explicit Expr(int dim) : dim_(dim) {}

    static Expr zero(int dim) { return Expr(dim); }
    static Expr constant(int dim, const Rational& c);
    static Expr coord(int dim, int a);
    static Expr time_var(int dim);
    // exp(sum_a weights[a] * z_a); weights.size() == dim
    static Expr exp_linear(int dim, const std::vector<Rational>& weights);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<TermKey, Rational>& terms() const { return terms_; }

    // True when the expression is a single rational constant (possibly zero).
    bool is_rational_constant() const;
    Rational rational_value() const;  // requires is_rational_constant()

    Expr operator-() const;
    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    friend Expr operator+(Expr a, const Expr& b) { a += b; return a; }
    friend Expr operator-(Expr a, const Expr& b) { a -= b; return a; }
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr& operator*=(const Expr& o) { *this = *this * o; return *this; }
    Expr operator*(const Rational& c) const;
    Expr pow(unsigned k) const;

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    // Exact partial derivative; var in [0, dim) for a coordinate.
    Expr differentiate_coord(int var) const;
    Expr differentiate_time() const;

    double evaluate(std::span<const double> point, double time) const;

    // Returns q with q * den == *this exactly, or throws NotDivisible.
    Expr exact_divide(const Expr& den) const;

    // Canonical serialization in the expression grammar; parseable back.
    std::string to_string(const std::vector<std::string>& coord_names) const;

    void add_term(const TermKey& k, const Rational& c);

private:
    int dim_;
    std::map<TermKey, Rational> terms_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return e * c; }

} // namespace nonnoether

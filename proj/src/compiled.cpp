#include "nonnoether/compiled.hpp"

#include <cmath>

namespace nonnoether {

CompiledExpr::CompiledExpr(const Expr& e) {
    terms_.reserve(e.terms().size());
    for (const auto& [k, c] : e.terms()) {
        Term t;
        t.coeff = to_double(c);
        t.t_exp = k.t_exp;
        for (std::size_t a = 0; a < k.mono.size(); ++a)
            if (k.mono[a] > 0) t.mono.push_back({static_cast<int>(a), k.mono[a]});
        for (std::size_t a = 0; a < k.expv.size(); ++a)
            if (k.expv[a] != 0) t.exps.push_back({static_cast<int>(a), to_double(k.expv[a])});
        terms_.push_back(std::move(t));
    }
}

double CompiledExpr::eval(const double* z, double t) const {
    double sum = 0.0;
    for (const Term& term : terms_) {
        double v = term.coeff;
        for (int i = 0; i < term.t_exp; ++i) v *= t;
        for (const Factor& f : term.mono) {
            double base = z[f.index];
            for (int i = 0; i < f.power; ++i) v *= base;
        }
        if (!term.exps.empty()) {
            double arg = 0.0;
            for (const ExpFactor& f : term.exps) arg += f.weight * z[f.index];
            v *= std::exp(arg);
        }
        sum += v;
    }
    return sum;
}

} // namespace nonnoether

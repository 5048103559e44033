#pragma once

#include "nonnoether/expr.hpp"

#include <vector>

namespace nonnoether {

// Expression compiled to a flat closure over the state vector, for the
// numeric integrators and monitors. Evaluation order follows the canonical
// term order, so results are deterministic.
class CompiledExpr {
public:
    CompiledExpr() = default;
    explicit CompiledExpr(const Expr& e);

    double eval(const double* z, double t) const;
    double eval(const std::vector<double>& z, double t) const { return eval(z.data(), t); }

private:
    struct Factor {
        int index;
        int power;
    };
    struct ExpFactor {
        int index;
        double weight;
    };
    struct Term {
        double coeff;
        int t_exp;
        std::vector<Factor> mono;
        std::vector<ExpFactor> exps;
    };
    std::vector<Term> terms_;
};

} // namespace nonnoether

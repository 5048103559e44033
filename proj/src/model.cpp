#include "nonnoether/model.hpp"

#include "nonnoether/errors.hpp"
#include "nonnoether/geom.hpp"

#include <sstream>

namespace nonnoether {

namespace {

// Exact inverse of the full antisymmetric matrix built from W's increasing
// components; only valid when every component is a rational constant.
std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> m) {
    const std::size_t d = m.size();
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) throw InconsistentPair("W matrix is singular; cannot derive omega");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rational p = m[col][col];
        for (std::size_t j = 0; j < d; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = 0; j < d; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

void PhaseModel::validate() {
    const int d = dim();
    const int expr_dim = static_cast<int>(coords.size());
    if (expr_dim != d) throw InconsistentPair("coordinate count must equal 2n");
    if (W.degree() != 2 || W.dim() != d) throw InconsistentPair("W must be a degree-2 multivector");
    if (E.degree() != 1 || E.dim() != d) throw InconsistentPair("E must be a degree-1 multivector");

    // Maximal rank: W^n != 0, checked symbolically.
    MultiVec wn = wedge_power(W, n);
    if (top_coefficient(wn).is_zero())
        throw InconsistentPair("W is degenerate: W^n vanishes");

    if (!omega_supplied) {
        // omega := -(W_full)^(-1), possible exactly when W is constant.
        std::vector<std::vector<Rational>> wf(d, std::vector<Rational>(d, Rational(0)));
        for (const auto& [idx, e] : W.components()) {
            if (!e.is_rational_constant())
                throw InconsistentPair("omega missing and W is not constant; supply omega");
            wf[idx[0]][idx[1]] = e.rational_value();
            wf[idx[1]][idx[0]] = -e.rational_value();
        }
        auto inv = invert_rational(wf);
        omega = Form(d, 2);
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (inv[a][b] != 0)
                    omega.add_component({a, b}, Expr::constant(expr_dim, -inv[a][b]));
    }
    if (omega.degree() != 2 || omega.dim() != d)
        throw InconsistentPair("omega must be a degree-2 form");

    // Phi_omega . Phi_W = id and Phi_W . Phi_omega = id on basis elements.
    for (int a = 0; a < d; ++a) {
        Form dza(d, 1);
        dza.add_component({a}, Expr::constant(expr_dim, Rational(1)));
        MultiVec raised = musical_raise(*this, dza);
        Form back = musical_lower(*this, raised);
        if (!(back == dza)) {
            std::ostringstream os;
            os << "Phi_omega . Phi_W != id on dz_" << (a + 1) << "; W and omega are not mutual inverses";
            throw InconsistentPair(os.str());
        }
    }

    // d(omega) = 0.
    if (!exterior_derivative(omega).is_zero())
        throw InconsistentPair("omega is not closed");

    if (s && (s->degree() != 1 || s->dim() != d))
        throw InconsistentPair("s must be a degree-1 form");
    if (volume && (volume->degree() != d || volume->dim() != d))
        throw InconsistentPair("volume must be a top-degree form");
}

} // namespace nonnoether

#pragma once

#include "nonnoether/model.hpp"

#include <complex>
#include <vector>

namespace nonnoether {

// Conservation-law families associated with a verified non-Noether symmetry.
struct ConservedSet {
    std::vector<Expr> Y;  // n members, wedge-ratio family
    std::vector<Expr> C;  // n members, contraction family
    std::vector<Expr> I;  // >= n members, trace family via the recursion
};

// Y^(k) = top(hatW^k ^ W^{n-k}) / top(W^n), k = 1..n, as exact quotients.
// Throws NotDivisible when the quotient leaves the term algebra (callers may
// fall back to pointwise numeric ratios).
std::vector<Expr> y_laws(const PhaseModel& m);

// C^(k) = interior(W^k, (L_E omega)^k) / (k!)^2 for k = 1..n, and I^(k) for
// k = 1..k_max through the recursion
//   I^(m) = -(-1)^m m C^(m) - sum_{j=1}^{m-1} (-1)^j I^(m-j) C^(j)
// with C^(k>n) = 0. The (k!)^2 normalization makes C^(k) the k-th elementary
// symmetric function of the secular roots, so C^(k) = n!/((n-k)!k!) Y^(k).
void c_and_i_laws(const PhaseModel& m, int k_max, std::vector<Expr>& C, std::vector<Expr>& I);

ConservedSet conserved_set(const PhaseModel& m, int k_max);

// Numeric secular roots at a phase-space point: the n generalized eigenvalues
// of the pencil (hatW - c W) at the point. The 2n-dimensional pencil carries
// each root twice; roots are deduplicated by nearest-neighbor pairing and
// sorted by real part (ties by imaginary part).
struct SecularRoots {
    std::vector<std::complex<double>> roots;  // n entries
    bool complex_roots = false;   // flagged outcome, not an error
    bool pairing_warning = false; // ambiguous pair clustering
    double consistency_residual = 0.0;  // max rel. defect of the e_k(c) vs Y^(k) identity
};
SecularRoots secular_roots(const PhaseModel& m, const std::vector<double>& point, double time);

enum class InvolutivityMode { Symbolic, Numeric };

// Pairwise Poisson brackets of a family. Symbolic mode returns exact
// residual expressions; numeric mode evaluates the brackets at `points`
// uniform random points in [-1,1]^2n (deterministic 64-bit linear generator)
// and reports the maximum absolute value per pair.
struct InvolutivityReport {
    std::vector<std::vector<Expr>> symbolic;   // upper triangle, empty in numeric mode
    std::vector<std::vector<double>> numeric;  // max |{f_i,f_j}| per pair
    double max_abs = 0.0;
    bool symbolic_zero = false;
};
InvolutivityReport involutivity(const PhaseModel& m, const std::vector<Expr>& family,
                                InvolutivityMode mode, int points = 100,
                                std::uint64_t seed = 42);

// The specified deterministic PRNG: 64-bit linear congruential generator,
// x <- 6364136223846793005 x + 1442695040888963407, uniform doubles from the
// top 53 bits.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }
    // uniform in [0,1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in [-1,1]
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    std::uint64_t state_;
};

} // namespace nonnoether

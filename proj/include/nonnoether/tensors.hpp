#pragma once

#include "nonnoether/expr.hpp"

#include <map>
#include <vector>

namespace nonnoether {

// Strictly increasing tuple of coordinate indices; the key of one component
// of an antisymmetric tensor. Degree-0 objects use the empty tuple.
using IndexTuple = std::vector<int>;

namespace detail {

// Merges two disjoint increasing tuples, returning the shuffle sign, or 0 if
// they overlap. `out` receives the sorted union.
int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out);

// Base class for antisymmetric tensors stored on increasing tuples.
class AltTensor {
public:
    AltTensor() = default;
    AltTensor(int dim, int degree) : dim_(dim), degree_(degree) {}

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexTuple, Expr>& components() const { return comps_; }

    void add_component(const IndexTuple& idx, const Expr& e);
    const Expr* find(const IndexTuple& idx) const;
    Expr component_or_zero(const IndexTuple& idx) const;

    // First nonzero component in tuple order; zero Expr when empty. Used to
    // flatten residual tensors to a single defect expression.
    Expr first_nonzero(int expr_dim) const;

    friend bool operator==(const AltTensor& a, const AltTensor& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }

protected:
    int dim_ = 0;
    int degree_ = 0;
    std::map<IndexTuple, Expr> comps_;
};

} // namespace detail

// Degree-p antisymmetric contravariant tensor (multivector field).
class MultiVec : public detail::AltTensor {
public:
    MultiVec() = default;
    MultiVec(int dim, int degree) : AltTensor(dim, degree) {}
    static MultiVec scalar(int dim, const Expr& e) {
        MultiVec v(dim, 0);
        v.add_component({}, e);
        return v;
    }
};

// Degree-q antisymmetric covariant tensor (differential form).
class Form : public detail::AltTensor {
public:
    Form() = default;
    Form(int dim, int degree) : AltTensor(dim, degree) {}
    static Form scalar(int dim, const Expr& e) {
        Form f(dim, 0);
        f.add_component({}, e);
        return f;
    }
};

// Square matrix of Expr viewed as a (1,1)-tensor. `acts_on_forms` marks the
// recursion-operator-on-forms interpretation; entry layout is row a, column b.
class Tensor11 {
public:
    Tensor11() = default;
    Tensor11(int dim, bool acts_on_forms_flag)
        : dim_(dim), acts_on_forms_(acts_on_forms_flag),
          entries_(static_cast<std::size_t>(dim) * dim, Expr(dim)) {}

    int dim() const { return dim_; }
    bool acts_on_forms() const { return acts_on_forms_; }
    Expr& at(int a, int b) { return entries_[static_cast<std::size_t>(a) * dim_ + b]; }
    const Expr& at(int a, int b) const { return entries_[static_cast<std::size_t>(a) * dim_ + b]; }

    Tensor11 transposed() const;
    Tensor11 multiply(const Tensor11& o) const;   // matrix product
    Tensor11 subtract(const Tensor11& o) const;
    Expr trace() const;
    bool is_zero() const;
    int nonzero_count() const;
    Expr first_nonzero() const;

    friend bool operator==(const Tensor11& a, const Tensor11& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    int dim_ = 0;
    bool acts_on_forms_ = false;
    std::vector<Expr> entries_;
};

} // namespace nonnoether

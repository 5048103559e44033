#include "nonnoether/tensors.hpp"

#include <algorithm>

namespace nonnoether {
namespace detail {

int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

void AltTensor::add_component(const IndexTuple& idx, const Expr& e) {
    if (e.is_zero()) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(idx, e);
    } else {
        it->second += e;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

const Expr* AltTensor::find(const IndexTuple& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? nullptr : &it->second;
}

Expr AltTensor::component_or_zero(const IndexTuple& idx) const {
    const Expr* e = find(idx);
    return e ? *e : Expr(dim_);
}

Expr AltTensor::first_nonzero(int expr_dim) const {
    for (const auto& [idx, e] : comps_)
        if (!e.is_zero()) return e;
    return Expr(expr_dim);
}

} // namespace detail

Tensor11 Tensor11::transposed() const {
    Tensor11 r(dim_, !acts_on_forms_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) r.at(b, a) = at(a, b);
    return r;
}

Tensor11 Tensor11::multiply(const Tensor11& o) const {
    Tensor11 r(dim_, acts_on_forms_);
    for (int a = 0; a < dim_; ++a) {
        for (int c = 0; c < dim_; ++c) {
            if (at(a, c).is_zero()) continue;
            for (int b = 0; b < dim_; ++b) {
                if (o.at(c, b).is_zero()) continue;
                r.at(a, b) += at(a, c) * o.at(c, b);
            }
        }
    }
    return r;
}

Tensor11 Tensor11::subtract(const Tensor11& o) const {
    Tensor11 r(dim_, acts_on_forms_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) r.at(a, b) = at(a, b) - o.at(a, b);
    return r;
}

Expr Tensor11::trace() const {
    Expr tr(dim_);
    for (int a = 0; a < dim_; ++a) tr += at(a, a);
    return tr;
}

bool Tensor11::is_zero() const {
    for (const Expr& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

int Tensor11::nonzero_count() const {
    int n = 0;
    for (const Expr& e : entries_)
        if (!e.is_zero()) ++n;
    return n;
}

Expr Tensor11::first_nonzero() const {
    for (const Expr& e : entries_)
        if (!e.is_zero()) return e;
    return Expr(dim_);
}

} // namespace nonnoether

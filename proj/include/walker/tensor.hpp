#pragma once

#include <cassert>
#include <initializer_list>
#include <vector>

#include "walker/expr.hpp"

namespace walker {

enum class Slot : int8_t { Lower = 0, Upper = 1 };

// Dense valence-typed array of Exprs over a coordinate (or frame) basis.
// Components share one scalar denominator: the represented value is comp/den.
// den = 1 in the common polynomial case; inverse metrics and curvature of a
// non-flat h carry det(h) powers in den.
class TensorField {
public:
    TensorField() : dim_(0), den_(Expr(1)) {}
    TensorField(int dim, std::vector<Slot> valence)
        : dim_(dim), valence_(std::move(valence)), den_(Expr(1)) {
        size_t n = 1;
        for (size_t r = 0; r < valence_.size(); ++r) n *= dim_;
        comp_.assign(n, Expr());
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(valence_.size()); }
    const std::vector<Slot>& valence() const { return valence_; }
    const Expr& den() const { return den_; }
    void set_den(Expr d) { den_ = std::move(d); }

    size_t flat_size() const { return comp_.size(); }
    const Expr& flat(size_t i) const { return comp_[i]; }
    Expr& flat(size_t i) { return comp_[i]; }

    size_t offset(const std::vector<int>& idx) const {
        assert(idx.size() == valence_.size());
        size_t o = 0;
        for (int i : idx) o = o * dim_ + static_cast<size_t>(i);
        return o;
    }
    const Expr& at(const std::vector<int>& idx) const { return comp_[offset(idx)]; }
    Expr& at(const std::vector<int>& idx) { return comp_[offset(idx)]; }
    const Expr& at(std::initializer_list<int> idx) const {
        return at(std::vector<int>(idx));
    }
    Expr& at(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }

    // Decode a flat offset into a multi-index.
    std::vector<int> unflatten(size_t o) const {
        std::vector<int> idx(valence_.size());
        for (int r = rank() - 1; r >= 0; --r) {
            idx[r] = static_cast<int>(o % dim_);
            o /= dim_;
        }
        return idx;
    }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    // Exact equality of the represented values (cross-multiplied).
    bool equals(const TensorField& o) const {
        if (dim_ != o.dim_ || valence_ != o.valence_) return false;
        for (size_t i = 0; i < comp_.size(); ++i)
            if (comp_[i] * o.den_ != o.comp_[i] * den_) return false;
        return true;
    }

    TensorField operator+(const TensorField& o) const {
        assert(dim_ == o.dim_ && valence_ == o.valence_);
        TensorField r(dim_, valence_);
        if (den_ == o.den_) {
            r.den_ = den_;
            for (size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = comp_[i] + o.comp_[i];
        } else {
            r.den_ = den_ * o.den_;
            for (size_t i = 0; i < comp_.size(); ++i)
                r.comp_[i] = comp_[i] * o.den_ + o.comp_[i] * den_;
        }
        r.simplify();
        return r;
    }
    TensorField operator-(const TensorField& o) const { return *this + o.scaled(Expr(-1)); }

    TensorField scaled(const Expr& c) const {
        TensorField r = *this;
        for (auto& e : r.comp_) e = e * c;
        return r;
    }
    TensorField scaled(const Rational& c) const { return scaled(Expr(c)); }

    // Fold a constant denominator into the numerators; otherwise try an exact
    // componentwise division by den.
    void simplify() {
        if (den_.is_constant()) {
            if (den_.constant_value() == 1) return;
            Rational inv = Rational(1) / den_.constant_value();
            for (auto& c : comp_) c = c * inv;
            den_ = Expr(1);
            return;
        }
        std::vector<Expr> reduced;
        reduced.reserve(comp_.size());
        for (const auto& c : comp_) {
            auto q = Expr::divide_exact(c, den_);
            if (!q) return;
            reduced.push_back(std::move(*q));
        }
        comp_ = std::move(reduced);
        den_ = Expr(1);
    }

private:
    int dim_;
    std::vector<Slot> valence_;
    std::vector<Expr> comp_;
    Expr den_;
};

inline std::vector<Slot> lower_slots(int rank) {
    return std::vector<Slot>(static_cast<size_t>(rank), Slot::Lower);
}
inline std::vector<Slot> upper_slots(int rank) {
    return std::vector<Slot>(static_cast<size_t>(rank), Slot::Upper);
}

} // namespace walker

#pragma once

#include "walker/expr.hpp"
#include "walker/tensor.hpp"

namespace walker {

// Exact quotient of two Exprs. No gcd machinery: reduction only folds
// constant denominators and exact polynomial divisions, which covers the
// denominators arising here (powers of det h).
struct Ratio {
    Expr num;
    Expr den{Expr(1)};

    Ratio() = default;
    explicit Ratio(Expr n) : num(std::move(n)) {}
    Ratio(Expr n, Expr d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (num.is_zero()) {
            den = Expr(1);
            return;
        }
        if (den.is_constant()) {
            if (den.constant_value() != 1) {
                num = num * (Rational(1) / den.constant_value());
                den = Expr(1);
            }
            return;
        }
        if (auto q = Expr::divide_exact(num, den)) {
            num = std::move(*q);
            den = Expr(1);
        }
    }

    bool is_zero() const { return num.is_zero(); }

    Ratio operator+(const Ratio& o) const {
        if (den == o.den) return Ratio(num + o.num, den);
        return Ratio(num * o.den + o.num * den, den * o.den);
    }
    Ratio operator-(const Ratio& o) const {
        if (den == o.den) return Ratio(num - o.num, den);
        return Ratio(num * o.den - o.num * den, den * o.den);
    }
    Ratio operator*(const Ratio& o) const { return Ratio(num * o.num, den * o.den); }
    Ratio operator*(const Rational& c) const { return Ratio(num * c, den); }
    Ratio operator-() const { return Ratio(-num, den); }

    bool operator==(const Ratio& o) const { return num * o.den == o.num * den; }
};

// Assemble a TensorField from per-component exact ratios, accumulating the
// smallest common denominator that every component divides into.
TensorField tensor_from_ratios(int dim, const std::vector<Slot>& valence,
                               const std::vector<Ratio>& comps);

} // namespace walker

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walker/errors.hpp"

namespace walker {

using Rational = boost::multiprecision::cpp_rational;

// Variable encoding. Monomial order (lexicographic precedence) follows the
// code order: v, x1, ..., xn, u, F0^(0), F0^(1), ..., F1^(0), ...
namespace var {
constexpr int32_t v = 0;
constexpr int32_t u = 1000;
constexpr int32_t formal_base = 10000;
constexpr int32_t formal_stride = 1000; // max tracked derivative order per symbol

inline int32_t x(int i) { return i; } // i = 1..n
inline int32_t formal(int j, int k) { return formal_base + j * formal_stride + k; }
inline bool is_formal(int32_t code) { return code >= formal_base; }
inline bool is_coordinate(int32_t code) { return code < formal_base; }
inline int formal_index(int32_t code) { return (code - formal_base) / formal_stride; }
inline int formal_order(int32_t code) { return (code - formal_base) % formal_stride; }
std::string name(int32_t code);
} // namespace var

// Sparse monomial: (variable code, positive exponent), sorted by code.
using Monomial = std::vector<std::pair<int32_t, int32_t>>;

// True lex order with precedence v > x1 > ... > u > F...: the variable with
// the smallest code dominates; larger exponent of it means a larger monomial.
bool monomial_lex_greater(const Monomial& a, const Monomial& b);

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_lex_greater(a, b);
    }
};

// Exact evaluation point: rational coordinate values (missing ones default to
// zero) plus a finite jet (value, first derivative, ...) per formal function.
struct JetPoint {
    std::map<int32_t, Rational> coords;           // keyed by coordinate var code
    std::map<int, std::vector<Rational>> jets;    // keyed by formal function index
};

// Canonical sparse polynomial over Q in the coordinate variables and the
// formal symbols F_j^(k). Immutable value semantics; all operations pure.
class Expr {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Expr() = default;
    explicit Expr(const Rational& c);
    explicit Expr(long c) : Expr(Rational(c)) {}

    static Expr variable(int32_t code, int exponent = 1);
    static Expr coordinate_v() { return variable(var::v); }
    static Expr coordinate_x(int i) { return variable(var::x(i)); }
    static Expr coordinate_u() { return variable(var::u); }
    static Expr formal(int j, int k = 0) { return variable(var::formal(j, k)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Leading rational value; valid only when is_constant().
    Rational constant_value() const;

    const TermMap& terms() const { return terms_; }

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator*(const Rational& c) const;
    Expr pow(int e) const;

    bool operator==(const Expr& o) const { return terms_ == o.terms_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }

    // Formal partial derivative. diff w.r.t. u promotes F_j^(k) -> F_j^(k+1)
    // by the chain rule; diff w.r.t. v or x^i treats formal symbols as
    // constants.
    Expr diff(int32_t code) const;

    Rational eval(const JetPoint& p) const;

    // Exact quotient when a = q*b has a polynomial solution q; empty
    // otherwise. Throws DivisionByZeroExpr on b = 0.
    static std::optional<Expr> divide_exact(const Expr& a, const Expr& b);

    // Coordinate substitution x^code -> image. Formal symbols are kept as-is,
    // which is valid as long as u is mapped to itself (plus nothing).
    Expr substitute(const std::map<int32_t, Expr>& images) const;

    // Set F_j^(k) = 0 for all k >= k_min (e.g. freeze a formal function to a
    // constant with k_min = 1).
    Expr kill_formal_derivatives(int j, int k_min) const;

    // Rename formal function from_j -> to_j (identify two formal symbols).
    Expr rename_formal(int from_j, int to_j) const;

    bool depends_on(int32_t code) const;
    // Highest derivative order used per formal function index.
    std::map<int, int> formal_orders() const;
    int degree(int32_t code) const;

    std::string str() const;

private:
    void insert_term(Monomial m, Rational c);
    TermMap terms_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return e * c; }

// Parses the expression grammar: rationals (3/2), variables v, x1..xn, u,
// formal functions F0(u), F1(u), ... and derivatives F0^(2)(u), operators
// + - * / ^ (division by constants only, non-negative integer exponents),
// parentheses. Throws ParseError.
Expr parse_expr(const std::string& text);

JetPoint parse_jet_point(const std::string& json_text, int n);

} // namespace walker

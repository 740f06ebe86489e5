#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walker/walker.hpp"

namespace walker::families {

// A named check attached to a constructed metric; the test harness and the
// CLI selftest evaluate these lazily.
struct Expectation {
    std::string name;
    std::function<bool()> check;
};

struct FamilyMetric {
    std::string family;
    WalkerMetric metric;
    std::vector<Expectation> expectations;
};

// g = 2 dv du + sum (dx^i)^2 + H (du)^2 with d_v H = 0.
// Throws VDependence if H contains v.
FamilyMetric pp_wave(int n, Expr H);

// Pp-wave with H = H1(x^1, u). Throws BadDependence if H1 depends on v or on
// x^2..x^n.
FamilyMetric recurrent_case_I(int n, Expr H1);

// Pp-wave with H = F(u) sum lambda_i (x^i)^2, F the formal function with the
// given index. Requires |lambda_1| >= ... >= |lambda_n| (OrderingViolation)
// and lambda_2 != 0 (Lambda2Zero).
FamilyMetric recurrent_case_II(int n, const std::vector<Rational>& lambda,
                               int f_index = 0);

// Cahen-Wallach space: pp-wave with H = sum lambda_i (x^i)^2 (constant
// coefficients, no ordering constraint).
FamilyMetric cahen_wallach(int n, const std::vector<Rational>& lambda);

// Pp-wave with H = sum_i hdiag_i u (x^i)^2 + sum_ij fsym_ij x^i x^j.
// Requires hdiag ascending and not all zero (ZeroHMatrix) and fsym symmetric
// (AsymmetricF).
FamilyMetric two_symmetric(int n, const std::vector<Rational>& hdiag,
                           const std::vector<std::vector<Rational>>& fsym);

// Pp-wave with H = a(u) sum (x^i)^2 + F(u) sum lambda_i (x^i)^2, with
// sum lambda_i = 0 (TraceNotZero) and n >= 2 (DimensionTooSmall).
FamilyMetric conformally_recurrent(int n, int a_index, int f_index,
                                   const std::vector<Rational>& lambda);

// Coordinate translation of a pp-wave: x^i = y^i + b^i(u), v = w - sum
// b^j'(u) y^j + c(u). Returns the pp-wave in the new chart (same symbols);
// the new H is H(y + b, u) - 2 sum b^j'' y^j + sum (b^j')^2 + 2 c'. Used to
// remove terms linear in x^i and to test coordinate covariance. Each b^i and
// c must depend on u only.
WalkerMetric pp_wave_translate(const WalkerMetric& m, const std::vector<Expr>& b,
                               const Expr& c);

// CLI entry: name in {pp-wave, walker-I, walker-II, cahen-wallach,
// two-symmetric, conf-recurrent}, params as JSON. Throws Error on unknown
// names, ParseError on malformed parameters.
FamilyMetric by_name(const std::string& name, const nlohmann::json& params);

} // namespace walker::families

#include "walker/families.hpp"

#include <cmath>

#include "walker/conditions.hpp"
#include "walker/decomp.hpp"
#include "walker/holonomy.hpp"

namespace walker::families {

static Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

static bool recurrent_or_parallel(const WalkerMetric& m) {
    Geometry geo(m);
    auto rep = recurrence_factor(geo.riemann(), geo);
    return rep.is(RecurrenceReport::Verdict::Recurrent) ||
           rep.is(RecurrenceReport::Verdict::Parallel);
}

FamilyMetric pp_wave(int n, Expr H) {
    if (H.depends_on(var::v)) throw VDependence("pp-wave H must not depend on v");
    FamilyMetric f;
    f.family = "pp-wave";
    f.metric = identity_h_metric(n, std::move(H));
    WalkerMetric m = f.metric;
    f.expectations.push_back({"is_pp_wave", [m] { return is_pp_wave(m); }});
    f.expectations.push_back({"only_T_block_nonzero", [m] {
        Geometry geo(m);
        auto b = decompose_curvature(geo);
        return b.lambda.is_zero() && b.v.is_zero() && b.P.is_zero() && b.R0.is_zero();
    }});
    f.expectations.push_back({"holonomy_in_pE", [m] {
        auto rep = infinitesimal_holonomy(m, generic_point(m, 4), 2);
        return holonomy_in_pE(rep);
    }});
    return f;
}

FamilyMetric recurrent_case_I(int n, Expr H1) {
    if (H1.depends_on(var::v)) throw BadDependence("H must not depend on v");
    for (int i = 2; i <= n; ++i)
        if (H1.depends_on(var::x(i)))
            throw BadDependence("H must depend on x1 and u only");
    FamilyMetric f = pp_wave(n, H1);
    f.family = "walker-I";
    WalkerMetric m = f.metric;
    f.expectations.push_back({"curvature_recurrent", [m] { return recurrent_or_parallel(m); }});
    if (n >= 2) {
        f.expectations.push_back({"holonomy_decomposable", [m] {
            auto rep = infinitesimal_holonomy(m, generic_point(m, 4), 2);
            return rep.type == "decomposable" || rep.type == "trivial";
        }});
    }
    return f;
}

static Expr quadratic_form(int n, const std::vector<Rational>& lambda) {
    Expr H;
    for (int i = 1; i <= n; ++i)
        H = H + Expr(lambda[static_cast<size_t>(i - 1)]) * Expr::coordinate_x(i).pow(2);
    return H;
}

static void check_lambda_order(int n, const std::vector<Rational>& lambda) {
    if (static_cast<int>(lambda.size()) != n)
        throw Error("lambda must have n entries");
    for (int i = 1; i < n; ++i)
        if (rabs(lambda[static_cast<size_t>(i - 1)]) < rabs(lambda[static_cast<size_t>(i)]))
            throw OrderingViolation("|lambda_1| >= ... >= |lambda_n| required");
    if (n < 2 || lambda[1] == 0) throw Lambda2Zero("lambda_2 must be nonzero");
}

FamilyMetric recurrent_case_II(int n, const std::vector<Rational>& lambda, int f_index) {
    check_lambda_order(n, lambda);
    FamilyMetric f = pp_wave(n, Expr::formal(f_index) * quadratic_form(n, lambda));
    f.family = "walker-II";
    WalkerMetric m = f.metric;
    f.expectations.push_back({"curvature_recurrent", [m] { return recurrent_or_parallel(m); }});
    bool all_nonzero = true, all_equal = true;
    for (const auto& l : lambda) {
        if (l == 0) all_nonzero = false;
        if (l != lambda[0]) all_equal = false;
    }
    if (all_nonzero) {
        f.expectations.push_back({"holonomy_weakly_irreducible", [m] {
            auto rep = infinitesimal_holonomy(m, generic_point(m, 4), 2);
            return rep.type == "I" || rep.type == "II" || rep.type == "III" ||
                   rep.type == "IV" || rep.type == "irreducible-so(1,n+1)";
        }});
    } else {
        f.expectations.push_back({"holonomy_decomposable", [m] {
            auto rep = infinitesimal_holonomy(m, generic_point(m, 4), 2);
            return rep.type == "decomposable" || rep.type == "trivial";
        }});
    }
    if (all_equal && n + 2 >= 4) {
        f.expectations.push_back({"weyl_zero", [m] {
            return weyl_walker(m).is_zero();
        }});
    }
    return f;
}

FamilyMetric cahen_wallach(int n, const std::vector<Rational>& lambda) {
    if (static_cast<int>(lambda.size()) != n)
        throw Error("lambda must have n entries");
    FamilyMetric f = pp_wave(n, quadratic_form(n, lambda));
    f.family = "cahen-wallach";
    WalkerMetric m = f.metric;
    f.expectations.push_back({"curvature_parallel", [m] {
        Geometry geo(m);
        return geo.nabla_riemann().is_zero();
    }});
    bool all_nonzero = true;
    for (const auto& l : lambda)
        if (l == 0) all_nonzero = false;
    if (all_nonzero) {
        f.expectations.push_back({"holonomy_pE_full", [m] {
            auto rep = infinitesimal_holonomy(m, generic_point(m, 4), 1);
            return holonomy_in_pE(rep) && rep.dim == m.n;
        }});
    }
    return f;
}

FamilyMetric two_symmetric(int n, const std::vector<Rational>& hdiag,
                           const std::vector<std::vector<Rational>>& fsym) {
    if (static_cast<int>(hdiag.size()) != n) throw Error("hdiag must have n entries");
    bool all_zero = true;
    for (const auto& l : hdiag)
        if (l != 0) all_zero = false;
    if (all_zero) throw ZeroHMatrix("hdiag must be nonzero");
    for (int i = 1; i < n; ++i)
        if (hdiag[static_cast<size_t>(i - 1)] > hdiag[static_cast<size_t>(i)])
            throw OrderingViolation("hdiag must be sorted ascending");
    if (static_cast<int>(fsym.size()) != n) throw Error("fsym must be n x n");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(fsym[static_cast<size_t>(i)].size()) != n)
            throw Error("fsym must be n x n");
        for (int j = 0; j < i; ++j)
            if (fsym[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                fsym[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw AsymmetricF("fsym must be symmetric");
    }
    Expr H;
    for (int i = 1; i <= n; ++i)
        H = H + Expr(hdiag[static_cast<size_t>(i - 1)]) * Expr::coordinate_u() *
                    Expr::coordinate_x(i).pow(2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            H = H + Expr(fsym[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]) *
                        Expr::coordinate_x(i) * Expr::coordinate_x(j);
    FamilyMetric f = pp_wave(n, std::move(H));
    f.family = "two-symmetric";
    WalkerMetric m = f.metric;
    f.expectations.push_back({"two_symmetric", [m] {
        auto rep = is_two_symmetric(m);
        return rep.two_symmetric && rep.nabla2_r_zero && !rep.nabla_r_zero;
    }});
    return f;
}

FamilyMetric conformally_recurrent(int n, int a_index, int f_index,
                                   const std::vector<Rational>& lambda) {
    if (n < 2) throw DimensionTooSmall("need n + 2 >= 4 for a Weyl tensor");
    if (static_cast<int>(lambda.size()) != n) throw Error("lambda must have n entries");
    Rational trace(0);
    for (const auto& l : lambda) trace += l;
    if (trace != 0) throw TraceNotZero("sum of lambda_i must vanish");
    Expr sq;
    for (int i = 1; i <= n; ++i) sq = sq + Expr::coordinate_x(i).pow(2);
    Expr H = Expr::formal(a_index) * sq +
             Expr::formal(f_index) * quadratic_form(n, lambda);
    FamilyMetric f = pp_wave(n, std::move(H));
    f.family = "conf-recurrent";
    WalkerMetric m = f.metric;
    bool all_zero = true;
    for (const auto& l : lambda)
        if (l != 0) all_zero = false;
    if (all_zero) {
        f.expectations.push_back({"weyl_zero", [m] { return weyl_walker(m).is_zero(); }});
    } else {
        f.expectations.push_back({"weyl_recurrent", [m] {
            auto rep = weyl_recurrence(m);
            return rep.is(RecurrenceReport::Verdict::Recurrent) ||
                   rep.is(RecurrenceReport::Verdict::Parallel);
        }});
        // "Freeze F to a constant" must be substituted into the computed
        // nabla W: differentiation regenerates F^(1) from F^(0), so killing
        // derivatives inside H before deriving would be vacuous.
        f.expectations.push_back({"weyl_parallel_when_F_constant", [m, f_index] {
            Geometry geo(m);
            TensorField nw = geo.covariant_derivative(geo.weyl_general());
            for (size_t i = 0; i < nw.flat_size(); ++i)
                if (!nw.flat(i).kill_formal_derivatives(f_index, 1).is_zero())
                    return false;
            return true;
        }});
    }
    return f;
}

WalkerMetric pp_wave_translate(const WalkerMetric& m, const std::vector<Expr>& b,
                               const Expr& c) {
    if (!m.h_is_identity() || !m.A_is_zero() || m.H.depends_on(var::v))
        throw Error("pp_wave_translate requires a pp-wave");
    if (static_cast<int>(b.size()) != m.n) throw Error("need one shift b^i per x^i");
    auto u_only = [](const Expr& e) {
        if (e.depends_on(var::v)) return false;
        for (int i = 1; i <= 100; ++i)
            if (e.depends_on(var::x(i))) return false;
        return true;
    };
    for (const auto& bi : b)
        if (!u_only(bi)) throw Error("each b^i must depend on u only");
    if (!u_only(c)) throw Error("c must depend on u only");

    std::map<int32_t, Expr> images;
    for (int i = 1; i <= m.n; ++i)
        images[var::x(i)] = Expr::coordinate_x(i) + b[static_cast<size_t>(i - 1)];
    Expr H = m.H.substitute(images);
    for (int i = 1; i <= m.n; ++i) {
        const Expr& bi = b[static_cast<size_t>(i - 1)];
        Expr b1 = bi.diff(var::u);
        H = H - Expr(2) * b1.diff(var::u) * Expr::coordinate_x(i) + b1 * b1;
    }
    H = H + Expr(2) * c.diff(var::u);
    return identity_h_metric(m.n, std::move(H));
}

FamilyMetric by_name(const std::string& name, const nlohmann::json& params) {
    try {
        int n = params.at("n").get<int>();
        auto lambdas = [&](const char* key) {
            std::vector<Rational> out;
            for (const auto& v : params.at(key)) {
                if (v.is_number_integer())
                    out.emplace_back(v.get<long long>());
                else
                    out.push_back(parse_expr(v.get<std::string>()).constant_value());
            }
            return out;
        };
        if (name == "pp-wave")
            return pp_wave(n, parse_expr(params.at("H").get<std::string>()));
        if (name == "walker-I")
            return recurrent_case_I(n, parse_expr(params.at("H").get<std::string>()));
        if (name == "walker-II")
            return recurrent_case_II(n, lambdas("lambda"), params.value("F", 0));
        if (name == "cahen-wallach")
            return cahen_wallach(n, lambdas("lambda"));
        if (name == "two-symmetric") {
            std::vector<std::vector<Rational>> fsym(
                static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
            if (params.contains("fsym")) {
                auto& j = params.at("fsym");
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) {
                        auto& v = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(k));
                        fsym[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                            v.is_number_integer()
                                ? Rational(v.template get<long long>())
                                : parse_expr(v.template get<std::string>()).constant_value();
                    }
            }
            return two_symmetric(n, lambdas("hdiag"), fsym);
        }
        if (name == "conf-recurrent")
            return conformally_recurrent(n, params.value("a", 0), params.value("F", 1),
                                         lambdas("lambda"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad family parameters: ") + e.what());
    }
    throw Error("unknown family: " + name);
}

} // namespace walker::families

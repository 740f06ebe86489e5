#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "walker/conditions.hpp"
#include "walker/decomp.hpp"
#include "walker/families.hpp"
#include "walker/holonomy.hpp"
#include "walker/io.hpp"

using nlohmann::json;
using namespace walker;

namespace {

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

json ratio_json(const Ratio& r) {
    json j;
    j["num"] = r.num.str();
    j["den"] = r.den.str();
    return j;
}

json tensor_json(const TensorField& t) {
    json comps = json::array();
    for (size_t i = 0; i < t.flat_size(); ++i) {
        if (t.flat(i).is_zero()) continue;
        json entry;
        entry["index"] = t.unflatten(i);
        entry["value"] = t.flat(i).str();
        comps.push_back(entry);
    }
    json j;
    j["rank"] = t.rank();
    j["den"] = t.den().str();
    j["components"] = comps;
    return j;
}

json recurrence_json(const RecurrenceReport& r) {
    json j;
    j["verdict"] = r.verdict_str();
    if (!r.theta.empty()) {
        json th = json::array();
        for (const auto& t : r.theta) th.push_back(ratio_json(t));
        j["theta"] = th;
        j["theta_is_polynomial"] = r.theta_is_polynomial;
    }
    return j;
}

json holonomy_json(const HolonomyReport& r) {
    json j;
    j["dim"] = r.dim;
    j["type"] = r.type;
    j["summary"] = r.summary;
    j["has_pq"] = r.has_pq;
    j["pE_dim"] = r.pE_dim;
    j["order_used"] = r.order_used;
    j["stabilized"] = r.stabilized;
    j["dims_by_order"] = r.dims_by_order;
    json en = json::array();
    for (const auto& d : r.e_norms) en.push_back(rat_str(d));
    j["e_norms"] = en;
    json basis = json::array();
    for (const auto& m : r.basis) {
        json mat = json::array();
        for (const auto& row : m) {
            json jr = json::array();
            for (const auto& e : row) jr.push_back(rat_str(e));
            mat.push_back(jr);
        }
        basis.push_back(mat);
    }
    j["basis"] = basis;
    return j;
}

int capped_order(int order) {
    if (const char* env = std::getenv("WALKER_MAX_ORDER")) {
        int cap = std::atoi(env);
        if (cap >= 0 && order > cap) return cap;
    }
    return order;
}

JetPoint point_for(const WalkerMetric& m, const std::string& point_json, int order) {
    if (point_json.empty()) return generic_point(m, std::max(order, 4));
    return parse_jet_point(point_json, m.n);
}

void emit(const json& report, bool as_json, const std::string& emit_path) {
    std::string text = as_json ? report.dump(2) : report.dump(2);
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        if (!out) throw ParseError("cannot write: " + emit_path);
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
}

void print_human(const json& report) {
    std::cout << "sign convention: " << report.value("sign_convention", "") << "\n";
    if (report.contains("blocks")) {
        const auto& b = report["blocks"];
        std::cout << "curvature blocks: lambda "
                  << (b["lambda"]["components"].empty() ? "= 0" : "!= 0") << ", v "
                  << (b["v"]["components"].empty() ? "= 0" : "!= 0") << ", P "
                  << (b["P"]["components"].empty() ? "= 0" : "!= 0") << ", R0 "
                  << (b["R0"]["components"].empty() ? "= 0" : "!= 0") << ", T "
                  << (b["T"]["components"].empty() ? "= 0" : "!= 0") << "\n";
    }
    if (report.contains("curvature_recurrence"))
        std::cout << "nabla R = theta (x) R: "
                  << report["curvature_recurrence"]["verdict"].get<std::string>() << "\n";
    if (report.contains("weyl_recurrence"))
        std::cout << "nabla W = theta (x) W: "
                  << report["weyl_recurrence"]["verdict"].get<std::string>() << "\n";
    if (report.contains("two_symmetric"))
        std::cout << "two-symmetric: "
                  << (report["two_symmetric"].get<bool>() ? "yes" : "no") << "\n";
    if (report.contains("holonomy")) {
        const auto& h = report["holonomy"];
        std::cout << "holonomy: dim " << h["dim"].get<int>() << ", type "
                  << h["type"].get<std::string>() << " (" << h["summary"].get<std::string>()
                  << ")" << (h["stabilized"].get<bool>() ? "" : " [not stabilized]") << "\n";
    }
    if (report.contains("elapsed_ms"))
        std::cout << "elapsed: " << report["elapsed_ms"].get<long>() << " ms\n";
}

json analyze_metric(const WalkerMetric& m, const std::string& point_json, int order) {
    auto t0 = std::chrono::steady_clock::now();
    json report;
    report["sign_convention"] = kSignConvention;
    report["metric"] = metric_to_json(m);

    Geometry geo(m);
    auto blocks = decompose_curvature(geo);
    json jb;
    jb["lambda"] = tensor_json(blocks.lambda);
    jb["v"] = tensor_json(blocks.v);
    jb["P"] = tensor_json(blocks.P);
    jb["R0"] = tensor_json(blocks.R0);
    jb["T"] = tensor_json(blocks.T);
    report["blocks"] = jb;

    report["curvature_recurrence"] = recurrence_json(recurrence_factor(geo.riemann(), geo));
    if (m.dim() >= 4) report["weyl_recurrence"] = recurrence_json(weyl_recurrence(m));

    auto ts = is_two_symmetric(m);
    report["two_symmetric"] = ts.two_symmetric;
    report["nabla_R_zero"] = ts.nabla_r_zero;
    report["nabla2_R_zero"] = ts.nabla2_r_zero;
    report["pp_wave"] = is_pp_wave(m);

    int ord = capped_order(order);
    auto rep = infinitesimal_holonomy_stabilized(m, point_for(m, point_json, ord), ord,
                                                 capped_order(4));
    report["holonomy"] = holonomy_json(rep);

    auto t1 = std::chrono::steady_clock::now();
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

int run_selftest(bool as_json) {
    using namespace walker::families;
    std::vector<FamilyMetric> fixtures;
    fixtures.push_back(pp_wave(2, parse_expr("x1^2 - x2^2 + x1^3*u")));
    fixtures.push_back(cahen_wallach(2, {Rational(1), Rational(2)}));
    fixtures.push_back(recurrent_case_I(2, parse_expr("x1^3 + x1^2*u")));
    fixtures.push_back(recurrent_case_II(2, {Rational(2), Rational(1)}));
    fixtures.push_back(recurrent_case_II(2, {Rational(1), Rational(1)}));
    fixtures.push_back(recurrent_case_II(3, {Rational(2), Rational(-1), Rational(1)}));
    fixtures.push_back(two_symmetric(2, {Rational(0), Rational(1)},
                                     {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}));
    fixtures.push_back(two_symmetric(2, {Rational(1), Rational(2)},
                                     {{Rational(3), Rational(0)}, {Rational(0), Rational(4)}}));
    fixtures.push_back(conformally_recurrent(2, 0, 1, {Rational(1), Rational(-1)}));
    fixtures.push_back(conformally_recurrent(2, 0, 1, {Rational(0), Rational(0)}));

    json results = json::array();
    bool all_ok = true;
    for (const auto& f : fixtures) {
        for (const auto& e : f.expectations) {
            bool ok = false;
            std::string err;
            try {
                ok = e.check();
            } catch (const std::exception& ex) {
                err = ex.what();
            }
            all_ok = all_ok && ok;
            if (as_json) {
                json r;
                r["family"] = f.family;
                r["expectation"] = e.name;
                r["pass"] = ok;
                if (!err.empty()) r["error"] = err;
                results.push_back(r);
            } else {
                std::cout << (ok ? "PASS" : "FAIL") << "  " << f.family << " :: " << e.name;
                if (!err.empty()) std::cout << "  (" << err << ")";
                std::cout << "\n";
            }
        }
    }
    if (as_json) {
        json out;
        out["sign_convention"] = kSignConvention;
        out["results"] = results;
        out["all_pass"] = all_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "selftest: all expectations pass"
                             : "selftest: FAILURES present")
                  << "\n";
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tensor calculus for Walker-form Lorentzian metrics"};
    app.require_subcommand(1);

    std::string metric_path, point_json, emit_path, family_name, params_json;
    std::string check_what = "recurrent";
    int order = 2;
    bool as_json = false;

    auto add_common = [&](CLI::App* sub, bool needs_metric) {
        if (needs_metric)
            sub->add_option("--metric", metric_path, "metric JSON file")->required();
        sub->add_flag("--json", as_json, "machine-readable JSON output");
        sub->add_option("--emit", emit_path, "write the report to a file");
    };

    auto* analyze = app.add_subcommand("analyze", "full curvature/holonomy report");
    add_common(analyze, true);
    analyze->add_option("--point", point_json, "jet point JSON");
    analyze->add_option("--order", order, "holonomy derivative order");

    auto* check = app.add_subcommand("check", "single yes/no property check");
    add_common(check, true);
    check->add_option("--what", check_what,
                      "one of recurrent|weyl-recurrent|two-symmetric|pp-wave|parallel");
    check->add_flag_callback("--two-symmetric", [&] { check_what = "two-symmetric"; });
    check->add_flag_callback("--recurrent", [&] { check_what = "recurrent"; });
    check->add_flag_callback("--weyl-recurrent", [&] { check_what = "weyl-recurrent"; });
    check->add_flag_callback("--pp-wave", [&] { check_what = "pp-wave"; });
    check->add_flag_callback("--parallel", [&] { check_what = "parallel"; });

    auto* holonomy = app.add_subcommand("holonomy", "infinitesimal holonomy algebra");
    add_common(holonomy, true);
    holonomy->add_option("--point", point_json, "jet point JSON");
    holonomy->add_option("--order", order, "derivative order");

    auto* family = app.add_subcommand("family", "construct a named metric family");
    family->add_option("--name", family_name, "family name")->required();
    family->add_option("--params", params_json, "parameters JSON")->required();
    family->add_flag("--json", as_json, "machine-readable JSON output");
    family->add_option("--emit", emit_path, "write the metric JSON to a file");

    auto* selftest = app.add_subcommand("selftest", "run the built-in expectation suite");
    selftest->add_flag("--json", as_json, "machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (selftest->parsed()) return run_selftest(as_json);

        if (family->parsed()) {
            json params = json::parse(params_json);
            auto fam = families::by_name(family_name, params);
            json out;
            out["family"] = fam.family;
            out["metric"] = metric_to_json(fam.metric);
            json names = json::array();
            for (const auto& e : fam.expectations) names.push_back(e.name);
            out["expectations"] = names;
            if (!emit_path.empty()) {
                std::ofstream f(emit_path);
                if (!f) throw ParseError("cannot write: " + emit_path);
                f << metric_to_json(fam.metric).dump(2) << "\n";
            }
            if (as_json)
                std::cout << out.dump(2) << "\n";
            else
                std::cout << "constructed " << fam.family << " metric, H = "
                          << fam.metric.H.str() << "\n";
            return 0;
        }

        WalkerMetric m = load_metric(metric_path);

        if (check->parsed()) {
            bool ok = false;
            std::string detail;
            if (check_what == "two-symmetric") {
                auto r = is_two_symmetric(m);
                ok = r.two_symmetric;
            } else if (check_what == "pp-wave") {
                ok = is_pp_wave(m);
            } else if (check_what == "weyl-recurrent") {
                auto r = weyl_recurrence(m);
                ok = r.is(RecurrenceReport::Verdict::Recurrent) ||
                     r.is(RecurrenceReport::Verdict::Parallel);
                detail = r.verdict_str();
            } else if (check_what == "parallel") {
                Geometry geo(m);
                auto r = recurrence_factor(geo.riemann(), geo);
                ok = r.is(RecurrenceReport::Verdict::Parallel) ||
                     r.is(RecurrenceReport::Verdict::ZeroTensor);
                detail = r.verdict_str();
            } else if (check_what == "recurrent") {
                Geometry geo(m);
                auto r = recurrence_factor(geo.riemann(), geo);
                ok = r.is(RecurrenceReport::Verdict::Recurrent) ||
                     r.is(RecurrenceReport::Verdict::Parallel);
                detail = r.verdict_str();
            } else {
                throw ParseError("unknown check: " + check_what);
            }
            json out;
            out["sign_convention"] = kSignConvention;
            out["check"] = check_what;
            out["result"] = ok;
            if (!detail.empty()) out["verdict"] = detail;
            if (as_json)
                emit(out, true, emit_path);
            else
                std::cout << check_what << ": " << (ok ? "yes" : "no")
                          << (detail.empty() ? "" : " (" + detail + ")") << "\n";
            return ok ? 0 : 1;
        }

        if (holonomy->parsed()) {
            int ord = capped_order(order);
            auto rep = infinitesimal_holonomy(m, point_for(m, point_json, ord), ord);
            json out;
            out["sign_convention"] = kSignConvention;
            out["holonomy"] = holonomy_json(rep);
            if (as_json)
                emit(out, true, emit_path);
            else {
                std::cout << "holonomy: dim " << rep.dim << ", type " << rep.type << " ("
                          << rep.summary << ")"
                          << (rep.stabilized ? "" : " [not stabilized]") << "\n";
            }
            return 0;
        }

        // analyze
        json report = analyze_metric(m, point_json, order);
        if (as_json || !emit_path.empty())
            emit(report, true, emit_path);
        if (!as_json)
            print_human(report);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

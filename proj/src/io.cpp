#include "walker/io.hpp"

#include <fstream>

namespace walker {

WalkerMetric metric_from_json(const nlohmann::json& j) {
    WalkerMetric m;
    try {
        m.n = j.at("n").get<int>();
        if (m.n < 1) throw ParseError("n must be >= 1");
        m.h.assign(static_cast<size_t>(m.n),
                   std::vector<Expr>(static_cast<size_t>(m.n), Expr()));
        for (int i = 0; i < m.n; ++i) m.h[static_cast<size_t>(i)][static_cast<size_t>(i)] = Expr(1);
        if (j.contains("h")) {
            const auto& jh = j.at("h");
            for (int i = 0; i < m.n; ++i)
                for (int k = 0; k < m.n; ++k)
                    m.h[static_cast<size_t>(i)][static_cast<size_t>(k)] = parse_expr(
                        jh.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<std::string>());
        }
        m.A.assign(static_cast<size_t>(m.n), Expr());
        if (j.contains("A")) {
            const auto& ja = j.at("A");
            for (int i = 0; i < m.n; ++i)
                m.A[static_cast<size_t>(i)] =
                    parse_expr(ja.at(static_cast<size_t>(i)).get<std::string>());
        }
        m.H = parse_expr(j.at("H").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad metric JSON: ") + e.what());
    }
    m.validate();
    return m;
}

nlohmann::json metric_to_json(const WalkerMetric& m) {
    nlohmann::json j;
    j["n"] = m.n;
    nlohmann::json h = nlohmann::json::array();
    for (const auto& row : m.h) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& e : row) r.push_back(e.str());
        h.push_back(r);
    }
    j["h"] = h;
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : m.A) a.push_back(e.str());
    j["A"] = a;
    j["H"] = m.H.str();
    return j;
}

WalkerMetric load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open metric file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return metric_from_json(j);
}

void save_metric(const WalkerMetric& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write metric file: " + path);
    out << metric_to_json(m).dump(2) << "\n";
}

} // namespace walker

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "walker/walker.hpp"

namespace walker {

// Metric JSON schema:
//   { "n": 2,
//     "h": [["1","0"],["0","1"]],      // optional, default identity
//     "A": ["0","0"],                  // optional, default zero
//     "H": "2*x1^2*F0(u) + x2^2" }
// Entries use the expression grammar and round-trip through Expr::str().
WalkerMetric metric_from_json(const nlohmann::json& j);
nlohmann::json metric_to_json(const WalkerMetric& m);
WalkerMetric load_metric(const std::string& path);
void save_metric(const WalkerMetric& m, const std::string& path);

} // namespace walker

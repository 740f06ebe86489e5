#include "walker/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace walker {

namespace var {
std::string name(int32_t code) {
    if (code == v) return "v";
    if (code == u) return "u";
    if (is_formal(code)) {
        int j = formal_index(code);
        int k = formal_order(code);
        std::ostringstream os;
        os << "F" << j;
        if (k > 0) os << "^(" << k << ")";
        os << "(u)";
        return os.str();
    }
    return "x" + std::to_string(code);
}
} // namespace var

bool monomial_lex_greater(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second > b[j].second;
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            return true; // a has a positive power of an earlier variable
        } else {
            return false;
        }
    }
    return i < a.size();
}

Expr::Expr(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

Expr Expr::variable(int32_t code, int exponent) {
    Expr e;
    if (exponent == 0) return Expr(1);
    e.terms_.emplace(Monomial{{code, exponent}}, Rational(1));
    return e;
}

bool Expr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Expr::constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

void Expr::insert_term(Monomial m, Rational c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Expr Expr::operator-() const {
    Expr r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Expr Expr::operator+(const Expr& o) const {
    Expr r = *this;
    for (const auto& [m, c] : o.terms_) r.insert_term(m, c);
    return r;
}

Expr Expr::operator-(const Expr& o) const {
    Expr r = *this;
    for (const auto& [m, c] : o.terms_) r.insert_term(m, -c);
    return r;
}

static Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            m.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            m.push_back(b[j++]);
        } else {
            m.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return m;
}

Expr Expr::operator*(const Expr& o) const {
    Expr r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.insert_term(merge_monomials(ma, mb), ca * cb);
    return r;
}

Expr Expr::operator*(const Rational& c) const {
    Expr r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Expr Expr::pow(int e) const {
    Expr r(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Expr Expr::diff(int32_t code) const {
    Expr r;
    for (const auto& [m, c] : terms_) {
        for (size_t f = 0; f < m.size(); ++f) {
            const auto [vc, e] = m[f];
            bool direct = (vc == code);
            bool chain = (code == var::u && var::is_formal(vc) &&
                          var::formal_order(vc) + 1 < var::formal_stride);
            if (!direct && !(code == var::u && var::is_formal(vc))) continue;
            if (!direct && !chain) continue;
            Monomial dm;
            dm.reserve(m.size() + 1);
            for (size_t g = 0; g < m.size(); ++g) {
                if (g == f) {
                    if (e > 1) dm.emplace_back(vc, e - 1);
                } else {
                    dm.push_back(m[g]);
                }
            }
            if (!direct) {
                // F_j^(k) -> F_j^(k+1) factor from the chain rule
                dm = merge_monomials(dm, Monomial{{vc + 1, 1}});
            }
            r.insert_term(std::move(dm), c * e);
        }
    }
    return r;
}

Rational Expr::eval(const JetPoint& p) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [vc, e] : m) {
            Rational base(0);
            if (var::is_formal(vc)) {
                int j = var::formal_index(vc);
                int k = var::formal_order(vc);
                auto it = p.jets.find(j);
                if (it == p.jets.end() || k >= static_cast<int>(it->second.size()))
                    throw InsufficientJet("jet of F" + std::to_string(j) +
                                          " does not cover derivative order " +
                                          std::to_string(k));
                base = it->second[k];
            } else {
                auto it = p.coords.find(vc);
                if (it != p.coords.end()) base = it->second;
            }
            for (int i = 0; i < e; ++i) t *= base;
        }
        total += t;
    }
    return total;
}

// Monomial division: a / b when every exponent of b is covered.
static std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b) {
    Monomial q;
    size_t i = 0;
    for (const auto& [vc, e] : b) {
        while (i < a.size() && a[i].first < vc) q.push_back(a[i++]);
        if (i == a.size() || a[i].first != vc || a[i].second < e) return std::nullopt;
        if (a[i].second > e) q.emplace_back(vc, a[i].second - e);
        ++i;
    }
    while (i < a.size()) q.push_back(a[i++]);
    return q;
}

std::optional<Expr> Expr::divide_exact(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DivisionByZeroExpr("divide_exact by the zero expression");
    Expr rem = a;
    Expr q;
    const auto& ltb = *b.terms_.begin();
    while (!rem.is_zero()) {
        const auto& lta = *rem.terms_.begin();
        auto mq = monomial_quotient(lta.first, ltb.first);
        if (!mq) return std::nullopt;
        Expr t;
        t.terms_.emplace(std::move(*mq), lta.second / ltb.second);
        q = q + t;
        rem = rem - t * b;
    }
    return q;
}

Expr Expr::substitute(const std::map<int32_t, Expr>& images) const {
    Expr r;
    for (const auto& [m, c] : terms_) {
        Expr t(c);
        for (const auto& [vc, e] : m) {
            auto it = images.find(vc);
            if (it != images.end()) {
                t = t * it->second.pow(e);
            } else {
                t = t * variable(vc, e);
            }
        }
        r = r + t;
    }
    return r;
}

Expr Expr::kill_formal_derivatives(int j, int k_min) const {
    Expr r;
    for (const auto& [m, c] : terms_) {
        bool dead = false;
        for (const auto& [vc, e] : m) {
            (void)e;
            if (var::is_formal(vc) && var::formal_index(vc) == j &&
                var::formal_order(vc) >= k_min) {
                dead = true;
                break;
            }
        }
        if (!dead) r.insert_term(m, c);
    }
    return r;
}

Expr Expr::rename_formal(int from_j, int to_j) const {
    Expr r;
    for (const auto& [m, c] : terms_) {
        Monomial nm;
        for (auto [vc, e] : m) {
            if (var::is_formal(vc) && var::formal_index(vc) == from_j)
                vc = var::formal(to_j, var::formal_order(vc));
            nm = merge_monomials(nm, Monomial{{vc, e}});
        }
        r.insert_term(std::move(nm), c);
    }
    return r;
}

bool Expr::depends_on(int32_t code) const {
    for (const auto& [m, c] : terms_) {
        (void)c;
        for (const auto& [vc, e] : m) {
            (void)e;
            if (vc == code) return true;
        }
    }
    return false;
}

std::map<int, int> Expr::formal_orders() const {
    std::map<int, int> orders;
    for (const auto& [m, c] : terms_) {
        (void)c;
        for (const auto& [vc, e] : m) {
            (void)e;
            if (var::is_formal(vc)) {
                int j = var::formal_index(vc);
                int k = var::formal_order(vc);
                auto it = orders.find(j);
                if (it == orders.end() || it->second < k) orders[j] = k;
            }
        }
    }
    return orders;
}

int Expr::degree(int32_t code) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        (void)c;
        for (const auto& [vc, e] : m)
            if (vc == code && e > d) d = e;
    }
    return d;
}

static std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string Expr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool need_coeff = (a != 1) || m.empty();
        if (need_coeff) os << rational_str(a);
        bool need_star = need_coeff;
        for (const auto& [vc, e] : m) {
            if (need_star) os << "*";
            os << var::name(vc);
            if (e != 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos) + " in \"" + s + "\"");
    }
    long parse_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at position " +
                                           std::to_string(pos) + " in \"" + s + "\"");
        return std::stol(s.substr(start, pos - start));
    }

    Expr parse_expr() {
        Expr e = parse_term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                e = e + parse_term();
            } else if (c == '-') {
                ++pos;
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_power();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                e = e * parse_power();
            } else if (c == '/') {
                ++pos;
                Expr d = parse_power();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError("division is only supported by nonzero constants");
                e = e * (Rational(1) / d.constant_value());
            } else {
                return e;
            }
        }
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (peek() == '^') {
            ++pos;
            skip_ws();
            if (peek() == '-') throw ParseError("negative exponents are not supported");
            long e = parse_integer();
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    Expr parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (c == '-') {
            ++pos;
            return -parse_power();
        }
        if (c == '+') {
            ++pos;
            return parse_power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Expr(Rational(parse_integer()));
        }
        if (c == 'v') {
            ++pos;
            return Expr::coordinate_v();
        }
        if (c == 'u') {
            ++pos;
            return Expr::coordinate_u();
        }
        if (c == 'x') {
            ++pos;
            long i = parse_integer();
            if (i < 1 || i >= var::u)
                throw ParseError("coordinate index out of range: x" + std::to_string(i));
            return Expr::coordinate_x(static_cast<int>(i));
        }
        if (c == 'F') {
            ++pos;
            long j = parse_integer();
            int k = 0;
            skip_ws();
            if (pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '(') {
                pos += 2;
                k = static_cast<int>(parse_integer());
                expect(')');
            }
            expect('(');
            expect('u');
            expect(')');
            if (k >= var::formal_stride - 1)
                throw ParseError("formal derivative order too large");
            return Expr::formal(static_cast<int>(j), k);
        }
        throw ParseError(std::string("unexpected character '") + c + "' at position " +
                         std::to_string(pos) + " in \"" + s + "\"");
    }
};

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        Expr e = parse_expr(j.get<std::string>());
        if (!e.is_constant()) throw ParseError("expected a rational value");
        return e.constant_value();
    }
    throw ParseError("expected a rational value (integer or string like \"3/2\")");
}

} // namespace

Expr parse_expr(const std::string& text) {
    Parser p(text);
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing input at position " + std::to_string(p.pos) +
                         " in \"" + text + "\"");
    return e;
}

JetPoint parse_jet_point(const std::string& json_text, int n) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid point JSON: ") + e.what());
    }
    JetPoint p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "v") {
            p.coords[var::v] = rational_from_json(it.value());
        } else if (key == "u") {
            p.coords[var::u] = rational_from_json(it.value());
        } else if (key.size() > 1 && key[0] == 'x') {
            int i = std::stoi(key.substr(1));
            if (i < 1 || i > n) throw ParseError("coordinate out of range: " + key);
            p.coords[var::x(i)] = rational_from_json(it.value());
        } else if (key.size() > 1 && key[0] == 'F') {
            int idx = std::stoi(key.substr(1));
            std::vector<Rational> jet;
            for (const auto& e : it.value()) jet.push_back(rational_from_json(e));
            p.jets[idx] = std::move(jet);
        } else {
            throw ParseError("unknown point entry: " + key);
        }
    }
    return p;
}

} // namespace walker

#include "walker/walker.hpp"

#include "walker/errors.hpp"

namespace walker {

const char* const kSignConvention =
    "R^rho_{sigma mu nu} = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma} "
    "+ Gamma Gamma; R_{uiuj} = -1/2 d_i d_j H on pp-waves; T_{ij} = +1/2 d_i d_j H";

geom::Chart WalkerMetric::chart() const {
    geom::Chart c;
    c.vars.push_back(var::v);
    for (int i = 1; i <= n; ++i) c.vars.push_back(var::x(i));
    c.vars.push_back(var::u);
    return c;
}

void WalkerMetric::validate() const {
    if (n < 1) throw Error("WalkerMetric needs n >= 1");
    if (static_cast<int>(h.size()) != n || static_cast<int>(A.size()) != n)
        throw Error("WalkerMetric: h must be n x n and A length n");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(h[i].size()) != n) throw Error("WalkerMetric: h not n x n");
        if (A[i].depends_on(var::v)) throw VDependence("WalkerMetric: A depends on v");
        for (int j = 0; j < n; ++j) {
            if (h[i][j] != h[j][i]) throw Error("WalkerMetric: h is not symmetric");
            if (h[i][j].depends_on(var::v)) throw VDependence("WalkerMetric: h depends on v");
        }
    }
}

bool WalkerMetric::h_is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (h[i][j] != (i == j ? Expr(1) : Expr())) return false;
    return true;
}

bool WalkerMetric::A_is_zero() const {
    for (const auto& a : A)
        if (!a.is_zero()) return false;
    return true;
}

WalkerMetric identity_h_metric(int n, Expr H) {
    WalkerMetric m;
    m.n = n;
    m.h.assign(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i) m.h[i][i] = Expr(1);
    m.A.assign(n, Expr());
    m.H = std::move(H);
    return m;
}

AdaptedFrame adapted_frame(const WalkerMetric& m) {
    const int d = m.dim();
    AdaptedFrame f;
    f.n = m.n;
    TensorField p(d, upper_slots(1));
    p.at({0}) = Expr(1);
    f.vectors.push_back(p);
    for (int i = 1; i <= m.n; ++i) {
        TensorField X(d, upper_slots(1));
        X.at({0}) = -m.A[i - 1];
        X.at({i}) = Expr(1);
        f.vectors.push_back(X);
    }
    TensorField q(d, upper_slots(1));
    q.at({0}) = m.H * Rational(-1, 2);
    q.at({d - 1}) = Expr(1);
    f.vectors.push_back(q);

    TensorField pc(d, lower_slots(1));
    pc.at({0}) = Expr(1);
    for (int i = 1; i <= m.n; ++i) pc.at({i}) = m.A[i - 1];
    pc.at({d - 1}) = m.H * Rational(1, 2);
    f.covectors.push_back(pc);
    for (int i = 1; i <= m.n; ++i) {
        TensorField Xc(d, lower_slots(1));
        Xc.at({i}) = Expr(1);
        f.covectors.push_back(Xc);
    }
    TensorField qc(d, lower_slots(1));
    qc.at({d - 1}) = Expr(1);
    f.covectors.push_back(qc);
    return f;
}

Geometry::Geometry(WalkerMetric m) : m_(std::move(m)), chart_(m_.chart()) {
    m_.validate();
}

const TensorField& Geometry::g() {
    if (!g_) {
        const int d = m_.dim();
        TensorField g(d, lower_slots(2));
        g.at({0, d - 1}) = Expr(1);
        g.at({d - 1, 0}) = Expr(1);
        for (int i = 1; i <= m_.n; ++i) {
            for (int j = 1; j <= m_.n; ++j) g.at({i, j}) = m_.h[i - 1][j - 1];
            g.at({i, d - 1}) = m_.A[i - 1];
            g.at({d - 1, i}) = m_.A[i - 1];
        }
        g.at({d - 1, d - 1}) = m_.H;
        g_ = std::move(g);
    }
    return *g_;
}

const TensorField& Geometry::ginv() {
    if (!ginv_) {
        // Block inverse: only h needs inverting; the determinant of h is the
        // single tracked denominator.
        const int d = m_.dim();
        std::vector<std::vector<Expr>> h = m_.h;
        Expr D = geom::det(h);
        if (D.is_zero()) throw SingularMetric("det h = 0 identically");
        auto adj = geom::adjugate(h);
        TensorField inv(d, upper_slots(2));
        Expr avv;
        for (int i = 0; i < m_.n; ++i)
            for (int j = 0; j < m_.n; ++j) {
                inv.at({i + 1, j + 1}) = adj[i][j];
                avv = avv + m_.A[i] * adj[i][j] * m_.A[j];
            }
        inv.at({0, 0}) = avv - m_.H * D;
        for (int i = 0; i < m_.n; ++i) {
            Expr s;
            for (int j = 0; j < m_.n; ++j) s = s + adj[i][j] * m_.A[j];
            inv.at({0, i + 1}) = -s;
            inv.at({i + 1, 0}) = -s;
        }
        inv.at({0, d - 1}) = D;
        inv.at({d - 1, 0}) = D;
        inv.set_den(D);
        inv.simplify();
        ginv_ = std::move(inv);
    }
    return *ginv_;
}

const TensorField& Geometry::gamma() {
    if (!gamma_) gamma_ = geom::christoffel(chart_, g(), ginv());
    return *gamma_;
}

const TensorField& Geometry::riemann_mixed() {
    if (!rm_) rm_ = geom::riemann_mixed(chart_, gamma());
    return *rm_;
}

const TensorField& Geometry::riemann() {
    if (!rlow_) rlow_ = geom::lower_first(riemann_mixed(), g());
    return *rlow_;
}

const TensorField& Geometry::nabla_riemann() {
    if (!nr_) nr_ = geom::covariant_derivative(chart_, gamma(), riemann());
    return *nr_;
}

const TensorField& Geometry::nabla2_riemann() {
    if (!n2r_) n2r_ = geom::covariant_derivative(chart_, gamma(), nabla_riemann());
    return *n2r_;
}

const TensorField& Geometry::ricci() {
    if (!ric_) ric_ = geom::ricci(riemann_mixed());
    return *ric_;
}

const TensorField& Geometry::scalar() {
    if (!s_) s_ = geom::scalar_curvature(ricci(), ginv());
    return *s_;
}

const AdaptedFrame& Geometry::frame() {
    if (!frame_) frame_ = adapted_frame(m_);
    return *frame_;
}

TensorField Geometry::covariant_derivative(const TensorField& t) {
    return geom::covariant_derivative(chart_, gamma(), t);
}

TensorField Geometry::weyl_general() {
    if (m_.dim() < 4)
        throw DimensionTooSmall("Weyl tensor needs n + 2 >= 4");
    return geom::weyl(g(), ginv(), riemann(), ricci(), scalar());
}

TensorField metric_tensor(const WalkerMetric& m) { return Geometry(m).g(); }
TensorField inverse_metric(const WalkerMetric& m) { return Geometry(m).ginv(); }
TensorField christoffel(const WalkerMetric& m) { return Geometry(m).gamma(); }
TensorField riemann(const WalkerMetric& m) { return Geometry(m).riemann(); }
TensorField covariant_derivative(const TensorField& t, const WalkerMetric& m) {
    return Geometry(m).covariant_derivative(t);
}
std::pair<TensorField, TensorField> ricci_and_scalar(const WalkerMetric& m) {
    Geometry geo(m);
    return {geo.ricci(), geo.scalar()};
}
TensorField weyl_general(const WalkerMetric& m) { return Geometry(m).weyl_general(); }
TensorField weyl_walker(const WalkerMetric& m) {
    Geometry geo(m);
    return weyl_walker(geo);
}

namespace {

// Replace slot s index by a contraction against the given family of rank-1
// tensors: out[.. a ..] = sum_mu fam[a]_mu t[.. mu ..].
TensorField contract_slot(const TensorField& t, int s,
                          const std::vector<TensorField>& fam) {
    const int d = t.dim();
    TensorField next(d, t.valence());
    for (size_t o = 0; o < next.flat_size(); ++o) {
        auto idx = next.unflatten(o);
        const int a = idx[s];
        auto jdx = idx;
        Expr sum;
        for (int mu = 0; mu < d; ++mu) {
            const Expr& c = fam[a].at({mu});
            if (c.is_zero()) continue;
            jdx[s] = mu;
            sum = sum + c * t.at(jdx);
        }
        next.flat(o) = sum;
    }
    next.set_den(t.den());
    return next;
}

// out[.. mu ..] = sum_a fam[a]_mu t[.. a ..]
TensorField expand_slot(const TensorField& t, int s,
                        const std::vector<TensorField>& fam) {
    const int d = t.dim();
    TensorField next(d, t.valence());
    for (size_t o = 0; o < next.flat_size(); ++o) {
        auto idx = next.unflatten(o);
        const int mu = idx[s];
        auto jdx = idx;
        Expr sum;
        for (int a = 0; a < d; ++a) {
            const Expr& c = fam[a].at({mu});
            if (c.is_zero()) continue;
            jdx[s] = a;
            sum = sum + c * t.at(jdx);
        }
        next.flat(o) = sum;
    }
    next.set_den(t.den());
    return next;
}

} // namespace

TensorField frame_components(const TensorField& t, const AdaptedFrame& frame) {
    TensorField cur = t;
    for (int s = 0; s < t.rank(); ++s) cur = contract_slot(cur, s, frame.vectors);
    cur.simplify();
    return cur;
}

TensorField coordinate_components(const TensorField& t_frame, const AdaptedFrame& frame) {
    TensorField cur = t_frame;
    for (int s = 0; s < t_frame.rank(); ++s) cur = expand_slot(cur, s, frame.covectors);
    cur.simplify();
    return cur;
}

HFamilyGeometry h_family_geometry(const WalkerMetric& m) {
    HFamilyGeometry out;
    for (int i = 1; i <= m.n; ++i) out.chart.vars.push_back(var::x(i));
    out.h = TensorField(m.n, lower_slots(2));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out.h.at({i, j}) = m.h[i][j];
    out.hinv = geom::metric_inverse(out.h);
    TensorField gamma = geom::christoffel(out.chart, out.h, out.hinv);
    TensorField rm = geom::riemann_mixed(out.chart, gamma);
    out.riemann = geom::lower_first(rm, out.h);
    out.ricci = geom::ricci(rm);
    out.scalar = geom::scalar_curvature(out.ricci, out.hinv);
    return out;
}

} // namespace walker

#include "walker/holonomy.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace walker {

// ---------------------------------------------------------------------------
// Rational linear algebra
// ---------------------------------------------------------------------------

QVec vectorize(const QMatrix& m) {
    QVec v;
    v.reserve(m.size() * m.size());
    for (const auto& row : m)
        for (const auto& e : row) v.push_back(e);
    return v;
}

QMatrix matrixize(const QVec& v, int dim) {
    QMatrix m(dim, QVec(dim));
    size_t k = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m[i][j] = v[k++];
    return m;
}

static QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
    size_t d = a.size();
    QMatrix r(d, QVec(d, Rational(0)));
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < d; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

QMatrix bracket(const QMatrix& a, const QMatrix& b) {
    QMatrix ab = qmat_mul(a, b), ba = qmat_mul(b, a);
    size_t d = a.size();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) ab[i][j] -= ba[i][j];
    return ab;
}

QMatrix qmat_inverse(const QMatrix& m) {
    size_t d = m.size();
    QMatrix a = m;
    QMatrix inv(d, QVec(d, Rational(0)));
    for (size_t i = 0; i < d; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        while (piv < d && a[piv][col] == 0) ++piv;
        if (piv == d) throw Error("qmat_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = Rational(1) / a[col][col];
        for (size_t j = 0; j < d; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (size_t r = 0; r < d; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t j = 0; j < d; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

static int pivot_of(const QVec& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return static_cast<int>(i);
    return -1;
}

void QSpan::reduce(QVec& v) const {
    for (const auto& row : rows_) {
        int p = pivot_of(row);
        if (p < 0) continue;
        if (v[static_cast<size_t>(p)] == 0) continue;
        Rational f = v[static_cast<size_t>(p)]; // row pivot is normalized to 1
        for (size_t i = 0; i < width_; ++i) v[i] -= f * row[i];
    }
}

bool QSpan::add(QVec v) {
    if (v.size() != width_) throw Error("QSpan: width mismatch");
    reduce(v);
    int p = pivot_of(v);
    if (p < 0) return false;
    Rational s = Rational(1) / v[static_cast<size_t>(p)];
    for (auto& e : v) e *= s;
    // Back-substitute into existing rows so the set stays in RREF.
    for (auto& row : rows_) {
        if (row[static_cast<size_t>(p)] == 0) continue;
        Rational f = row[static_cast<size_t>(p)];
        for (size_t i = 0; i < width_; ++i) row[i] -= f * v[i];
    }
    auto it = std::lower_bound(rows_.begin(), rows_.end(), p,
                               [](const QVec& r, int pv) { return pivot_of(r) < pv; });
    rows_.insert(it, std::move(v));
    return true;
}

bool QSpan::contains(QVec v) const {
    reduce(v);
    return pivot_of(v) < 0;
}

// ---------------------------------------------------------------------------
// so(1, n+1) structure in the Witt basis
// ---------------------------------------------------------------------------

QMatrix witt_eta(int n, const QVec& d) {
    int dim = n + 2;
    QMatrix eta(dim, QVec(dim, Rational(0)));
    eta[0][dim - 1] = 1;
    eta[dim - 1][0] = 1;
    for (int i = 1; i <= n; ++i) eta[i][i] = d[static_cast<size_t>(i - 1)];
    return eta;
}

QMatrix wedge(const QVec& X, const QVec& Y, const QVec& d) {
    int dim = static_cast<int>(X.size());
    int n = dim - 2;
    QMatrix eta = witt_eta(n, d);
    // column b = eta(X, zeta_b) Y - eta(Y, zeta_b) X
    QMatrix m(dim, QVec(dim, Rational(0)));
    for (int b = 0; b < dim; ++b) {
        Rational ex(0), ey(0);
        for (int k = 0; k < dim; ++k) {
            ex += X[static_cast<size_t>(k)] * eta[k][b];
            ey += Y[static_cast<size_t>(k)] * eta[k][b];
        }
        for (int a = 0; a < dim; ++a)
            m[a][b] = ex * Y[static_cast<size_t>(a)] - ey * X[static_cast<size_t>(a)];
    }
    return m;
}

QMatrix wedge(const QVec& X, const QVec& Y) {
    QVec ones(X.size() - 2, Rational(1));
    return wedge(X, Y, ones);
}

bool is_eta_skew(const QMatrix& m, const QMatrix& eta) {
    size_t d = m.size();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Rational s(0);
            for (size_t k = 0; k < d; ++k)
                s += m[k][i] * eta[k][j] + eta[i][k] * m[k][j];
            if (s != 0) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Infinitesimal holonomy
// ---------------------------------------------------------------------------

JetPoint generic_point(const WalkerMetric& m, int extra_jet) {
    JetPoint pt;
    pt.coords[var::v] = 0;
    pt.coords[var::u] = 0;
    for (int i = 1; i <= m.n; ++i) pt.coords[var::x(i)] = i;
    std::map<int, int> orders;
    auto merge = [&](const Expr& e) {
        for (auto [j, k] : e.formal_orders()) {
            auto it = orders.find(j);
            if (it == orders.end() || it->second < k) orders[j] = k;
        }
    };
    for (const auto& row : m.h)
        for (const auto& e : row) merge(e);
    for (const auto& e : m.A) merge(e);
    merge(m.H);
    for (auto [j, k] : orders) {
        int len = k + 3 + extra_jet; // curvature needs two u-derivatives, each
                                     // nabla one more; +1 for the value itself
        std::vector<Rational> jet;
        jet.reserve(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i)
            jet.push_back(Rational(7 * (j + 1) + 3 * i + 1, i + 2));
        pt.jets[j] = std::move(jet);
    }
    return pt;
}

// Dense rational evaluation of a tensor field at a point (denominator folded).
static std::vector<Rational> eval_tensor(const TensorField& t, const JetPoint& pt) {
    Rational den = t.den().eval(pt);
    if (den == 0) throw Error("tensor denominator vanishes at the evaluation point");
    std::vector<Rational> vals(t.flat_size());
    for (size_t i = 0; i < t.flat_size(); ++i) vals[i] = t.flat(i).eval(pt) / den;
    return vals;
}

// Contract every slot of a dense all-covariant value array with the Witt
// frame column vectors wv[a].
static std::vector<Rational> to_witt_frame(std::vector<Rational> vals, int rank,
                                           int dim, const std::vector<QVec>& wv) {
    for (int slot = 0; slot < rank; ++slot) {
        std::vector<Rational> next(vals.size(), Rational(0));
        size_t tail = 1;
        for (int r = slot + 1; r < rank; ++r) tail *= static_cast<size_t>(dim);
        size_t head = vals.size() / (tail * static_cast<size_t>(dim));
        for (size_t h = 0; h < head; ++h)
            for (int a = 0; a < dim; ++a) {
                size_t out_base = (h * static_cast<size_t>(dim) + static_cast<size_t>(a)) * tail;
                for (int mu = 0; mu < dim; ++mu) {
                    const Rational& c = wv[static_cast<size_t>(a)][static_cast<size_t>(mu)];
                    if (c == 0) continue;
                    size_t in_base = (h * static_cast<size_t>(dim) + static_cast<size_t>(mu)) * tail;
                    for (size_t t = 0; t < tail; ++t)
                        next[out_base + t] += c * vals[in_base + t];
                }
            }
        vals = std::move(next);
    }
    return vals;
}

namespace {
struct WittData {
    int dim = 0;
    std::vector<QVec> wv; // Witt frame vectors in coordinates
    QVec d;               // eta(e_i, e_i)
    QMatrix eta;
    QMatrix eta_inv;
};
} // namespace

static WittData build_witt_frame(Geometry& geo, const JetPoint& pt) {
    const WalkerMetric& m = geo.metric();
    int dim = m.dim(), n = m.n;
    std::vector<Rational> gv = eval_tensor(geo.g(), pt);
    QMatrix G(dim, QVec(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            G[i][j] = gv[static_cast<size_t>(i * dim + j)];
    auto inner = [&](const QVec& a, const QVec& b) {
        Rational s(0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                s += a[static_cast<size_t>(i)] * G[i][j] * b[static_cast<size_t>(j)];
        return s;
    };
    const AdaptedFrame& fr = geo.frame();
    std::vector<QVec> fv(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        auto vals = eval_tensor(fr.vectors[static_cast<size_t>(a)], pt);
        fv[static_cast<size_t>(a)] = QVec(vals.begin(), vals.end());
    }
    // Gram-Schmidt on X_1..X_n without normalization (exact over Q; square
    // roots are not available, so eta(e_i, e_i) stays a positive rational).
    WittData w;
    w.dim = dim;
    w.wv.resize(static_cast<size_t>(dim));
    w.wv[0] = fv[0];
    w.wv[static_cast<size_t>(dim - 1)] = fv[static_cast<size_t>(dim - 1)];
    for (int i = 1; i <= n; ++i) {
        QVec e = fv[static_cast<size_t>(i)];
        for (int j = 1; j < i; ++j) {
            Rational c = inner(fv[static_cast<size_t>(i)], w.wv[static_cast<size_t>(j)]) /
                         w.d[static_cast<size_t>(j - 1)];
            for (int k = 0; k < dim; ++k)
                e[static_cast<size_t>(k)] -= c * w.wv[static_cast<size_t>(j)][static_cast<size_t>(k)];
        }
        Rational nn = inner(e, e);
        if (nn <= 0) throw NonPositiveDefiniteH("h is not positive definite at the evaluation point");
        w.wv[static_cast<size_t>(i)] = std::move(e);
        w.d.push_back(nn);
    }
    w.eta = witt_eta(n, w.d);
    w.eta_inv = QMatrix(static_cast<size_t>(dim), QVec(static_cast<size_t>(dim), Rational(0)));
    w.eta_inv[0][static_cast<size_t>(dim - 1)] = 1;
    w.eta_inv[static_cast<size_t>(dim - 1)][0] = 1;
    for (int i = 1; i <= n; ++i)
        w.eta_inv[static_cast<size_t>(i)][static_cast<size_t>(i)] =
            Rational(1) / w.d[static_cast<size_t>(i - 1)];
    return w;
}

HolonomyReport infinitesimal_holonomy(const WalkerMetric& m, const JetPoint& pt,
                                      int order) {
    m.validate();
    Geometry geo(m);
    int dim = m.dim(), n = m.n;
    WittData wd = build_witt_frame(geo, pt);

    QSpan span(static_cast<size_t>(dim * dim));
    HolonomyReport rep;
    rep.n = n;
    rep.e_norms = wd.d;
    rep.order_used = order;

    auto close_under_bracket = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<QMatrix> mats;
            mats.reserve(span.rows().size());
            for (const auto& r : span.rows()) mats.push_back(matrixize(r, dim));
            for (size_t i = 0; i < mats.size(); ++i)
                for (size_t j = i + 1; j < mats.size(); ++j)
                    if (span.add(vectorize(bracket(mats[i], mats[j])))) changed = true;
        }
    };

    TensorField cur = geo.riemann(); // (0,4); each step prepends one slot
    for (int k = 0; k <= order; ++k) {
        if (k > 0) cur = geo.covariant_derivative(cur);
        int rank = 4 + k;
        std::vector<Rational> vals = eval_tensor(cur, pt);
        std::vector<Rational> fvals = to_witt_frame(std::move(vals), rank, dim, wd.wv);
        // Slots: (m_k .. m_1, rho, sigma, mu, nu); the endomorphism acts in
        // (rho, sigma) with rho raised by eta^{-1}, the remaining slots are
        // the derivative directions and the curvature arguments.
        size_t ncombo = 1;
        for (int r = 0; r < k; ++r) ncombo *= static_cast<size_t>(dim);
        for (size_t combo = 0; combo < ncombo; ++combo) {
            size_t base = combo * static_cast<size_t>(dim) * dim * dim * dim;
            for (int c = 0; c < dim; ++c)
                for (int e = c + 1; e < dim; ++e) {
                    QMatrix M(static_cast<size_t>(dim), QVec(static_cast<size_t>(dim), Rational(0)));
                    bool nonzero = false;
                    for (int a = 0; a < dim; ++a)
                        for (int b = 0; b < dim; ++b) {
                            Rational s(0);
                            for (int ap = 0; ap < dim; ++ap) {
                                const Rational& ei = wd.eta_inv[static_cast<size_t>(a)][static_cast<size_t>(ap)];
                                if (ei == 0) continue;
                                size_t off = base +
                                    ((static_cast<size_t>(ap) * dim + static_cast<size_t>(b)) * dim +
                                     static_cast<size_t>(c)) * dim + static_cast<size_t>(e);
                                s += ei * fvals[off];
                            }
                            if (s != 0) nonzero = true;
                            M[static_cast<size_t>(a)][static_cast<size_t>(b)] = s;
                        }
                    if (!nonzero) continue;
                    if (!is_eta_skew(M, wd.eta))
                        throw Error("internal: curvature endomorphism not eta-skew");
                    span.add(vectorize(M));
                }
        }
        close_under_bracket();
        rep.dims_by_order.push_back(span.dim());
    }

    size_t no = rep.dims_by_order.size();
    rep.stabilized = no >= 2 && rep.dims_by_order[no - 1] == rep.dims_by_order[no - 2];
    rep.dim = span.dim();
    for (const auto& r : span.rows()) rep.basis.push_back(matrixize(r, dim));
    classify_type(rep);
    return rep;
}

HolonomyReport infinitesimal_holonomy_stabilized(const WalkerMetric& m,
                                                 const JetPoint& pt,
                                                 int start_order, int cap) {
    HolonomyReport rep = infinitesimal_holonomy(m, pt, std::max(start_order, 1));
    int order = std::max(start_order, 1);
    while (!rep.stabilized && order < cap) {
        ++order;
        rep = infinitesimal_holonomy(m, pt, order);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {
// Decomposition of an element of sim(n) in the Witt basis:
//   M = a (p^q-part) + A (so(n) block) + p^w, with M[0][0] = -a.
struct SimParts {
    Rational a;
    QMatrix A; // n x n
    QVec w;    // length n
};
} // namespace

static SimParts sim_parts(const QMatrix& m, int n) {
    SimParts s;
    s.a = m[static_cast<size_t>(n + 1)][static_cast<size_t>(n + 1)];
    s.A = QMatrix(static_cast<size_t>(n), QVec(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(i + 1)][static_cast<size_t>(j + 1)];
    s.w = QVec(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        s.w[static_cast<size_t>(i)] = m[static_cast<size_t>(i + 1)][static_cast<size_t>(n + 1)];
    return s;
}

bool holonomy_in_sim(const HolonomyReport& rep) {
    int dim = rep.n + 2;
    for (const auto& m : rep.basis)
        for (int r = 1; r < dim; ++r)
            if (m[static_cast<size_t>(r)][0] != 0) return false;
    return true;
}

bool holonomy_in_pE(const HolonomyReport& rep) {
    if (!holonomy_in_sim(rep)) return false;
    for (const auto& m : rep.basis) {
        SimParts s = sim_parts(m, rep.n);
        if (s.a != 0) return false;
        for (const auto& row : s.A)
            for (const auto& e : row)
                if (e != 0) return false;
    }
    return true;
}

// Coordinate layout for structural elimination: (vec A | a | w).
static QVec structure_vector(const SimParts& s, int n) {
    QVec v;
    v.reserve(static_cast<size_t>(n * n + 1 + n));
    for (const auto& row : s.A)
        for (const auto& e : row) v.push_back(e);
    v.push_back(s.a);
    for (const auto& e : s.w) v.push_back(e);
    return v;
}

std::string classify_type(HolonomyReport& rep) {
    int n = rep.n;
    int dim = n + 2;
    QSpan span(static_cast<size_t>(dim * dim));
    for (const auto& b : rep.basis) span.add(vectorize(b));
    rep.dim = span.dim();
    for (size_t i = 0; i < rep.basis.size(); ++i)
        for (size_t j = i + 1; j < rep.basis.size(); ++j)
            if (!span.contains(vectorize(bracket(rep.basis[i], rep.basis[j]))))
                throw NotClosedUnderBracket("basis is not closed under the Lie bracket");

    rep.h_part.clear();
    rep.phi.clear();
    rep.psi.clear();
    rep.E2.clear();
    rep.has_pq = false;
    rep.pE_dim = 0;

    if (rep.dim == 0) {
        rep.type = "trivial";
        rep.summary = "0";
        return rep.type;
    }
    if (rep.dim == (n + 2) * (n + 1) / 2) {
        rep.type = "irreducible-so(1,n+1)";
        rep.summary = "so(1," + std::to_string(n + 1) + ")";
        return rep.type;
    }
    if (!holonomy_in_sim(rep)) {
        rep.type = "no-invariant-line";
        rep.summary = "does not preserve the isotropic line Rp";
        return rep.type;
    }

    // Structural RREF over (vec A | a | w): rows with pivot in the A block are
    // the h-part representatives, a pivot in the a column is a decoupled p^q,
    // pivots in the w block are pure translations p^E_1.
    QSpan sspan(static_cast<size_t>(n * n + 1 + n));
    for (const auto& b : span.rows())
        sspan.add(structure_vector(sim_parts(matrixize(b, dim), n), n));
    size_t a_col = static_cast<size_t>(n * n);

    std::vector<SimParts> h_reps;
    bool pure_pq = false;
    QSpan E1(static_cast<size_t>(n)); // translation directions
    for (const auto& row : sspan.rows()) {
        int p = pivot_of(row);
        SimParts s;
        s.a = row[a_col];
        s.A = QMatrix(static_cast<size_t>(n), QVec(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s.A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    row[static_cast<size_t>(i * n + j)];
        s.w = QVec(row.begin() + static_cast<long>(a_col) + 1, row.end());
        if (s.a != 0) rep.has_pq = true;
        if (p >= 0 && static_cast<size_t>(p) < a_col) {
            h_reps.push_back(s);
        } else if (p >= 0 && static_cast<size_t>(p) == a_col) {
            pure_pq = true; // A = 0 by RREF column order
        } else if (p >= 0) {
            E1.add(s.w); // pure translation: a = 0, A = 0
        }
    }
    rep.pE_dim = E1.dim();
    for (const auto& s : h_reps) rep.h_part.push_back(s.A);

    // E_2: the common kernel of the so(n) parts, orthogonal to E_1 w.r.t.
    // diag(e_norms).
    {
        // kernel of the stacked A matrices
        QSpan rowspace(static_cast<size_t>(n));
        for (const auto& s : h_reps)
            for (const auto& r : s.A) rowspace.add(r);
        for (const auto& w : E1.rows()) {
            QVec scaled(w);
            for (int i = 0; i < n; ++i)
                scaled[static_cast<size_t>(i)] *= rep.e_norms.empty()
                                                      ? Rational(1)
                                                      : rep.e_norms[static_cast<size_t>(i)];
            rowspace.add(scaled); // orthogonality constraints against E_1
        }
        // nullspace via RREF rows
        std::vector<bool> is_pivot(static_cast<size_t>(n), false);
        for (const auto& r : rowspace.rows()) {
            int p = pivot_of(r);
            if (p >= 0) is_pivot[static_cast<size_t>(p)] = true;
        }
        for (int free_col = 0; free_col < n; ++free_col) {
            if (is_pivot[static_cast<size_t>(free_col)]) continue;
            QVec k(static_cast<size_t>(n), Rational(0));
            k[static_cast<size_t>(free_col)] = 1;
            for (const auto& r : rowspace.rows()) {
                int p = pivot_of(r);
                if (p >= 0) k[static_cast<size_t>(p)] = -r[static_cast<size_t>(free_col)];
            }
            rep.E2.push_back(std::move(k));
        }
    }

    // Residual w of each h representative modulo E_1.
    auto w_residual = [&](const QVec& w) {
        QVec r = w;
        for (const auto& t : E1.rows()) {
            int p = pivot_of(t);
            if (p < 0 || r[static_cast<size_t>(p)] == 0) continue;
            Rational f = r[static_cast<size_t>(p)];
            for (int i = 0; i < n; ++i)
                r[static_cast<size_t>(i)] -= f * t[static_cast<size_t>(i)];
        }
        return r;
    };

    bool any_residual = false;
    for (const auto& s : h_reps) {
        QVec r = w_residual(s.w);
        if (pivot_of(r) >= 0) any_residual = true;
        rep.psi.emplace_back(s.A, r);
        rep.phi.emplace_back(s.A, s.a);
    }

    std::string candidate;
    if (pure_pq) {
        candidate = "I";
    } else if (rep.has_pq) {
        candidate = "III";
    } else if (any_residual) {
        candidate = "IV";
    } else {
        candidate = "II";
    }
    if (candidate != "III") rep.phi.clear();
    if (candidate != "IV") {
        rep.psi.clear();
        rep.E2.clear();
    }

    // Weak irreducibility: the smallest A-invariant subspace W0 of E that
    // contains every w-part must be all of E; otherwise its orthogonal
    // complement in E is a proper nondegenerate invariant subspace.
    {
        QSpan W0(static_cast<size_t>(n));
        std::vector<SimParts> all;
        for (const auto& b : span.rows()) all.push_back(sim_parts(matrixize(b, dim), n));
        for (const auto& s : all) W0.add(s.w);
        bool grew = true;
        while (grew) {
            grew = false;
            auto snapshot = W0.rows();
            for (const auto& s : all)
                for (const auto& w : snapshot) {
                    QVec img(static_cast<size_t>(n), Rational(0));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            img[static_cast<size_t>(i)] +=
                                s.A[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                w[static_cast<size_t>(j)];
                    if (W0.add(img)) grew = true;
                }
        }
        if (W0.dim() != n) {
            rep.type = "decomposable";
            rep.summary = "proper nondegenerate invariant subspace of E";
            return rep.type;
        }
    }

    rep.type = candidate;
    if (candidate == "II" && rep.h_part.empty())
        rep.summary = "p^E";
    else if (candidate == "I" && rep.h_part.empty())
        rep.summary = "Rp^q + p^E";
    else
        rep.summary = "type " + candidate + ", dim " + std::to_string(rep.dim) +
                      ", so(n)-part dim " + std::to_string(rep.h_part.size());
    return rep.type;
}

bool check_phi_psi_conditions(const HolonomyReport& rep) {
    int n = rep.n;
    int dim = n + 2;
    QSpan span(static_cast<size_t>(dim * dim));
    for (const auto& b : rep.basis) span.add(vectorize(b));
    for (size_t i = 0; i < rep.basis.size(); ++i)
        for (size_t j = i + 1; j < rep.basis.size(); ++j)
            if (!span.contains(vectorize(bracket(rep.basis[i], rep.basis[j]))))
                return false;

    if (rep.type == "III") {
        // phi must vanish on brackets of the h-part representatives: the
        // algebra element whose A-part equals [A_i, A_j] must have a = 0.
        for (size_t i = 0; i < rep.phi.size(); ++i)
            for (size_t j = i + 1; j < rep.phi.size(); ++j) {
                QMatrix C = bracket(rep.phi[i].first, rep.phi[j].first);
                QVec target = vectorize(C);
                Rational a_val(0);
                for (size_t r = 0; r < rep.phi.size(); ++r) {
                    QVec av = vectorize(rep.phi[r].first);
                    int p = pivot_of(av);
                    if (p < 0) continue;
                    Rational f = target[static_cast<size_t>(p)] / av[static_cast<size_t>(p)];
                    if (f == 0) continue;
                    for (size_t k = 0; k < target.size(); ++k) target[k] -= f * av[k];
                    a_val += f * rep.phi[r].second;
                }
                if (pivot_of(target) >= 0) return false; // bracket escapes h
                if (a_val != 0) return false;
            }
        return true;
    }
    if (rep.type == "IV") {
        for (size_t i = 0; i < rep.psi.size(); ++i)
            for (size_t j = i + 1; j < rep.psi.size(); ++j) {
                QMatrix C = bracket(rep.psi[i].first, rep.psi[j].first);
                QVec target = vectorize(C);
                QVec w_val(static_cast<size_t>(n), Rational(0));
                for (size_t r = 0; r < rep.psi.size(); ++r) {
                    QVec av = vectorize(rep.psi[r].first);
                    int p = pivot_of(av);
                    if (p < 0) continue;
                    Rational f = target[static_cast<size_t>(p)] / av[static_cast<size_t>(p)];
                    if (f == 0) continue;
                    for (size_t k = 0; k < target.size(); ++k) target[k] -= f * av[k];
                    for (int k = 0; k < n; ++k)
                        w_val[static_cast<size_t>(k)] += f * rep.psi[r].second[static_cast<size_t>(k)];
                }
                if (pivot_of(target) >= 0) return false;
                if (pivot_of(w_val) >= 0) return false;
            }
        // surjectivity of psi onto E_2
        QSpan img(static_cast<size_t>(n));
        for (const auto& [A, w] : rep.psi) img.add(w);
        QSpan e2(static_cast<size_t>(n));
        for (const auto& e : rep.E2) e2.add(e);
        if (img.dim() != e2.dim()) return false;
        for (const auto& e : rep.E2)
            if (!img.contains(e)) return false;
        return true;
    }
    return true;
}

} // namespace walker

#include <functional>

#include "walker/decomp.hpp"
#include "walker/errors.hpp"
#include "walker/ratio.hpp"
#include "walker/walker.hpp"

namespace walker {

// W = R + R_L with R_L assembled from the curvature blocks and the Ricci
// data of the family h. Every term is a wedge of two vectors, so the whole
// frame tensor is built from lowered pairing rows eta(V, zeta_b); only the
// Ricci-type contraction of P and tr T need h^{-1}.
TensorField weyl_walker(Geometry& geo) {
    const WalkerMetric& m = geo.metric();
    const int n = m.n;
    if (n + 2 < 4) throw DimensionTooSmall("Weyl tensor needs n + 2 >= 4");
    const int q = n + 1;
    const int dim = n + 2;

    CurvatureBlocks b = decompose_curvature(geo);
    HFamilyGeometry hg = h_family_geometry(m);

    const Ratio lam(b.lambda.flat(0), b.lambda.den());
    const Ratio s0(hg.scalar.flat(0), hg.scalar.den());
    const Ratio s = lam * Rational(2) + s0;

    // Ricci-type contraction of P and the trace of T (raised with h^{-1}).
    std::vector<Ratio> ricP(n);
    Ratio trT;
    for (int mth = 0; mth < n; ++mth) {
        Ratio acc;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                acc = acc + Ratio(hg.hinv.at({k, l}) * b.P.at({k, l, mth}),
                                  hg.hinv.den() * b.P.den());
        ricP[mth] = acc;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            trT = trT + Ratio(hg.hinv.at({i, j}) * b.T.at({i, j}),
                              hg.hinv.den() * b.T.den());

    // z = v - Ric~(P), as a lowered pairing row on E.
    std::vector<Ratio> zl(n);
    for (int k = 0; k < n; ++k) zl[k] = Ratio(b.v.at({k}), b.v.den()) - ricP[k];

    const Rational inv_n = Rational(1, n);
    const Ratio c1 = (lam * Rational(n - 1) - s0) * Rational(1, n + 1);
    const Ratio c2 = (lam * Rational(2 * n) - s0) * Rational(1, n + 1);
    const Ratio c3 = s * Rational(1, 2 * (n + 1));

    // Pairing rows eta(V, zeta_b), b in {p=0, X_1..X_n=1..n, q=n+1}.
    auto row_p = [&](int bb) { return Ratio(Expr(bb == q ? 1 : 0)); };
    auto row_q = [&](int bb) { return Ratio(Expr(bb == 0 ? 1 : 0)); };
    auto row_X = [&](int i, int bb) {
        if (bb >= 1 && bb <= n) return Ratio(m.h[i][bb - 1]);
        return Ratio();
    };
    auto row_z = [&](int bb) {
        if (bb >= 1 && bb <= n) return zl[bb - 1];
        return Ratio();
    };
    // (Ric(h) + c id) X_i
    auto row_ric = [&](int i, const Ratio& c, int bb) {
        if (bb >= 1 && bb <= n)
            return Ratio(hg.ricci.at({i, bb - 1}), hg.ricci.den()) +
                   c * Ratio(m.h[i][bb - 1]);
        return Ratio();
    };
    // (X_i ^ X_j) z
    auto row_wedge_z = [&](int i, int j, int bb) {
        if (bb >= 1 && bb <= n)
            return zl[i] * Ratio(m.h[j][bb - 1]) - zl[j] * Ratio(m.h[i][bb - 1]);
        return Ratio();
    };

    using Row = std::function<Ratio(int)>;
    auto wedge = [&](const Row& V, const Row& W, int a, int bb) {
        return V(bb) * W(a) - W(bb) * V(a);
    };

    std::vector<Ratio> comps(static_cast<size_t>(dim) * dim * dim * dim);
    auto idx4 = [&](int a, int bb, int c, int d) {
        return ((static_cast<size_t>(a) * dim + bb) * dim + c) * dim + d;
    };
    auto set_pair = [&](int c, int d, int a, int bb, const Ratio& val) {
        comps[idx4(a, bb, c, d)] = val;
        comps[idx4(a, bb, d, c)] = -val;
    };

    for (int a = 0; a < dim; ++a)
        for (int bb = 0; bb < dim; ++bb) {
            // (13): R_L(p, X_i) = (1/n) p ^ (Ric(h) + c1 id) X_i
            for (int i = 0; i < n; ++i) {
                Row rr = [&](int t) { return row_ric(i, c1, t); };
                set_pair(0, i + 1, a, bb, wedge(row_p, rr, a, bb) * inv_n);
            }
            // (14): R_L(p, q) = (1/n)(c2 p^q + p^z)
            set_pair(0, q, a, bb,
                     (wedge(row_p, row_q, a, bb) * c2 + wedge(row_p, row_z, a, bb)) *
                         inv_n);
            // (15): R_L(X_i, X_j) = (1/n)(p ^ ((X_i^X_j)z)
            //        + (Ric - c3)X_i ^ X_j + X_i ^ (Ric - c3)X_j)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Row wz = [&](int t) { return row_wedge_z(i, j, t); };
                    Row ri = [&](int t) { return row_ric(i, -c3, t); };
                    Row rj = [&](int t) { return row_ric(j, -c3, t); };
                    Row Xi = [&](int t) { return row_X(i, t); };
                    Row Xj = [&](int t) { return row_X(j, t); };
                    Ratio val = (wedge(row_p, wz, a, bb) + wedge(ri, Xj, a, bb) +
                                 wedge(Xi, rj, a, bb)) *
                                inv_n;
                    set_pair(i + 1, j + 1, a, bb, val);
                }
            // (16): R_L(X_i, q) = (1/n)(trT p^X_i + eta(X_i,z) p^q
            //        + X_i ^ z + (Ric + c1 id)X_i ^ q)
            for (int i = 0; i < n; ++i) {
                Row Xi = [&](int t) { return row_X(i, t); };
                Row ri = [&](int t) { return row_ric(i, c1, t); };
                // zl is already the lowered pairing, so eta(X_i, z) = zl[i].
                const Ratio& eta_Xi_z = zl[i];
                Ratio val = (wedge(row_p, Xi, a, bb) * trT +
                             wedge(row_p, row_q, a, bb) * eta_Xi_z +
                             wedge(Xi, row_z, a, bb) + wedge(ri, row_q, a, bb)) *
                            inv_n;
                set_pair(i + 1, q, a, bb, val);
            }
        }

    TensorField rl_frame = tensor_from_ratios(dim, lower_slots(4), comps);
    TensorField rl = coordinate_components(rl_frame, geo.frame());
    return geo.riemann() + rl;
}

} // namespace walker

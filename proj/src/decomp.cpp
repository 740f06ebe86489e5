#include "walker/decomp.hpp"

#include "walker/errors.hpp"
#include "walker/ratio.hpp"

namespace walker {

TensorField tensor_from_ratios(int dim, const std::vector<Slot>& valence,
                               const std::vector<Ratio>& comps) {
    TensorField t(dim, valence);
    Expr common(1);
    for (const auto& r : comps) {
        if (r.den.is_constant()) continue;
        if (!Expr::divide_exact(common, r.den)) common = common * r.den;
    }
    for (size_t i = 0; i < comps.size(); ++i) {
        auto scale = Expr::divide_exact(common, comps[i].den);
        // By construction common is divisible by every non-constant den;
        // constant dens were folded by Ratio::reduce.
        t.flat(i) = comps[i].num * *scale;
    }
    t.set_den(common);
    t.simplify();
    return t;
}

CurvatureBlocks decompose_curvature(Geometry& geo) {
    const int n = geo.metric().n;
    const int q = n + 1; // frame index of q; p is 0, X_i is i
    TensorField rf = frame_components(geo.riemann(), geo.frame());

    // R(p, X_i) = 0 is guaranteed by the Walker form. (R(p, q) is not zero in
    // general: it carries the lambda and v blocks.)
    for (int b = 0; b <= q; ++b)
        for (int a = 0; a <= q; ++a)
            for (int d = 1; d <= n; ++d)
                if (!rf.at({a, b, 0, d}).is_zero())
                    throw NotWalkerCompatible("R(p, X_i) != 0 in the adapted frame");

    CurvatureBlocks blocks;
    blocks.n = n;
    blocks.lambda = TensorField(n, {});
    blocks.v = TensorField(n, lower_slots(1));
    blocks.P = TensorField(n, lower_slots(3));
    blocks.R0 = TensorField(n, lower_slots(4));
    blocks.T = TensorField(n, lower_slots(2));

    blocks.lambda.flat(0) = -rf.at({0, q, 0, q});
    for (int k = 0; k < n; ++k) blocks.v.at({k}) = -rf.at({k + 1, q, 0, q});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            blocks.T.at({i, j}) = -rf.at({j + 1, q, i + 1, q});
            for (int k = 0; k < n; ++k)
                blocks.P.at({i, j, k}) = rf.at({k + 1, j + 1, i + 1, q});
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    blocks.R0.at({a, b, c, d}) = rf.at({a + 1, b + 1, c + 1, d + 1});

    // Keep one shared denominator across the five blocks: strip it only when
    // every component of every block divides exactly.
    const Expr& den = rf.den();
    std::vector<TensorField*> all = {&blocks.lambda, &blocks.v, &blocks.P,
                                     &blocks.R0, &blocks.T};
    bool strip = true;
    if (!den.is_constant()) {
        for (auto* t : all)
            for (size_t i = 0; i < t->flat_size() && strip; ++i)
                if (!Expr::divide_exact(t->flat(i), den)) strip = false;
    }
    for (auto* t : all) {
        t->set_den(den);
        if (strip) t->simplify();
    }

    // Full validation: the blocks must reproduce the frame curvature exactly;
    // anything else means the curvature lacks the Walker block structure.
    try {
        if (!reconstruct_curvature(blocks, geo.metric()).equals(rf))
            throw NotWalkerCompatible("curvature does not match its block reconstruction");
    } catch (const InvalidBlocks& e) {
        throw NotWalkerCompatible(std::string("curvature blocks invalid: ") + e.what());
    }
    return blocks;
}

CurvatureBlocks decompose_curvature(const WalkerMetric& m, const AdaptedFrame& frame) {
    (void)frame; // the frame is rebuilt internally; it is determined by m
    Geometry geo(m);
    return decompose_curvature(geo);
}

bool validate_P(const TensorField& P) {
    const int n = P.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!(P.at({i, j, k}) + P.at({j, k, i}) + P.at({k, i, j})).is_zero())
                    return false;
    return true;
}

namespace {

bool P_is_skew(const TensorField& P) {
    const int n = P.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (P.at({i, j, k}) != -P.at({i, k, j})) return false;
    return true;
}

} // namespace

TensorField reconstruct_curvature(const CurvatureBlocks& b, const WalkerMetric& m) {
    const int n = b.n;
    const int q = n + 1;
    const int dim = n + 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b.T.at({i, j}) != b.T.at({j, i}))
                throw InvalidBlocks("T is not symmetric");
    if (!P_is_skew(b.P) || !validate_P(b.P))
        throw InvalidBlocks("P fails skewness or the cyclic identity");

    // Everything is assembled from lowered pairings eta(V, frame_b); no
    // index raising is needed. Wedge rule:
    //   eta((V ^ W) zeta_b, zeta_a) = eta(V,zeta_b) eta(W,zeta_a)
    //                               - eta(W,zeta_b) eta(V,zeta_a).
    auto vl = [&](int frame_idx) -> Expr {
        if (frame_idx >= 1 && frame_idx <= n) return b.v.at({frame_idx - 1});
        return Expr();
    };
    auto Tl = [&](int i, int frame_idx) -> Expr {
        if (frame_idx >= 1 && frame_idx <= n) return b.T.at({i, frame_idx - 1});
        return Expr();
    };

    TensorField r(dim, lower_slots(4));
    const Expr& lam = b.lambda.flat(0);
    for (int a = 0; a <= q; ++a)
        for (int bb = 0; bb <= q; ++bb) {
            auto Lpq = [&]() -> Expr {
                Expr e;
                if (bb == q && a == 0) e = Expr(1);
                if (bb == 0 && a == q) e = Expr(-1);
                return e;
            };
            auto Lp = [&](const Expr& wb, const Expr& wa) -> Expr {
                // eta((p ^ W) zeta_b, zeta_a) with pair row of W given at b, a
                Expr e;
                if (bb == q) e = e + wa;
                if (a == q) e = e - wb;
                return e;
            };
            // R(p, q) = -lambda p^q - p^v
            r.at({a, bb, 0, q}) = -lam * Lpq() - Lp(vl(bb), vl(a));
            r.at({a, bb, q, 0}) = -r.at({a, bb, 0, q});
            for (int i = 0; i < n; ++i) {
                // R(X_i, q) = -eta(v,X_i) p^q + P(X_i) - p^T(X_i)
                Expr pterm;
                if (a >= 1 && a <= n && bb >= 1 && bb <= n)
                    pterm = b.P.at({i, bb - 1, a - 1});
                Expr val = -vl(i + 1) * Lpq() + pterm - Lp(Tl(i, bb), Tl(i, a));
                r.at({a, bb, i + 1, q}) = val;
                r.at({a, bb, q, i + 1}) = -val;
                // R(X_i, X_j) = R0(X_i, X_j) - p ^ (P(X_j)X_i - P(X_i)X_j)
                for (int j = 0; j < n; ++j) {
                    Expr r0;
                    if (a >= 1 && a <= n && bb >= 1 && bb <= n)
                        r0 = b.R0.at({a - 1, bb - 1, i, j});
                    auto w = [&](int fidx) -> Expr {
                        if (fidx >= 1 && fidx <= n)
                            return b.P.at({j, i, fidx - 1}) - b.P.at({i, j, fidx - 1});
                        return Expr();
                    };
                    r.at({a, bb, i + 1, j + 1}) = r0 - Lp(w(bb), w(a));
                }
            }
            // R(p, X_i) = 0: already zero.
        }
    (void)m;
    if (!(b.lambda.den() == b.T.den() && b.v.den() == b.T.den() &&
          b.P.den() == b.T.den() && b.R0.den() == b.T.den()))
        throw InvalidBlocks("blocks carry inconsistent denominators");
    r.set_den(b.T.den());
    r.simplify();
    return r;
}

} // namespace walker

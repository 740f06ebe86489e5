#include "walker/conditions.hpp"

#include "walker/decomp.hpp"
#include "walker/errors.hpp"
#include "walker/holonomy.hpp"

namespace walker {

std::string RecurrenceReport::verdict_str() const {
    switch (verdict) {
        case Verdict::Parallel: return "parallel";
        case Verdict::Recurrent: return "recurrent";
        case Verdict::NotRecurrent: return "not-recurrent";
        case Verdict::ZeroTensor: return "zero-tensor";
    }
    return "?";
}

RecurrenceReport recurrence_factor(const TensorField& t, Geometry& geo) {
    RecurrenceReport rep;
    const int dim = t.dim();
    if (t.is_zero()) {
        rep.verdict = RecurrenceReport::Verdict::ZeroTensor;
        return rep;
    }
    TensorField nt = geo.covariant_derivative(t);
    rep.theta.assign(static_cast<size_t>(dim), Ratio());
    if (nt.is_zero()) {
        rep.verdict = RecurrenceReport::Verdict::Parallel;
        rep.theta_is_polynomial = true;
        return rep;
    }
    size_t pivot = 0;
    while (t.flat(pivot).is_zero()) ++pivot;
    const Expr& tp = t.flat(pivot);
    const size_t block = t.flat_size();
    for (int mu = 0; mu < dim; ++mu) {
        const Expr& np = nt.flat(static_cast<size_t>(mu) * block + pivot);
        for (size_t i = 0; i < block; ++i) {
            const Expr& ni = nt.flat(static_cast<size_t>(mu) * block + i);
            if (ni * tp != np * t.flat(i)) {
                rep.verdict = RecurrenceReport::Verdict::NotRecurrent;
                rep.witness = RecurrenceReport::Witness{mu, i, pivot};
                rep.theta.clear();
                return rep;
            }
        }
        // theta_mu = ((nabla t)_{mu,pivot} / Dn) / (t_pivot / Dt)
        rep.theta[static_cast<size_t>(mu)] = Ratio(np * t.den(), tp * nt.den());
    }
    bool all_zero = true;
    rep.theta_is_polynomial = true;
    for (const auto& th : rep.theta) {
        if (!th.is_zero()) all_zero = false;
        if (!th.den.is_constant()) rep.theta_is_polynomial = false;
    }
    rep.verdict = all_zero ? RecurrenceReport::Verdict::Parallel
                           : RecurrenceReport::Verdict::Recurrent;
    return rep;
}

RecurrenceReport recurrence_factor(const TensorField& t, const WalkerMetric& m) {
    Geometry geo(m);
    return recurrence_factor(t, geo);
}

bool verify_recurrence(const TensorField& t, Geometry& geo, const RecurrenceReport& rep) {
    using V = RecurrenceReport::Verdict;
    TensorField nt = geo.covariant_derivative(t);
    if (rep.verdict == V::ZeroTensor) return t.is_zero();
    if (rep.verdict == V::NotRecurrent) return true;
    const size_t block = t.flat_size();
    for (int mu = 0; mu < t.dim(); ++mu) {
        const Ratio& th = rep.theta[static_cast<size_t>(mu)];
        for (size_t i = 0; i < block; ++i) {
            const Expr& ni = nt.flat(static_cast<size_t>(mu) * block + i);
            // ni/Dn = (num/den) * t_i/Dt
            if (ni * th.den * t.den() != th.num * t.flat(i) * nt.den()) return false;
        }
    }
    return true;
}

bool theta_is_closed(const RecurrenceReport& rep, const geom::Chart& chart) {
    const int dim = static_cast<int>(rep.theta.size());
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = mu + 1; nu < dim; ++nu) {
            const Ratio& a = rep.theta[static_cast<size_t>(nu)];
            const Ratio& b = rep.theta[static_cast<size_t>(mu)];
            const int32_t vmu = chart.vars[mu];
            const int32_t vnu = chart.vars[nu];
            // d_mu (a.num/a.den) = d_nu (b.num/b.den), cross-multiplied
            Expr lhs = (a.num.diff(vmu) * a.den - a.num * a.den.diff(vmu)) *
                       b.den * b.den;
            Expr rhs = (b.num.diff(vnu) * b.den - b.num * b.den.diff(vnu)) *
                       a.den * a.den;
            if (lhs != rhs) return false;
        }
    return true;
}

TwoSymmetricReport is_two_symmetric(const WalkerMetric& m) {
    Geometry geo(m);
    TwoSymmetricReport rep;
    rep.nabla_r_zero = geo.nabla_riemann().is_zero();
    rep.nabla2_r_zero = geo.nabla2_riemann().is_zero();
    rep.two_symmetric = rep.nabla2_r_zero && !rep.nabla_r_zero;
    return rep;
}

RecurrenceReport weyl_recurrence(const WalkerMetric& m) {
    Geometry geo(m);
    return recurrence_factor(geo.weyl_general(), geo);
}

TensorField tau_squared(const WalkerMetric& m) {
    const int d = m.dim();
    TensorField t(d, lower_slots(2));
    t.at({d - 1, d - 1}) = Expr(1); // tau = du
    return t;
}

BilinearFormsResult recurrent_bilinear_forms(const WalkerMetric& m) {
    Geometry geo(m);
    BilinearFormsResult out;
    TensorField g = geo.g();
    TensorField t2 = tau_squared(m);
    out.candidates.push_back({"g", recurrence_factor(g, geo)});
    out.candidates.push_back({"tau2", recurrence_factor(t2, geo)});
    out.candidates.push_back({"g+tau2", recurrence_factor(g + t2, geo)});
    out.candidates.push_back({"g-tau2", recurrence_factor(g - t2, geo)});

    bool flat_v = !m.H.diff(var::v).diff(var::v).is_zero() ? false : true;
    for (int i = 1; i <= m.n && flat_v; ++i)
        if (!m.H.diff(var::v).diff(var::x(i)).is_zero()) flat_v = false;
    out.family_parallel = flat_v;
    return out;
}

bool is_pp_wave(const WalkerMetric& m) {
    if (m.h_is_identity() && m.A_is_zero() && !m.H.depends_on(var::v)) return true;
    Geometry geo(m);
    CurvatureBlocks b = decompose_curvature(geo);
    if (!b.lambda.is_zero() || !b.v.is_zero() || !b.P.is_zero() || !b.R0.is_zero())
        return false;
    JetPoint pt = generic_point(m, 4);
    try {
        HolonomyReport rep = infinitesimal_holonomy(m, pt, 2);
        return holonomy_in_pE(rep);
    } catch (const NonPositiveDefiniteH&) {
        return false; // cannot certify at the default base point
    }
}

} // namespace walker

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walker/ratio.hpp"
#include "walker/walker.hpp"

namespace walker {

// Outcome of testing nabla T = theta (x) T.
struct RecurrenceReport {
    enum class Verdict { Parallel, Recurrent, NotRecurrent, ZeroTensor };
    Verdict verdict = Verdict::ZeroTensor;

    // theta_mu as exact quotients (den = 1 when the component is polynomial).
    // Present for Parallel (all zero) and Recurrent.
    std::vector<Ratio> theta;
    bool theta_is_polynomial = false;

    // On NotRecurrent: (direction mu, flat multi-index pair) where the
    // cross-multiplication consistency check failed.
    struct Witness {
        int direction = 0;
        size_t index_a = 0;
        size_t index_b = 0;
    };
    std::optional<Witness> witness;

    bool is(Verdict v) const { return verdict == v; }
    std::string verdict_str() const;
};

// Decides nabla t = theta (x) t exactly over the whole chart. The pivot is
// the lexicographically first nonzero component of t; all other components
// are checked by cross-multiplication, so no rational-function arithmetic is
// needed. The certified identity is (nabla t)_{mu,I} * t_pivot =
// (nabla t)_{mu,pivot} * t_I for all mu, I.
RecurrenceReport recurrence_factor(const TensorField& t, Geometry& geo);
RecurrenceReport recurrence_factor(const TensorField& t, const WalkerMetric& m);

// Re-verification used by tests: theta from the report satisfies
// (nabla t) * den(theta) = num(theta) (x) t componentwise.
bool verify_recurrence(const TensorField& t, Geometry& geo, const RecurrenceReport& rep);

// d theta = 0, checked by cross-multiplied antisymmetrized derivatives.
bool theta_is_closed(const RecurrenceReport& rep, const geom::Chart& chart);

struct TwoSymmetricReport {
    bool two_symmetric = false;
    bool nabla_r_zero = false;
    bool nabla2_r_zero = false;
};
TwoSymmetricReport is_two_symmetric(const WalkerMetric& m);

// recurrence_factor applied to the Weyl tensor; throws DimensionTooSmall
// when n + 2 < 4.
RecurrenceReport weyl_recurrence(const WalkerMetric& m);

struct BilinearFormReport {
    std::string name;    // "g", "tau2", "g+tau2", "g-tau2"
    RecurrenceReport report;
};
struct BilinearFormsResult {
    std::vector<BilinearFormReport> candidates;
    // true when d_v^2 H = d_i d_v H = 0: the two-parameter family
    // alpha g + beta tau (x) tau is then recurrent for every alpha, beta.
    bool family_parallel = false;
};
// Tests the candidate symmetric bilinear forms:
// g, tau (x) tau (tau = du = g(d_v, .)), and two generic combinations.
BilinearFormsResult recurrent_bilinear_forms(const WalkerMetric& m);

// tau (x) tau as a (0,2) tensor.
TensorField tau_squared(const WalkerMetric& m);

// Syntactic check (h = delta, A = 0, d_v H = 0) or the curvature-based
// sufficient check (all blocks but T vanish and the infinitesimal holonomy
// lies in p ^ E).
bool is_pp_wave(const WalkerMetric& m);

} // namespace walker

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "walker/walker.hpp"

namespace walker {

using QVec = std::vector<Rational>;
using QMatrix = std::vector<QVec>;

// Matrix of Z -> eta(X,Z)Y - eta(Y,Z)X in the Witt basis (p, e_1..e_n, q)
// with eta(p,q) = 1 and eta(e_i, e_j) = d_i delta_ij; d defaults to all ones.
QMatrix wedge(const QVec& X, const QVec& Y);
QMatrix wedge(const QVec& X, const QVec& Y, const QVec& d);

// eta matrix of the Witt basis.
QMatrix witt_eta(int n, const QVec& d);

bool is_eta_skew(const QMatrix& m, const QMatrix& eta);

struct HolonomyReport {
    int n = 0;
    // eta(e_i, e_i): exact Gram-Schmidt cannot normalize square roots, so the
    // E-part of the Witt basis is orthogonal with these positive lengths
    // (all 1 for the pp-wave families, where h = delta).
    QVec e_norms;
    std::vector<QMatrix> basis; // RREF-reduced, closed under bracket
    int dim = 0;

    std::string type; // trivial | irreducible-so(1,n+1) | I | II | III | IV |
                      // decomposable | no-invariant-line
    std::string summary; // human-readable structure, e.g. "p^E" for type II
                         // with trivial so(n) part
    std::vector<QMatrix> h_part;   // so(n)-block basis (n x n)
    bool has_pq = false;           // a pure p^q direction is present
    int pE_dim = 0;                // dim of the intersection with p^E
    // Coupling data for types III / IV, keyed by h-part representatives.
    std::vector<std::pair<QMatrix, Rational>> phi;
    std::vector<std::pair<QMatrix, QVec>> psi;
    std::vector<QVec> E2;          // basis of E_2 for type IV

    int order_used = 0;
    bool stabilized = false;       // heuristic certificate: two consecutive
                                   // derivative orders gave equal spans
    std::vector<int> dims_by_order;
};

// Span of the curvature endomorphisms R, nabla R, ..., nabla^order R at pt,
// contracted with the adapted frame, expressed in the Witt basis and closed
// under the Lie bracket. Throws InsufficientJet / NonPositiveDefiniteH.
HolonomyReport infinitesimal_holonomy(const WalkerMetric& m, const JetPoint& pt,
                                      int order);
// Escalates from start_order until stabilization or cap.
HolonomyReport infinitesimal_holonomy_stabilized(const WalkerMetric& m,
                                                 const JetPoint& pt,
                                                 int start_order, int cap);

// Fills the structural fields of the report and returns the type label.
// Throws NotClosedUnderBracket if the basis is not bracket-closed.
std::string classify_type(HolonomyReport& rep);

// For types III / IV: phi (resp. psi) vanishes on brackets of the h-part;
// for IV also surjectivity of psi onto E_2.
bool check_phi_psi_conditions(const HolonomyReport& rep);

bool holonomy_in_pE(const HolonomyReport& rep);
// Every basis matrix maps p into R p.
bool holonomy_in_sim(const HolonomyReport& rep);

// Base point with all coordinates 0 and all formal jets filled with 1, deep
// enough for derivatives up to extra_jet beyond what the metric itself uses.
JetPoint generic_point(const WalkerMetric& m, int extra_jet);

// Exact RREF-based span of rational vectors with deterministic pivoting.
class QSpan {
public:
    explicit QSpan(size_t width) : width_(width) {}
    bool add(QVec v);            // returns true if the vector was new
    bool contains(QVec v) const;
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<QVec>& rows() const { return rows_; }

private:
    void reduce(QVec& v) const;
    size_t width_;
    std::vector<QVec> rows_; // sorted by pivot column, pivots normalized to 1
};

QVec vectorize(const QMatrix& m);
QMatrix matrixize(const QVec& v, int dim);
QMatrix bracket(const QMatrix& a, const QMatrix& b);
QMatrix qmat_inverse(const QMatrix& m); // throws Error if singular

} // namespace walker

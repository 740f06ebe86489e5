#pragma once

#include <vector>

#include "walker/tensor.hpp"

namespace walker::geom {

// A coordinate chart is just the ordered list of variable codes; tensors over
// it are indexed in the same order.
struct Chart {
    std::vector<int32_t> vars;
    int dim() const { return static_cast<int>(vars.size()); }
};

Expr det(const std::vector<std::vector<Expr>>& m);
std::vector<std::vector<Expr>> adjugate(const std::vector<std::vector<Expr>>& m);

// Exact inverse of a (0,2) metric; the determinant is kept in den().
// Throws SingularMetric if det = 0 identically.
TensorField metric_inverse(const TensorField& g);

// Levi-Civita symbols, stored as a (1,2) array indexed [mu][nu][rho].
TensorField christoffel(const Chart& chart, const TensorField& g, const TensorField& ginv);

// R^rho_{sigma mu nu} = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma}
//                       + Gamma^rho_{mu lam} Gamma^lam_{nu sigma}
//                       - Gamma^rho_{nu lam} Gamma^lam_{mu sigma}
TensorField riemann_mixed(const Chart& chart, const TensorField& gamma);

// Lowers the leading upper slot with g.
TensorField lower_first(const TensorField& t, const TensorField& g);

// Levi-Civita covariant derivative; the new covariant slot comes first:
// (nabla t)_{mu, I}.
TensorField covariant_derivative(const Chart& chart, const TensorField& gamma,
                                 const TensorField& t);

// Ric_{sigma nu} = R^rho_{sigma rho nu}
TensorField ricci(const TensorField& riemann_mixed);

// Rank-0 tensor: s = g^{sigma nu} Ric_{sigma nu}
TensorField scalar_curvature(const TensorField& ric, const TensorField& ginv);

// Standard conformal decomposition in dimension >= 4 (dim 3 gives the
// identically-vanishing tensor of the same formula).
TensorField weyl(const TensorField& g, const TensorField& ginv,
                 const TensorField& riemann_low, const TensorField& ric,
                 const TensorField& scalar);

// Contract one upper slot of a with one lower slot of b (or any two slots;
// the caller is responsible for variance bookkeeping).
TensorField contract(const TensorField& a, int slot_a, const TensorField& b, int slot_b);

} // namespace walker::geom

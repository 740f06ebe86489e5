#pragma once

#include "walker/walker.hpp"

namespace walker {

// Adapted-frame curvature blocks (lambda, v, P, R0, T). All E-indices are
// lowered with h:
//   lambda                 scalar
//   v[k]    = eta(v, X_k)
//   P[i][j][k] = eta(P(X_i) X_j, X_k)
//   R0[a][b][c][d] = eta(R0(X_c, X_d) X_b, X_a)
//   T[i][j] = eta(T(X_i), X_j), symmetric
// All five share one denominator (the den() of each TensorField, kept equal).
struct CurvatureBlocks {
    int n = 0;
    TensorField lambda; // rank 0, dim n
    TensorField v;      // (0,1)
    TensorField P;      // rank 3
    TensorField R0;     // rank 4
    TensorField T;      // (0,2)
};

// Extract the blocks by contracting the curvature tensor with the adapted
// frame. Throws NotWalkerCompatible if R(p, X_i) != 0 or if the curvature does
// not equal its block reconstruction (both always hold for valid Walker
// metrics, so failure signals an internal bug).
CurvatureBlocks decompose_curvature(Geometry& geo);
CurvatureBlocks decompose_curvature(const WalkerMetric& m, const AdaptedFrame& frame);

// Rebuild the frame-basis (0,4) curvature tensor (indices 0 = p, 1..n = X_i,
// n+1 = q) from the blocks. Throws InvalidBlocks if T is asymmetric or P
// fails its cyclic identity or skewness.
TensorField reconstruct_curvature(const CurvatureBlocks& b, const WalkerMetric& m);

// Cyclic identity of the space P(h):
// eta(P(X)Y,Z) + eta(P(Y)Z,X) + eta(P(Z)X,Y) = 0 over all basis triples.
bool validate_P(const TensorField& P);

} // namespace walker

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "walker/geometry.hpp"

namespace walker {

// Frozen curvature sign convention, reported in every CLI output:
// R^rho_{sigma mu nu} = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma} + [GG],
// R_{rho sigma mu nu} = g_{rho alpha} R^alpha_{sigma mu nu}.
// On a pp-wave this gives R_{u i u j} = -1/2 d_i d_j H and the curvature block
// T_{ij} = +1/2 d_i d_j H.
extern const char* const kSignConvention;

// The data (n, h_ij, A_i, H) of g = 2 dv du + h + 2 A du + H (du)^2.
// Coordinate order everywhere: (v, x1, ..., xn, u).
struct WalkerMetric {
    int n = 0;
    std::vector<std::vector<Expr>> h; // symmetric, v-free
    std::vector<Expr> A;              // v-free
    Expr H;

    int dim() const { return n + 2; }
    geom::Chart chart() const;
    // Throws Error when h is asymmetric or h/A depend on v.
    void validate() const;
    bool h_is_identity() const;
    bool A_is_zero() const;
};

WalkerMetric identity_h_metric(int n, Expr H);

// p = d_v, X_i = d_i - A_i d_v, q = d_u - (H/2) d_v, plus the dual coframe.
struct AdaptedFrame {
    int n = 0;
    std::vector<TensorField> vectors;   // (1,0), order p, X_1..X_n, q
    std::vector<TensorField> covectors; // (0,1), dual order
};

AdaptedFrame adapted_frame(const WalkerMetric& m);

// Lazily cached tensor pipeline for one metric.
class Geometry {
public:
    explicit Geometry(WalkerMetric m);

    const WalkerMetric& metric() const { return m_; }
    const geom::Chart& chart() const { return chart_; }
    const TensorField& g();
    const TensorField& ginv();
    const TensorField& gamma();
    const TensorField& riemann_mixed();
    const TensorField& riemann();       // (0,4)
    const TensorField& nabla_riemann(); // (0,5)
    const TensorField& nabla2_riemann();
    const TensorField& ricci();
    const TensorField& scalar();        // rank 0
    const AdaptedFrame& frame();

    TensorField covariant_derivative(const TensorField& t);
    TensorField weyl_general(); // throws DimensionTooSmall when n + 2 < 4

private:
    WalkerMetric m_;
    geom::Chart chart_;
    std::optional<TensorField> g_, ginv_, gamma_, rm_, rlow_, nr_, n2r_, ric_, s_;
    std::optional<AdaptedFrame> frame_;
};

// Convenience free functions (each builds a Geometry internally).
TensorField metric_tensor(const WalkerMetric& m);
TensorField inverse_metric(const WalkerMetric& m);
TensorField christoffel(const WalkerMetric& m);
TensorField riemann(const WalkerMetric& m);
TensorField covariant_derivative(const TensorField& t, const WalkerMetric& m);
std::pair<TensorField, TensorField> ricci_and_scalar(const WalkerMetric& m);
TensorField weyl_general(const WalkerMetric& m);
// Assembles W = R + R_L from the adapted-frame curvature blocks (declared
// here, implemented on top of the decomp module).
TensorField weyl_walker(const WalkerMetric& m);
TensorField weyl_walker(Geometry& geo);

// Contract every slot of an all-covariant tensor with the frame vectors:
// out[a1..ak] = t(vec_{a1}, ..., vec_{ak}).
TensorField frame_components(const TensorField& t, const AdaptedFrame& frame);
// Inverse direction: expand a frame-indexed all-covariant tensor in
// coordinates through the dual coframe.
TensorField coordinate_components(const TensorField& t_frame, const AdaptedFrame& frame);

// Riemannian geometry of the family h at fixed u (chart x1..xn).
struct HFamilyGeometry {
    geom::Chart chart;
    TensorField h;      // (0,2)
    TensorField hinv;   // (2,0)
    TensorField riemann; // (0,4)
    TensorField ricci;  // (0,2)
    TensorField scalar; // rank 0
};
HFamilyGeometry h_family_geometry(const WalkerMetric& m);

} // namespace walker

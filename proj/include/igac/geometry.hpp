#pragma once

#include "igac/manifold.hpp"
#include "igac/types.hpp"

namespace igac {

/// Finite-difference step scales. Effective per-axis steps are
/// h_k = step * max(1, |theta_k|). `metric_step` applies to the metric's
/// first derivatives (only used when no analytic evaluator exists);
/// `christoffel_step` to the Christoffel derivatives inside the Riemann
/// tensor, which are always taken numerically.
struct GeometryOptions {
  double metric_step = 1e-5;
  double christoffel_step = 1e-4;
};

/// Levi-Civita connection coefficients, gamma(rho, mu, nu) = Gamma^rho_{mu nu}.
Tensor3 christoffel(const ManifoldSpec& m, const Vec& theta,
                    const GeometryOptions& opts = {});

/// Curvature objects at a point. Index convention:
///   R^mu_{nu rho sigma} = d_rho Gamma^mu_{nu sigma} - d_sigma Gamma^mu_{nu rho}
///                       + Gamma^mu_{rho lam} Gamma^lam_{nu sigma}
///                       - Gamma^mu_{sigma lam} Gamma^lam_{nu rho}
///   Ricci_{nu sigma} = R^rho_{nu rho sigma},  scalar = g^{nu sigma} Ricci.
struct CurvatureBundle {
  Tensor4 riemann;          // R^mu_{nu rho sigma}
  Tensor4 riemann_lowered;  // R_{mu nu rho sigma} = g_{mu lam} R^lam_{...}
  Mat ricci;
  double scalar = 0.0;
  Vec point;
};

CurvatureBundle curvature_tensors(const ManifoldSpec& m, const Vec& theta,
                                  const GeometryOptions& opts = {});

/// A 2-plane in the tangent space, spanned by u and v.
struct TangentPlane {
  Vec u;
  Vec v;
};

/// Sectional curvature K(u, v); invariant under re-basing of the plane.
double sectional_curvature(const ManifoldSpec& m, const Vec& theta,
                           const TangentPlane& plane,
                           const GeometryOptions& opts = {});

double sectional_curvature(const CurvatureBundle& bundle, const Mat& g,
                           const TangentPlane& plane);

/// Sum of K(e_i, e_j) over all ordered pairs i != j of the Gram-Schmidt
/// orthonormalization of the coordinate basis; equals the scalar curvature.
double sum_sectional_coordinate_planes(const ManifoldSpec& m, const Vec& theta,
                                       const GeometryOptions& opts = {});

/// Deviation of the curvature from the constant-curvature form,
///   W_{mu nu rho sigma} = R_{mu nu rho sigma}
///     - R/(n(n-1)) (g_{mu rho} g_{nu sigma} - g_{mu sigma} g_{nu rho});
/// identically zero on constant-curvature manifolds.
Tensor4 weyl_anisotropy(const ManifoldSpec& m, const Vec& theta,
                        const GeometryOptions& opts = {});

}  // namespace igac

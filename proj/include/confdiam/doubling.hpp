#pragma once

#include <vector>

#include "confdiam/ambient.hpp"
#include "confdiam/gates.hpp"
#include "confdiam/geodesy.hpp"
#include "confdiam/mesh.hpp"

namespace confdiam {

/// Sample of a planar unit-speed curve. At a curvature discontinuity two
/// consecutive samples share the same arclength with the left/right kappa, so
/// trapezoid quadrature of |kappa| is exact on piecewise-constant profiles.
struct CurveSample {
    double s;
    double x, y;
    double tx, ty;  // unit tangent
    double kappa;
};

/// Closed planar unit-speed curve with x'(0) = 1, x'(b) = -1, y'(0) = y'(b) = 0
/// and z(0) = z(b) = (0, 0): the cross-section of the gluing tube. The
/// builtin family is lead-out segment + left arc (turning pi + 2 eta) + slant
/// + right arc (turning 2 eta), so the total absolute turning is pi + 4 eta.
struct TeardropCurve {
    std::vector<CurveSample> samples;
    double length = 0.0;          // b
    double total_abs_turn = 0.0;  // K(z) from the construction
    std::vector<double> breakpoints;  // piece boundaries in s (for ring placement)

    /// Linear interpolation of position at arclength s in [0, b].
    void eval(double s, double& x, double& y) const;
};

/// Builds the arc-and-segment teardrop for eta in (0, pi/4). The two free
/// segment lengths are solved by a damped-Newton shooting iteration on the
/// closure residual z(b) - z(0) (construction_error if it fails to reach
/// 1e-9 * scale). n_samples >= 64 controls the resampling density.
TeardropCurve make_teardrop(double eta, int n_samples);

/// Test helpers: a full circle (closed, K = 2 pi) and an open semicircle
/// (K = pi) of radius R.
TeardropCurve make_circle_curve(double radius, int n_samples);
TeardropCurve make_semicircle_arc(double radius, int n_samples);

/// Trapezoid quadrature of |kappa| over the samples.
double total_abs_curvature(const TeardropCurve& c);

/// Euclidean-orthonormal frame at a boundary vertex: e1 the boundary tangent
/// (central difference along the loop), e2 the outward conormal (tangent to
/// the surface, orthogonal to e1), e3 = e1 x e2.
struct BoundaryFrame {
    int vertex = -1;
    Vec3 e1, e2, e3;
};

/// One frame list per boundary loop, in loop order. A boundary vertex with no
/// interior neighbour is a mesh_quality error.
std::vector<std::vector<BoundaryFrame>> boundary_frames(const ImmersedMesh& mesh);

/// Closed double of a surface: copy A, one teardrop tube per boundary loop,
/// and a reversed copy B. The s = 0 tube ring reuses copy A's boundary
/// vertices and the s = b ring reuses copy B's, so the welds are exact by
/// construction. Vertices [0, sigma_vertex_count) are copy A, in input order.
struct DoubledMesh {
    ImmersedMesh mesh;
    std::vector<char> tube_face;       // per face of mesh
    std::vector<double> tube_weight;   // per vertex: 1 interior tube, 0.5 ring, 0
    int sigma_vertex_count = 0;
};

/// s_res is the target number of tube rings; rings are snapped to the curve's
/// piece breakpoints so the discrete cross-section turning telescopes exactly
/// within each smooth piece. eps must keep all tube vertices inside V.
DoubledMesh build_double(const ImmersedMesh& mesh, const ConformalAmbient& a, double eps,
                         const TeardropCurve& drop, int s_res);

/// int_{T_eps} |H| dmu: the conformal total mean curvature restricted to
/// vertices whose star lies in tube faces, with the C^{1,1} junction rings
/// counted at half weight.
double tube_mean_curvature_integral(const DoubledMesh& dbl, const ConformalAmbient& a,
                                    Exec exec = Exec::OpenMP);

struct ConvergenceRow {
    double eps = 0.0;
    double tube_integral = 0.0;
    double reference = 0.0;   // K(z) * l(boundary)
    double abs_error = 0.0;
    double d_sigma = 0.0;
    double d_m_eps = 0.0;
    bool monotone_ok = false;     // d(Sigma) <= d(M_eps) + graph tolerance
    bool diam_bound_ok = false;   // d(M_eps) <= C (2 int_Sigma |H| + tube integral)
    GateReport wz;                // closed-surface report for M_eps
};

struct ConvergenceOptions {
    int s_res = 96;
    std::optional<double> alpha;
    bool strict = false;
    DiameterOptions diameter;
    Exec exec = Exec::OpenMP;
};

/// Runs build_double over a decreasing eps list and reports the tube integral
/// against K(z) * l(boundary) together with the diameter comparisons.
std::vector<ConvergenceRow> convergence_study(const ImmersedMesh& mesh,
                                              const ConformalAmbient& a,
                                              const TeardropCurve& drop,
                                              std::span<const double> eps_list,
                                              const ConvergenceOptions& opts = {});

}  // namespace confdiam

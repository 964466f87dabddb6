#pragma once

#include <span>
#include <vector>

#include "confdiam/ambient.hpp"
#include "confdiam/mesh.hpp"
#include "confdiam/parallel.hpp"

namespace confdiam {

/// Discrete curvature data per vertex. H_delta is the Euclidean mean
/// curvature vector (trace convention: the unit sphere has |H_delta| = 2,
/// pointing inward) from the cotangent Laplacian of the positions over the
/// Meyer mixed area; boundary vertices carry H_delta = 0 and are excluded
/// from curvature integrals. H_conf_norm is the pointwise mean curvature
/// magnitude in the conformal metric,
///     |H|_g = e^{-phi} |H_delta - 2 <Dphi, n> n|_delta.
struct CurvatureField {
    std::vector<Vec3> H_delta;
    std::vector<double> H_conf_norm;
    std::vector<Vec3> normals;       // unit, angle-weighted
    std::vector<double> mixed_areas; // Euclidean; sums exactly to total area
    bool barycentric_fallback = false;  // some degenerate star used thirds
};

CurvatureField curvature_field(const ImmersedMesh& mesh, const ConformalAmbient& a,
                               Exec exec = Exec::OpenMP);

/// Euclidean-only curvature (phi = 0), the quantity most unit oracles pin.
CurvatureField mean_curvature_delta(const ImmersedMesh& mesh, Exec exec = Exec::OpenMP);

/// Surface area in the conformal metric: sum over faces of
/// e^{2 phi(centroid)} * EuclideanArea.
double area(const ImmersedMesh& mesh, const ConformalAmbient& a);

/// Total boundary length in the conformal metric (0 for closed meshes).
double boundary_length(const ImmersedMesh& mesh, const ConformalAmbient& a,
                       int quad_order = 2);

/// Integral of |H| dmu in the conformal metric:
///   sum over interior vertices of e^{phi} |H_delta - 2 (Dphi)^perp|_delta
///   * mixed_area_delta.
double total_mean_curvature(const ImmersedMesh& mesh, const ConformalAmbient& a,
                            Exec exec = Exec::OpenMP);

/// Same integral with a per-vertex weight (the doubling module integrates
/// over tube-tagged vertices with junction rings at half weight).
double total_mean_curvature_weighted(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                     std::span<const double> vertex_weight,
                                     Exec exec = Exec::OpenMP);

}  // namespace confdiam

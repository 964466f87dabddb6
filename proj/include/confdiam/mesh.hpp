#pragma once

#include <array>
#include <span>
#include <vector>

#include "confdiam/ambient.hpp"
#include "confdiam/vec3.hpp"

namespace confdiam {

/// Oriented triangle mesh immersed in a chart, manifold with boundary.
/// Construction validates:
///   - every edge borders exactly 1 or 2 faces, with opposite directions
///     (consistent orientation),
///   - no degenerate faces (Euclidean area > 1e-12 * bbox_scale^2),
///   - no isolated vertices, no pinched vertex stars.
/// Boundary loops are extracted so the surface lies to the left of the
/// traversal direction. Connectivity is recorded but not required here;
/// operations that need a connected surface reject disconnected input
/// themselves. Instances are immutable after creation.
class ImmersedMesh {
public:
    struct Edge {
        int a, b;       // a < b
        int f0, f1;     // incident faces, f1 = -1 on the boundary
    };

    static ImmersedMesh create(std::vector<Vec3> positions,
                               std::vector<std::array<int, 3>> faces);

    int vertex_count() const { return static_cast<int>(positions_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    std::span<const Vec3> positions() const { return positions_; }
    const Vec3& position(int v) const { return positions_[v]; }
    std::span<const std::array<int, 3>> faces() const { return faces_; }
    const std::array<int, 3>& face(int f) const { return faces_[f]; }
    std::span<const Edge> edges() const { return edges_; }

    const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }
    bool is_closed() const { return boundary_loops_.empty(); }
    bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
    int boundary_vertex_count() const { return boundary_vertex_count_; }
    int interior_vertex_count() const { return vertex_count() - boundary_vertex_count_; }

    /// Faces incident to v, as indices into faces().
    std::span<const int> faces_around(int v) const;
    /// One-ring vertex neighbours of v.
    std::span<const int> neighbors(int v) const;

    bool connected() const { return component_count_ == 1; }
    int component_count() const { return component_count_; }
    int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

    /// Longest axis of the Euclidean bounding box; the degeneracy scale.
    double bbox_scale() const { return bbox_scale_; }

    double face_area(int f) const;
    Vec3 face_normal(int f) const;  // unit, orientation-consistent
    Vec3 face_centroid(int f) const;

    /// Throws domain_error unless every vertex lies inside the ambient chart.
    void require_inside(const ConformalAmbient& a) const;
    /// Throws disconnected unless the mesh has a single component.
    void require_connected() const;

    /// Same topology, new vertex positions (revalidates geometry only).
    ImmersedMesh with_positions(std::vector<Vec3> positions) const;

private:
    ImmersedMesh() = default;
    void build_topology();

    std::vector<Vec3> positions_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> boundary_loops_;
    std::vector<char> boundary_vertex_;
    std::vector<int> vertex_face_offsets_, vertex_face_data_;
    std::vector<int> vertex_neighbor_offsets_, vertex_neighbor_data_;
    int boundary_vertex_count_ = 0;
    int component_count_ = 0;
    double bbox_scale_ = 0.0;
};

}  // namespace confdiam

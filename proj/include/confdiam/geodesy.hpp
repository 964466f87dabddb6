#pragma once

#include <vector>

#include "confdiam/ambient.hpp"
#include "confdiam/mesh.hpp"
#include "confdiam/parallel.hpp"

namespace confdiam {

struct GraphOptions {
    int quad_order = 5;      // per-edge Gauss order for the conformal weight
    int steiner_rounds = 0;  // 0 or 1; one round of edge-midpoint shortcuts
};

/// Edge graph of a mesh with conformal edge lengths as weights. With one
/// Steiner round, edge midpoints are inserted as path nodes (each original
/// edge split in two, plus the three medial segments per face); distances can
/// only shrink and the diameter is still reported over original vertices.
class WeightedGraph {
public:
    static WeightedGraph from_mesh(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                   const GraphOptions& opts = {});

    int node_count() const { return node_count_; }
    int base_vertex_count() const { return base_vertex_count_; }
    double max_edge_weight() const { return max_weight_; }
    int component_count() const;

    std::span<const int> targets(int u) const;
    std::span<const double> weights(int u) const;

    /// Single-source shortest path distances to all nodes.
    std::vector<double> dijkstra(int source) const;

private:
    int node_count_ = 0;
    int base_vertex_count_ = 0;
    double max_weight_ = 0.0;
    std::vector<int> offsets_, targets_;
    std::vector<double> weights_;
};

struct DiameterOptions {
    GraphOptions graph;
    Exec exec = Exec::OpenMP;
};

struct DiameterResult {
    double value = 0.0;
    int v0 = -1, v1 = -1;  // realizing vertex pair (original mesh indices)
};

/// Intrinsic diameter of the mesh under the conformal metric: the max over
/// original-vertex pairs of graph shortest-path distance. The graph metric
/// overestimates the smooth geodesic distance (paths are curves on the
/// surface), which is the conservative direction for testing an upper bound.
DiameterResult intrinsic_diameter(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                  const DiameterOptions& opts = {});

/// d(Sigma) <= d(M_eps) + 2 * max edge weight, for a doubled mesh whose first
/// vertices correspond to Sigma's (the doubling module guarantees this; the
/// correspondence is checked positionally).
bool doubling_monotonicity_check(const ImmersedMesh& sigma, const ImmersedMesh& m_eps,
                                 const ConformalAmbient& a, const DiameterOptions& opts = {});

}  // namespace confdiam

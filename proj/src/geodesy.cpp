#include "confdiam/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include "confdiam/error.hpp"
#include "confdiam/gauss.hpp"

namespace confdiam {

namespace {

double segment_weight(const ConformalAmbient& a, const Vec3& p, const Vec3& q,
                      std::span<const GaussPoint> rule) {
    double factor = 0.0;
    for (const GaussPoint& gp : rule) factor += gp.weight * a.conformal_factor(p + (q - p) * gp.node);
    return factor * distance(p, q);
}

}  // namespace

WeightedGraph WeightedGraph::from_mesh(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                       const GraphOptions& opts) {
    mesh.require_inside(a);
    if (opts.steiner_rounds < 0 || opts.steiner_rounds > 1)
        fail(Errc::invalid_input, "steiner_rounds must be 0 or 1");
    const auto rule = gauss_rule(opts.quad_order);

    const int nv = mesh.vertex_count();
    WeightedGraph g;
    g.base_vertex_count_ = nv;

    struct Arc {
        int u, v;
        double w;
    };
    std::vector<Arc> arcs;

    if (opts.steiner_rounds == 0) {
        g.node_count_ = nv;
        arcs.reserve(mesh.edge_count());
        for (const auto& e : mesh.edges())
            arcs.push_back({e.a, e.b, segment_weight(a, mesh.position(e.a), mesh.position(e.b), rule)});
    } else {
        // Edge midpoints become extra path nodes: each edge splits in two and
        // every face contributes its medial triangle. Distances between the
        // original vertices can only shrink, so the reported diameter never
        // increases.
        const int ne = mesh.edge_count();
        g.node_count_ = nv + ne;
        std::vector<Vec3> mid(ne);
        for (int e = 0; e < ne; ++e) {
            const auto& edge = mesh.edges()[e];
            mid[e] = (mesh.position(edge.a) + mesh.position(edge.b)) * 0.5;
            a.require_inside(mid[e]);
        }
        arcs.reserve(static_cast<size_t>(ne) * 2 + static_cast<size_t>(mesh.face_count()) * 3);
        for (int e = 0; e < ne; ++e) {
            const auto& edge = mesh.edges()[e];
            arcs.push_back({edge.a, nv + e, segment_weight(a, mesh.position(edge.a), mid[e], rule)});
            arcs.push_back({nv + e, edge.b, segment_weight(a, mid[e], mesh.position(edge.b), rule)});
        }
        // Edge index lookup per face corner.
        std::vector<std::array<int, 3>> face_edges(mesh.face_count());
        {
            // edges() is sorted by first occurrence; build a map once.
            std::unordered_map<std::uint64_t, int> index;
            index.reserve(ne);
            auto pack = [](int x, int y) {
                return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(std::min(x, y))) << 32) |
                       static_cast<std::uint32_t>(std::max(x, y));
            };
            for (int e = 0; e < ne; ++e) index[pack(mesh.edges()[e].a, mesh.edges()[e].b)] = e;
            for (int f = 0; f < mesh.face_count(); ++f) {
                const auto& tri = mesh.face(f);
                for (int k = 0; k < 3; ++k)
                    face_edges[f][k] = index[pack(tri[k], tri[(k + 1) % 3])];
            }
        }
        for (int f = 0; f < mesh.face_count(); ++f) {
            for (int k = 0; k < 3; ++k) {
                const int e0 = face_edges[f][k], e1 = face_edges[f][(k + 1) % 3];
                arcs.push_back({nv + e0, nv + e1, segment_weight(a, mid[e0], mid[e1], rule)});
            }
        }
    }

    g.max_weight_ = 0.0;
    for (const Arc& arc : arcs) {
        if (!(arc.w > 0.0)) fail(Errc::invalid_input, "non-positive edge weight");
        g.max_weight_ = std::max(g.max_weight_, arc.w);
    }

    g.offsets_.assign(g.node_count_ + 1, 0);
    for (const Arc& arc : arcs) {
        ++g.offsets_[arc.u + 1];
        ++g.offsets_[arc.v + 1];
    }
    for (int v = 0; v < g.node_count_; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.targets_.assign(g.offsets_.back(), 0);
    g.weights_.assign(g.offsets_.back(), 0.0);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Arc& arc : arcs) {
        g.targets_[cursor[arc.u]] = arc.v;
        g.weights_[cursor[arc.u]++] = arc.w;
        g.targets_[cursor[arc.v]] = arc.u;
        g.weights_[cursor[arc.v]++] = arc.w;
    }
    return g;
}

std::span<const int> WeightedGraph::targets(int u) const {
    return {targets_.data() + offsets_[u], static_cast<size_t>(offsets_[u + 1] - offsets_[u])};
}

std::span<const double> WeightedGraph::weights(int u) const {
    return {weights_.data() + offsets_[u], static_cast<size_t>(offsets_[u + 1] - offsets_[u])};
}

int WeightedGraph::component_count() const {
    std::vector<int> label(node_count_, -1), stack;
    int components = 0;
    for (int v = 0; v < node_count_; ++v) {
        if (label[v] >= 0) continue;
        label[v] = components;
        stack.assign(1, v);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int w : targets(u))
                if (label[w] < 0) {
                    label[w] = components;
                    stack.push_back(w);
                }
        }
        ++components;
    }
    return components;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void dijkstra_into(const WeightedGraph& g, int source, std::vector<double>& dist) {
    dist.assign(g.node_count(), kInf);
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        const auto ts = g.targets(u);
        const auto ws = g.weights(u);
        for (size_t k = 0; k < ts.size(); ++k) {
            const double nd = d + ws[k];
            if (nd < dist[ts[k]]) {
                dist[ts[k]] = nd;
                heap.push({nd, ts[k]});
            }
        }
    }
}

}  // namespace

std::vector<double> WeightedGraph::dijkstra(int source) const {
    std::vector<double> dist;
    dijkstra_into(*this, source, dist);
    return dist;
}

DiameterResult intrinsic_diameter(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                  const DiameterOptions& opts) {
    mesh.require_connected();
    const WeightedGraph g = WeightedGraph::from_mesh(mesh, a, opts.graph);
    const int nb = g.base_vertex_count();

    // Per-source farthest original vertex; reduced serially afterwards so the
    // result (including the realizing pair on ties) is schedule-independent.
    std::vector<double> best(nb, 0.0);
    std::vector<int> arg(nb, -1);

    auto run_source = [&](int s, std::vector<double>& dist) {
        dijkstra_into(g, s, dist);
        double m = -1.0;
        int am = -1;
        for (int t = 0; t < nb; ++t) {
            if (dist[t] > m) {
                m = dist[t];
                am = t;
            }
        }
        best[s] = m;
        arg[s] = am;
    };

    if (opts.exec == Exec::OpenMP) {
#pragma omp parallel
        {
            std::vector<double> dist;
#pragma omp for schedule(dynamic, 16)
            for (int s = 0; s < nb; ++s) run_source(s, dist);
        }
    } else {
        std::vector<double> dist;
        for (int s = 0; s < nb; ++s) run_source(s, dist);
    }

    DiameterResult result;
    for (int s = 0; s < nb; ++s) {
        if (best[s] > result.value) {
            result.value = best[s];
            result.v0 = s;
            result.v1 = arg[s];
        }
    }
    if (result.v0 > result.v1) std::swap(result.v0, result.v1);
    if (!std::isfinite(result.value))
        fail(Errc::disconnected, "graph is disconnected");  // defensive; create() should prevent
    return result;
}

bool doubling_monotonicity_check(const ImmersedMesh& sigma, const ImmersedMesh& m_eps,
                                 const ConformalAmbient& a, const DiameterOptions& opts) {
    const int n = sigma.vertex_count();
    if (m_eps.vertex_count() < n)
        fail(Errc::invalid_input, "doubled mesh smaller than the input surface");
    const double tol_pos = 1e-12 * std::max(1.0, sigma.bbox_scale());
    for (int v = 0; v < n; ++v) {
        if (distance(sigma.position(v), m_eps.position(v)) > tol_pos)
            fail(Errc::invalid_input,
                 "vertex correspondence missing: doubled mesh does not start with the surface");
    }
    const DiameterResult d_sigma = intrinsic_diameter(sigma, a, opts);
    const DiameterResult d_meps = intrinsic_diameter(m_eps, a, opts);
    const double tol = 2.0 * WeightedGraph::from_mesh(m_eps, a, opts.graph).max_edge_weight();
    return d_sigma.value <= d_meps.value + tol;
}

}  // namespace confdiam

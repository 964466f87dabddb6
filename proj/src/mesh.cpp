#include "confdiam/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

constexpr double kDegenerateAreaFactor = 1e-12;

inline std::uint64_t pack(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

ImmersedMesh ImmersedMesh::create(std::vector<Vec3> positions,
                                  std::vector<std::array<int, 3>> faces) {
    ImmersedMesh m;
    m.positions_ = std::move(positions);
    m.faces_ = std::move(faces);
    m.build_topology();
    return m;
}

ImmersedMesh ImmersedMesh::with_positions(std::vector<Vec3> positions) const {
    if (positions.size() != positions_.size())
        fail(Errc::invalid_input, "with_positions: vertex count mismatch");
    ImmersedMesh m = *this;
    m.positions_ = std::move(positions);

    double lo[3] = {m.positions_[0].x, m.positions_[0].y, m.positions_[0].z};
    double hi[3] = {lo[0], lo[1], lo[2]};
    for (const Vec3& p : m.positions_) {
        lo[0] = std::min(lo[0], p.x); hi[0] = std::max(hi[0], p.x);
        lo[1] = std::min(lo[1], p.y); hi[1] = std::max(hi[1], p.y);
        lo[2] = std::min(lo[2], p.z); hi[2] = std::max(hi[2], p.z);
    }
    m.bbox_scale_ = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});

    const double area_floor = kDegenerateAreaFactor * m.bbox_scale_ * m.bbox_scale_;
    for (int f = 0; f < m.face_count(); ++f) {
        if (m.face_area(f) <= area_floor)
            fail(Errc::degenerate_face, "face " + std::to_string(f) + " is degenerate");
    }
    return m;
}

void ImmersedMesh::build_topology() {
    const int nv = vertex_count();
    const int nf = face_count();
    if (nv < 3 || nf < 1) fail(Errc::invalid_input, "mesh needs at least 3 vertices and 1 face");

    for (const auto& f : faces_) {
        for (int k = 0; k < 3; ++k) {
            if (f[k] < 0 || f[k] >= nv)
                fail(Errc::invalid_input, "face references vertex " + std::to_string(f[k]));
        }
        if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0])
            fail(Errc::invalid_input, "face with repeated vertex");
    }

    double lo[3] = {positions_[0].x, positions_[0].y, positions_[0].z};
    double hi[3] = {lo[0], lo[1], lo[2]};
    for (const Vec3& p : positions_) {
        lo[0] = std::min(lo[0], p.x); hi[0] = std::max(hi[0], p.x);
        lo[1] = std::min(lo[1], p.y); hi[1] = std::max(hi[1], p.y);
        lo[2] = std::min(lo[2], p.z); hi[2] = std::max(hi[2], p.z);
    }
    bbox_scale_ = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
    if (bbox_scale_ <= 0.0) fail(Errc::invalid_input, "all vertices coincide");

    const double area_floor = kDegenerateAreaFactor * bbox_scale_ * bbox_scale_;
    for (int f = 0; f < nf; ++f) {
        if (face_area(f) <= area_floor)
            fail(Errc::degenerate_face, "face " + std::to_string(f) + " is degenerate");
    }

    // Undirected edge table plus directed-occurrence counts. A consistently
    // oriented manifold uses each direction at most once.
    std::unordered_map<std::uint64_t, int> edge_index;
    edge_index.reserve(static_cast<size_t>(nf) * 3);
    std::unordered_map<std::uint64_t, int> directed_count;
    directed_count.reserve(static_cast<size_t>(nf) * 3);
    edges_.clear();

    for (int f = 0; f < nf; ++f) {
        const auto& tri = faces_[f];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k], b = tri[(k + 1) % 3];
            if (++directed_count[pack(a, b)] > 1)
                fail(Errc::inconsistent_orientation,
                     "directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") used by two faces; orientation is inconsistent");
            const std::uint64_t key = pack(std::min(a, b), std::max(a, b));
            auto it = edge_index.find(key);
            if (it == edge_index.end()) {
                edge_index.emplace(key, static_cast<int>(edges_.size()));
                edges_.push_back({std::min(a, b), std::max(a, b), f, -1});
            } else {
                Edge& e = edges_[it->second];
                if (e.f1 != -1)
                    fail(Errc::nonmanifold_edge,
                         "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                             ") borders more than two faces");
                e.f1 = f;
            }
        }
    }

    // Vertex -> incident faces (CSR).
    vertex_face_offsets_.assign(nv + 1, 0);
    for (const auto& tri : faces_)
        for (int v : tri) ++vertex_face_offsets_[v + 1];
    for (int v = 0; v < nv; ++v) vertex_face_offsets_[v + 1] += vertex_face_offsets_[v];
    vertex_face_data_.assign(vertex_face_offsets_[nv], 0);
    {
        std::vector<int> cursor(vertex_face_offsets_.begin(), vertex_face_offsets_.end() - 1);
        for (int f = 0; f < nf; ++f)
            for (int v : faces_[f]) vertex_face_data_[cursor[v]++] = f;
    }
    for (int v = 0; v < nv; ++v) {
        if (vertex_face_offsets_[v] == vertex_face_offsets_[v + 1])
            fail(Errc::isolated_vertex, "vertex " + std::to_string(v) + " has no incident face");
    }

    // Umbrella check: the faces around each vertex must form a single fan.
    {
        std::vector<int> stack, comp;
        std::unordered_map<std::uint64_t, int> local_edge_face;
        for (int v = 0; v < nv; ++v) {
            const int begin = vertex_face_offsets_[v], end = vertex_face_offsets_[v + 1];
            const int deg = end - begin;
            if (deg == 1) continue;
            local_edge_face.clear();
            comp.assign(deg, -1);
            auto other_two = [&](int f, int& u, int& w) {
                const auto& tri = faces_[f];
                int others[2], n = 0;
                for (int x : tri)
                    if (x != v) others[n++] = x;
                u = others[0];
                w = others[1];
            };
            // Pair faces that share an edge through v.
            std::vector<std::pair<int, int>> pairs;  // local face index adjacency
            for (int i = 0; i < deg; ++i) {
                int u, w;
                other_two(vertex_face_data_[begin + i], u, w);
                for (int x : {u, w}) {
                    const std::uint64_t key = pack(std::min(v, x), std::max(v, x));
                    auto it = local_edge_face.find(key);
                    if (it == local_edge_face.end())
                        local_edge_face.emplace(key, i);
                    else
                        pairs.emplace_back(it->second, i);
                }
            }
            std::vector<std::vector<int>> adj(deg);
            for (auto [i, j] : pairs) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
            stack.assign(1, 0);
            comp[0] = 0;
            int seen = 1;
            while (!stack.empty()) {
                const int i = stack.back();
                stack.pop_back();
                for (int j : adj[i])
                    if (comp[j] < 0) {
                        comp[j] = 0;
                        ++seen;
                        stack.push_back(j);
                    }
            }
            if (seen != deg)
                fail(Errc::pinched_vertex,
                     "vertex " + std::to_string(v) + " joins multiple surface sheets");
        }
    }

    // Boundary loops: directed boundary edges follow the face orientation, so
    // the surface lies to the left of the traversal.
    boundary_vertex_.assign(nv, 0);
    std::unordered_map<int, int> next;
    for (const Edge& e : edges_) {
        if (e.f1 != -1) continue;
        const auto& tri = faces_[e.f0];
        int a = -1, b = -1;
        for (int k = 0; k < 3; ++k) {
            const int u = tri[k], w = tri[(k + 1) % 3];
            if ((u == e.a && w == e.b) || (u == e.b && w == e.a)) {
                a = u;
                b = w;
                break;
            }
        }
        if (next.count(a))
            fail(Errc::pinched_vertex,
                 "boundary vertex " + std::to_string(a) + " has two outgoing boundary edges");
        next[a] = b;
        boundary_vertex_[a] = 1;
        boundary_vertex_[b] = 1;
    }
    boundary_loops_.clear();
    {
        std::unordered_map<int, char> visited;
        for (const auto& [start, _] : next) {
            if (visited.count(start)) continue;
            std::vector<int> loop;
            int v = start;
            do {
                loop.push_back(v);
                visited[v] = 1;
                auto it = next.find(v);
                if (it == next.end())
                    fail(Errc::nonmanifold_edge, "open boundary chain at vertex " + std::to_string(v));
                v = it->second;
            } while (v != start);
            boundary_loops_.push_back(std::move(loop));
        }
    }
    boundary_vertex_count_ = 0;
    for (char b : boundary_vertex_) boundary_vertex_count_ += b;

    // Vertex neighbours (CSR), from the undirected edges.
    vertex_neighbor_offsets_.assign(nv + 1, 0);
    for (const Edge& e : edges_) {
        ++vertex_neighbor_offsets_[e.a + 1];
        ++vertex_neighbor_offsets_[e.b + 1];
    }
    for (int v = 0; v < nv; ++v) vertex_neighbor_offsets_[v + 1] += vertex_neighbor_offsets_[v];
    vertex_neighbor_data_.assign(vertex_neighbor_offsets_[nv], 0);
    {
        std::vector<int> cursor(vertex_neighbor_offsets_.begin(),
                                vertex_neighbor_offsets_.end() - 1);
        for (const Edge& e : edges_) {
            vertex_neighbor_data_[cursor[e.a]++] = e.b;
            vertex_neighbor_data_[cursor[e.b]++] = e.a;
        }
    }

    // Connected components over vertices.
    {
        std::vector<int> label(nv, -1), stack;
        component_count_ = 0;
        for (int v = 0; v < nv; ++v) {
            if (label[v] >= 0) continue;
            label[v] = component_count_;
            stack.assign(1, v);
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                for (int w : neighbors(u))
                    if (label[w] < 0) {
                        label[w] = component_count_;
                        stack.push_back(w);
                    }
            }
            ++component_count_;
        }
    }
}

std::span<const int> ImmersedMesh::faces_around(int v) const {
    return {vertex_face_data_.data() + vertex_face_offsets_[v],
            static_cast<size_t>(vertex_face_offsets_[v + 1] - vertex_face_offsets_[v])};
}

std::span<const int> ImmersedMesh::neighbors(int v) const {
    return {vertex_neighbor_data_.data() + vertex_neighbor_offsets_[v],
            static_cast<size_t>(vertex_neighbor_offsets_[v + 1] - vertex_neighbor_offsets_[v])};
}

double ImmersedMesh::face_area(int f) const {
    const auto& tri = faces_[f];
    return 0.5 * norm(cross(positions_[tri[1]] - positions_[tri[0]],
                            positions_[tri[2]] - positions_[tri[0]]));
}

Vec3 ImmersedMesh::face_normal(int f) const {
    const auto& tri = faces_[f];
    return normalized(cross(positions_[tri[1]] - positions_[tri[0]],
                            positions_[tri[2]] - positions_[tri[0]]));
}

Vec3 ImmersedMesh::face_centroid(int f) const {
    const auto& tri = faces_[f];
    return (positions_[tri[0]] + positions_[tri[1]] + positions_[tri[2]]) / 3.0;
}

void ImmersedMesh::require_inside(const ConformalAmbient& a) const {
    for (const Vec3& p : positions_) a.require_inside(p);
}

void ImmersedMesh::require_connected() const {
    if (!connected())
        fail(Errc::disconnected,
             "mesh has " + std::to_string(component_count_) + " components; need 1");
}

}  // namespace confdiam

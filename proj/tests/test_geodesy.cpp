#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "confdiam/error.hpp"
#include "confdiam/generators.hpp"
#include "confdiam/geodesy.hpp"

using namespace confdiam;

namespace {

constexpr double kPi = 3.14159265358979323846;

ImmersedMesh relabeled(const ImmersedMesh& mesh, std::uint64_t seed) {
    std::vector<int> perm(mesh.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 gen(seed);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<Vec3> pos(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) pos[perm[v]] = mesh.position(v);
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : mesh.faces()) faces.push_back({perm[f[0]], perm[f[1]], perm[f[2]]});
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

}  // namespace

TEST_CASE("diameter of the flat disk: spokes realize 2r exactly") {
    const auto mesh = make_disk(1.0, 16, 48);
    const auto d = intrinsic_diameter(mesh, ConformalAmbient::euclidean());
    CHECK(d.value >= 2.0 - 1e-12);
    CHECK(d.value <= 2.0 * 1.03);
    // The realizing pair is a pair of opposite rim vertices.
    CHECK(norm(mesh.position(d.v0)) == doctest::Approx(1.0));
    CHECK(norm(mesh.position(d.v1)) == doctest::Approx(1.0));
}

TEST_CASE("diameter of the hyperbolic geodesic disk: 2 ln 3") {
    const auto d =
        intrinsic_diameter(make_disk(0.5, 16, 48), ConformalAmbient::hyperbolic_ball());
    const double expected = 2.0 * std::log(3.0);
    CHECK(d.value >= expected - 1e-9);
    CHECK(d.value <= expected * 1.03);
}

TEST_CASE("diameter of the unit sphere: pi within 5 percent, meridian paths") {
    const auto mesh = make_uv_sphere(48, 24);
    const auto d = intrinsic_diameter(mesh, ConformalAmbient::euclidean());
    const DiameterOptions opts;
    const double graph_tol =
        2.0 * WeightedGraph::from_mesh(mesh, ConformalAmbient::euclidean(), opts.graph)
                  .max_edge_weight();
    CHECK(d.value <= kPi * 1.05);
    CHECK(d.value >= kPi - graph_tol);
}

TEST_CASE("graph distance dominates ambient distance") {
    struct Fixture {
        ConformalAmbient ambient;
        ImmersedMesh mesh;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({ConformalAmbient::euclidean(), make_disk(1.0, 10, 32, 0.2, 3)});
    fixtures.push_back({ConformalAmbient::hyperbolic_ball(), make_disk(0.5, 10, 32)});
    fixtures.push_back({ConformalAmbient::hyperbolic_half_space(), make_plane_patch(0.5, 12, 1.0)});
    fixtures.push_back({ConformalAmbient::sphere_stereographic(), make_spherical_cap(0.5, 8, 24)});

    std::mt19937_64 gen(99);
    for (const auto& [ambient, mesh] : fixtures) {
        const auto graph = WeightedGraph::from_mesh(mesh, ambient);
        std::uniform_int_distribution<int> pick(0, mesh.vertex_count() - 1);
        for (int trial = 0; trial < 6; ++trial) {
            const int s = pick(gen);
            const auto dist = graph.dijkstra(s);
            for (int t = 0; t < mesh.vertex_count(); ++t) {
                CHECK(dist[t] >=
                      ambient_distance(ambient, mesh.position(s), mesh.position(t)) - 1e-9);
            }
        }
    }
}

TEST_CASE("diameter is invariant under vertex relabeling") {
    const auto mesh = make_disk(1.0, 8, 24, 0.15, 21);
    const auto base = intrinsic_diameter(mesh, ConformalAmbient::euclidean());
    const auto shuffled = relabeled(mesh, 5);
    const auto perm = intrinsic_diameter(shuffled, ConformalAmbient::euclidean());
    CHECK(base.value == doctest::Approx(perm.value).epsilon(1e-13));
}

TEST_CASE("one steiner round never increases the diameter") {
    for (const auto& mesh :
         {make_disk(1.0, 8, 24, 0.3, 9), make_icosphere(2), make_annulus(0.4, 1.0, 6, 24)}) {
        const auto plain = intrinsic_diameter(mesh, ConformalAmbient::euclidean());
        DiameterOptions opts;
        opts.graph.steiner_rounds = 1;
        const auto refined = intrinsic_diameter(mesh, ConformalAmbient::euclidean(), opts);
        CHECK(refined.value <= plain.value + 1e-12);
    }
}

TEST_CASE("weighted graph bookkeeping") {
    const auto mesh = make_disk(1.0, 6, 18);
    const auto g = WeightedGraph::from_mesh(mesh, ConformalAmbient::euclidean());
    CHECK(g.node_count() == mesh.vertex_count());
    CHECK(g.component_count() == 1);
    CHECK(g.max_edge_weight() > 0.0);

    // Two disjoint triangles: the graph splits as the mesh does, and the
    // diameter refuses to run.
    const auto split = ImmersedMesh::create(
        {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}},
        {{0, 1, 2}, {3, 4, 5}});
    CHECK(WeightedGraph::from_mesh(split, ConformalAmbient::euclidean()).component_count() == 2);
    CHECK_THROWS_AS(intrinsic_diameter(split, ConformalAmbient::euclidean()), Error);
}

TEST_CASE("doubling monotonicity: identity case and correspondence check") {
    const auto sphere = make_icosphere(3);
    // sigma = m_eps: closed input, empty tube; equality holds trivially.
    CHECK(doubling_monotonicity_check(sphere, sphere, ConformalAmbient::euclidean()));

    const auto other = make_uv_sphere(16, 8);
    CHECK_THROWS_AS(doubling_monotonicity_check(sphere, other, ConformalAmbient::euclidean()),
                    Error);
}

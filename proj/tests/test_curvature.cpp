#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confdiam/curvature.hpp"
#include "confdiam/error.hpp"
#include "confdiam/generators.hpp"

using namespace confdiam;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent quadrature oracle for the conformal area of a chart-plane disk:
// integrates e^{2 phi} over the disk with a dense midpoint rule in (r, theta).
double disk_area_quadrature(const ConformalAmbient& a, double radius, int nr = 2000,
                            int nt = 64) {
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = radius * (i + 0.5) / nr;
        for (int j = 0; j < nt; ++j) {
            const double t = 2.0 * kPi * (j + 0.5) / nt;
            const double f = a.conformal_factor({r * std::cos(t), r * std::sin(t), 0.0});
            total += f * f * r * (radius / nr) * (2.0 * kPi / nt);
        }
    }
    return total;
}

}  // namespace

TEST_CASE("area: flat disk, hyperbolic geodesic disk, single triangle") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto disk = make_disk(1.0, 24, 64);
    CHECK(area(disk, e3) == doctest::Approx(kPi).epsilon(0.01));

    // Chart disk of radius 1/2 in the ball model is the geodesic disk of
    // radius ln 3; its area is 2 pi (cosh(ln 3) - 1) = 4 pi / 3.
    const auto ball = ConformalAmbient::hyperbolic_ball();
    const auto half_disk = make_disk(0.5, 24, 64);
    const double closed_form = 4.0 * kPi / 3.0;
    CHECK(disk_area_quadrature(ball, 0.5) == doctest::Approx(closed_form).epsilon(1e-4));
    CHECK(area(half_disk, ball) == doctest::Approx(closed_form).epsilon(0.02));

    const auto tri = ImmersedMesh::create({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    CHECK(area(tri, e3) == doctest::Approx(0.5));
}

TEST_CASE("boundary_length: disk, hyperbolic circle, annulus additivity") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto ball = ConformalAmbient::hyperbolic_ball();

    CHECK(boundary_length(make_disk(1.0, 16, 64), e3) == doctest::Approx(2.0 * kPi).epsilon(0.01));
    // Hyperbolic circle of radius ln 3: circumference 2 pi sinh(ln 3) = 8 pi / 3.
    CHECK(boundary_length(make_disk(0.5, 16, 64), ball) ==
          doctest::Approx(8.0 * kPi / 3.0).epsilon(0.01));

    const auto annulus = make_annulus(0.5, 1.0, 8, 64);
    const double inner = curve_length(e3, [] {
        std::vector<Vec3> pts;
        for (int k = 0; k < 64; ++k) {
            const double t = 2.0 * kPi * k / 64;
            pts.push_back({0.5 * std::cos(t), 0.5 * std::sin(t), 0.0});
        }
        return pts;
    }(), {2, true});
    const double outer = inner * 2.0;
    CHECK(boundary_length(annulus, e3) == doctest::Approx(inner + outer).epsilon(1e-9));
}

TEST_CASE("mean curvature: sphere, plane, cylinder oracles") {
    // Icosphere, 4 subdivisions: |H_delta| = 2 within 1% at every vertex,
    // pointing inward.
    const auto sphere = make_icosphere(4);
    const auto field = mean_curvature_delta(sphere);
    for (int v = 0; v < sphere.vertex_count(); ++v) {
        const double h = norm(field.H_delta[v]);
        CHECK(h == doctest::Approx(2.0).epsilon(0.01));
        CHECK(dot(field.H_delta[v], sphere.position(v)) < 0.0);  // inward
    }

    const auto disk = make_disk(1.0, 12, 48);
    const auto dfield = mean_curvature_delta(disk);
    for (int v = 0; v < disk.vertex_count(); ++v) {
        if (disk.is_boundary_vertex(v)) continue;
        CHECK(norm(dfield.H_delta[v]) < 1e-8);
    }

    const auto cyl = make_cylinder_band(1.0, 2.0, 64, 24);
    const auto cfield = mean_curvature_delta(cyl);
    for (int v = 0; v < cyl.vertex_count(); ++v) {
        if (cyl.is_boundary_vertex(v)) continue;
        if (std::abs(cyl.position(v).z) > 0.5) continue;  // away from the boundary
        CHECK(norm(cfield.H_delta[v]) == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("normals are unit and mixed areas tile the total area") {
    for (const auto& mesh : {make_disk(1.0, 10, 40, 0.2, 5), make_icosphere(3),
                             make_cylinder_band(1.0, 1.5, 32, 10)}) {
        const auto field = mean_curvature_delta(mesh);
        double mixed_total = 0.0, face_total = 0.0;
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            CHECK(std::abs(norm(field.normals[v]) - 1.0) <= 1e-12);
            mixed_total += field.mixed_areas[v];
        }
        for (int f = 0; f < mesh.face_count(); ++f) face_total += mesh.face_area(f);
        CHECK(mixed_total == doctest::Approx(face_total).epsilon(1e-9));
    }
}

TEST_CASE("total mean curvature oracles") {
    // Unit sphere in the s3 chart: H_delta = -2 n and 2 (Dphi)^perp = -2 n
    // cancel (the equatorial great sphere is minimal).
    const auto s3 = ConformalAmbient::sphere_stereographic();
    CHECK(total_mean_curvature(make_icosphere(5), s3) <= 0.05);

    // Horosphere z = 1 in the half-space model: |H|_g = 2 pointwise.
    const auto h3h = ConformalAmbient::hyperbolic_half_space();
    const auto patch = make_plane_patch(0.5, 24, 1.0);
    const auto field = curvature_field(patch, h3h);
    for (int v = 0; v < patch.vertex_count(); ++v) {
        if (patch.is_boundary_vertex(v)) continue;
        CHECK(field.H_conf_norm[v] == doctest::Approx(2.0).epsilon(0.02));
    }

    CHECK(total_mean_curvature(make_disk(1.0, 12, 48), ConformalAmbient::euclidean()) <= 1e-6);
}

TEST_CASE("constant conformal factor scales the total mean curvature by e^c") {
    const double c = 0.37;
    const auto shifted = ConformalAmbient::custom(
        [c](const Vec3&) { return c; }, [](const Vec3&) { return Vec3{}; }, 0.0,
        std::numeric_limits<double>::infinity(), nullptr, {});
    const auto mesh = make_disk(1.0, 10, 40, 0.25, 11);
    const double base = total_mean_curvature(mesh, ConformalAmbient::euclidean());
    const double scaled = total_mean_curvature(mesh, shifted);
    CHECK(scaled == doctest::Approx(std::exp(c) * base).epsilon(1e-9));
}

TEST_CASE("euclidean area is rigid-motion invariant") {
    const auto mesh = make_disk(1.0, 10, 40, 0.25, 13);
    const double base = area(mesh, ConformalAmbient::euclidean());
    // Rotate about z by a fixed angle and translate.
    const double ct = std::cos(0.7), st = std::sin(0.7);
    std::vector<Vec3> moved;
    for (const Vec3& p : mesh.positions())
        moved.push_back({ct * p.x - st * p.y + 3.0, st * p.x + ct * p.y - 1.0, p.z + 5.0});
    const auto rotated = mesh.with_positions(std::move(moved));
    CHECK(area(rotated, ConformalAmbient::euclidean()) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("refinement halves the edge length and quarters the deficits") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto coarse = make_disk(1.0, 8, 24);
    const auto fine = make_disk(1.0, 16, 48);
    const double area_ratio = (kPi - area(coarse, e3)) / (kPi - area(fine, e3));
    CHECK(area_ratio >= 2.5);
    CHECK(area_ratio <= 6.0);
    const double len_ratio = (2.0 * kPi - boundary_length(coarse, e3)) /
                             (2.0 * kPi - boundary_length(fine, e3));
    CHECK(len_ratio >= 2.5);
    CHECK(len_ratio <= 6.0);
}

TEST_CASE("domain violations surface as domain errors") {
    const auto ball = ConformalAmbient::hyperbolic_ball();
    const auto big = make_disk(1.5, 4, 16);  // pokes outside |p| < 1
    CHECK_THROWS_AS(area(big, ball), Error);
    CHECK_THROWS_AS(total_mean_curvature(big, ball), Error);
}

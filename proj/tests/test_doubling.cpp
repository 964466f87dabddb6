#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confdiam/curvature.hpp"
#include "confdiam/doubling.hpp"
#include "confdiam/error.hpp"
#include "confdiam/generators.hpp"

using namespace confdiam;

namespace {

constexpr double kPi = 3.14159265358979323846;

double tube_area(const DoubledMesh& dbl, const ConformalAmbient& a) {
    double total = 0.0;
    for (int f = 0; f < dbl.mesh.face_count(); ++f) {
        if (!dbl.tube_face[f]) continue;
        const double factor = a.conformal_factor(dbl.mesh.face_centroid(f));
        total += factor * factor * dbl.mesh.face_area(f);
    }
    return total;
}

}  // namespace

TEST_CASE("teardrop: total turning by construction and by quadrature") {
    const auto drop1 = make_teardrop(0.1, 1024);
    CHECK(drop1.total_abs_turn == doctest::Approx(kPi + 0.4).epsilon(1e-12));
    CHECK(total_abs_curvature(drop1) == doctest::Approx(kPi + 0.4).epsilon(1e-6));

    const auto drop2 = make_teardrop(0.01, 1024);
    CHECK(total_abs_curvature(drop2) == doctest::Approx(kPi + 0.04).epsilon(1e-6));
    // Closure residual of the shooting solve.
    const auto& first = drop2.samples.front();
    const auto& last = drop2.samples.back();
    CHECK(std::hypot(first.x - last.x, first.y - last.y) <= 1e-9 * drop2.length);

    // Quadrature matches the analytic pi + 4 eta within 1e-4 over the family.
    for (double eta : {0.02, 0.07, 0.3}) {
        const auto d = make_teardrop(eta, 512);
        CHECK(std::abs(total_abs_curvature(d) - (kPi + 4.0 * eta)) <= 1e-4);
    }

    CHECK_THROWS_AS(make_teardrop(0.0, 1024), Error);
    CHECK_THROWS_AS(make_teardrop(1.0, 1024), Error);
    CHECK_THROWS_AS(make_teardrop(0.1, 16), Error);
}

TEST_CASE("teardrop invariants: unit speed, end tangents, turning number") {
    const auto drop = make_teardrop(0.05, 2048);
    for (const auto& s : drop.samples)
        CHECK(std::abs(std::hypot(s.tx, s.ty) - 1.0) <= 1e-9);
    CHECK(drop.samples.front().tx == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(drop.samples.front().ty) <= 1e-6);
    CHECK(drop.samples.back().tx == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(std::abs(drop.samples.back().ty) <= 1e-6);

    // Signed turning of the smooth part is pi; |K| >= |signed turning|.
    double signed_turn = 0.0;
    for (size_t i = 0; i + 1 < drop.samples.size(); ++i) {
        const double ds = drop.samples[i + 1].s - drop.samples[i].s;
        signed_turn += 0.5 * (drop.samples[i].kappa + drop.samples[i + 1].kappa) * ds;
    }
    CHECK(signed_turn == doctest::Approx(kPi).epsilon(1e-3));
    CHECK(total_abs_curvature(drop) >= kPi - 1e-3);
    // The family never dips below pi.
    for (double eta : {0.01, 0.1, 0.5}) CHECK(make_teardrop(eta, 256).total_abs_turn > kPi);
}

TEST_CASE("curvature quadrature helpers: circle and semicircle") {
    CHECK(total_abs_curvature(make_circle_curve(0.7, 4096)) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-4));
    CHECK(total_abs_curvature(make_semicircle_arc(2.0, 4096)) ==
          doctest::Approx(kPi).epsilon(1e-4));
}

TEST_CASE("boundary frames: disk radial, annulus orientation, hemisphere tangency") {
    const auto disk = make_disk(1.0, 12, 48);
    const auto dframes = boundary_frames(disk);
    REQUIRE(dframes.size() == 1);
    const double max_angle = 2.0 * kPi / 180.0;
    for (const auto& fr : dframes[0]) {
        const Vec3 p = disk.position(fr.vertex);
        const Vec3 radial = normalized({p.x, p.y, 0.0});
        CHECK(std::acos(std::clamp(dot(fr.e2, radial), -1.0, 1.0)) <= max_angle);
        // Orthonormal, right-handed.
        CHECK(std::abs(dot(fr.e1, fr.e2)) <= 1e-9);
        CHECK(std::abs(dot(fr.e1, fr.e3)) <= 1e-9);
        CHECK(std::abs(dot(fr.e2, fr.e3)) <= 1e-9);
        CHECK(dot(cross(fr.e1, fr.e2), fr.e3) == doctest::Approx(1.0).epsilon(1e-9));
    }

    const auto annulus = make_annulus(0.5, 1.0, 8, 48);
    for (const auto& loop : boundary_frames(annulus)) {
        for (const auto& fr : loop) {
            const Vec3 p = annulus.position(fr.vertex);
            const Vec3 radial = normalized({p.x, p.y, 0.0});
            const bool outer = norm(p) > 0.75;
            // Outer loop conormal points away from the axis, inner loop toward it.
            const double d = dot(fr.e2, radial);
            CHECK((outer ? d : -d) > 0.9);
        }
    }

    const auto hemi = make_hemisphere(32, 64);
    const auto hframes = boundary_frames(hemi);
    for (const auto& fr : hframes[0]) {
        const Vec3 n_true = normalized(hemi.position(fr.vertex));
        CHECK(std::abs(dot(fr.e2, n_true)) <= std::sin(max_angle));
    }

    // Single triangle: every boundary vertex lacks an interior neighbour.
    const auto tri = ImmersedMesh::create({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    CHECK_THROWS_AS(boundary_frames(tri), Error);
    CHECK_THROWS_AS(boundary_frames(make_icosphere(2)), Error);
}

TEST_CASE("build_double: disk doubles to a sphere, annulus to a torus") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto drop = make_teardrop(0.05, 1024);

    const auto disk = make_disk(1.0, 10, 32);
    const auto dbl = build_double(disk, e3, 0.03, drop, 64);
    CHECK(dbl.mesh.is_closed());
    CHECK(dbl.mesh.connected());
    CHECK(dbl.mesh.euler_characteristic() == 2);
    CHECK(dbl.sigma_vertex_count == disk.vertex_count());
    // Copy A occupies the leading indices with identical positions.
    for (int v = 0; v < disk.vertex_count(); ++v)
        CHECK(distance(dbl.mesh.position(v), disk.position(v)) == 0.0);

    const auto annulus = make_annulus(0.5, 1.0, 6, 32);
    const auto dbl2 = build_double(annulus, e3, 0.03, drop, 64);
    CHECK(dbl2.mesh.is_closed());
    CHECK(dbl2.mesh.euler_characteristic() == 0);

    CHECK_THROWS_AS(build_double(disk, e3, -0.1, drop, 64), Error);
    CHECK_THROWS_AS(build_double(disk, e3, 0.03, drop, 4), Error);
    CHECK_THROWS_AS(build_double(disk, e3, 0.03, make_circle_curve(1.0, 256), 64), Error);
    CHECK_THROWS_AS(build_double(make_icosphere(2), e3, 0.03, drop, 64), Error);

    // Tube vertices must stay inside the chart: a disk close to the ball
    // boundary with a fat tube escapes.
    const auto ball = ConformalAmbient::hyperbolic_ball();
    const auto big = make_disk(0.9, 8, 32);
    CHECK_THROWS_AS(build_double(big, ball, 0.2, drop, 64), Error);
}

TEST_CASE("build_double: area additivity and the vanishing tube") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto disk = make_disk(1.0, 10, 32);
    const auto drop = make_teardrop(0.05, 1024);
    const double sigma_area = area(disk, e3);
    const double bl = boundary_length(disk, e3);
    for (double eps : {0.05, 0.025}) {
        const auto dbl = build_double(disk, e3, eps, drop, 64);
        const double t_area = tube_area(dbl, e3);
        CHECK(area(dbl.mesh, e3) ==
              doctest::Approx(2.0 * sigma_area + t_area).epsilon(1e-12));
        // |T_eps| <= c eps l(boundary) with c ~ the drop length (2.16 here).
        CHECK(t_area <= 3.0 * eps * bl);
    }
}

TEST_CASE("tube integral approaches K(z) * boundary length at first order") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto disk = make_disk(1.0, 16, 48);
    const auto drop = make_teardrop(0.05, 2048);
    const double reference = total_abs_curvature(drop) * boundary_length(disk, e3);

    const auto at = [&](double eps) {
        const auto dbl = build_double(disk, e3, eps, drop, 144);
        return tube_mean_curvature_integral(dbl, e3);
    };
    const double t02 = at(0.02);
    CHECK(std::abs(t02 - reference) <= 0.10 * reference);

    const double e08 = std::abs(at(0.08) - reference);
    const double e04 = std::abs(at(0.04) - reference);
    const double ratio = e08 / e04;
    CHECK(ratio >= 1.4);
    CHECK(ratio <= 3.0);
}

TEST_CASE("tube integral in the hyperbolic ball") {
    const auto ball = ConformalAmbient::hyperbolic_ball();
    const auto disk = make_disk(0.5, 16, 48);
    const auto drop = make_teardrop(0.05, 2048);
    // l(boundary) ~ 8 pi / 3 for the geodesic circle of radius ln 3.
    const double reference = total_abs_curvature(drop) * boundary_length(disk, ball);
    const auto dbl = build_double(disk, ball, 0.02, drop, 144);
    CHECK(tube_mean_curvature_integral(dbl, ball) ==
          doctest::Approx(reference).epsilon(0.10));
}

TEST_CASE("convergence study rows: decreasing error, monotone diameters, closed-surface bound") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto disk = make_disk(1.0, 10, 32);
    const auto drop = make_teardrop(0.05, 1024);
    ConvergenceOptions opts;
    opts.s_res = 96;
    const std::vector<double> eps{0.06, 0.03};
    const auto rows = convergence_study(disk, e3, drop, eps, opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].abs_error > rows[1].abs_error);
    for (const auto& r : rows) {
        CHECK(r.monotone_ok);
        CHECK(r.d_sigma <= r.d_m_eps + 1e-9);
        CHECK(r.diam_bound_ok);
        CHECK(r.wz.applicable);
        CHECK(r.wz.margin >= 0.0);
    }
    CHECK_THROWS_AS(convergence_study(disk, e3, drop, std::vector<double>{0.03, 0.06}, opts),
                    Error);
}

TEST_CASE("doubling monotonicity on built doubles") {
    const auto e3 = ConformalAmbient::euclidean();
    const auto drop = make_teardrop(0.05, 1024);
    const auto disk = make_disk(1.0, 8, 24);
    const auto dbl = build_double(disk, e3, 0.04, drop, 64);
    CHECK(doubling_monotonicity_check(disk, dbl.mesh, e3));

    const auto ball = ConformalAmbient::hyperbolic_ball();
    const auto annulus = make_annulus(0.25, 0.5, 6, 24);
    const auto dbl2 = build_double(annulus, ball, 0.02, drop, 64);
    CHECK(doubling_monotonicity_check(annulus, dbl2.mesh, ball));
}

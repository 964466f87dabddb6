#include "confdiam/generators.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <random>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Platform-independent uniform in [-1, 1] (distributions in <random> are not
// pinned by the standard; outputs must be reproducible from the seed alone).
double unit_uniform(std::mt19937_64& gen) {
    return std::ldexp(static_cast<double>(gen() >> 11), -52) - 1.0;
}

// Shared polar-cap builder: a center vertex plus `rings` concentric circles
// of `sectors` vertices, with positions supplied by the callback.
template <typename PositionFn>
ImmersedMesh polar_mesh(int rings, int sectors, PositionFn&& position) {
    if (rings < 1 || sectors < 3) fail(Errc::invalid_input, "polar mesh: rings >= 1, sectors >= 3");
    std::vector<Vec3> pos;
    pos.reserve(1 + static_cast<size_t>(rings) * sectors);
    pos.push_back(position(0, 0));
    for (int j = 1; j <= rings; ++j)
        for (int k = 0; k < sectors; ++k) pos.push_back(position(j, k));

    auto vid = [&](int j, int k) { return j == 0 ? 0 : 1 + (j - 1) * sectors + (k % sectors); };
    std::vector<std::array<int, 3>> faces;
    for (int k = 0; k < sectors; ++k) faces.push_back({0, vid(1, k), vid(1, k + 1)});
    for (int j = 1; j < rings; ++j) {
        for (int k = 0; k < sectors; ++k) {
            faces.push_back({vid(j, k), vid(j + 1, k), vid(j + 1, k + 1)});
            faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j, k + 1)});
        }
    }
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

ImmersedMesh cap_mesh(const Vec3& axis, double theta_max, int rings, int sectors) {
    const Vec3 d = normalized(axis);
    Vec3 u = std::abs(d.z) < 0.9 ? cross(Vec3{0, 0, 1}, d) : cross(Vec3{1, 0, 0}, d);
    u = normalized(u);
    const Vec3 v = cross(d, u);
    return polar_mesh(rings, sectors, [&](int j, int k) {
        const double theta = theta_max * j / rings;
        const double phi = 2.0 * kPi * k / sectors;
        return d * std::cos(theta) + (u * std::cos(phi) + v * std::sin(phi)) * std::sin(theta);
    });
}

}  // namespace

ImmersedMesh make_disk(double radius, int rings, int sectors, double bump, std::uint64_t seed) {
    if (!(radius > 0.0)) fail(Errc::invalid_input, "make_disk: radius > 0");
    double a[4], ph[4];
    {
        std::mt19937_64 gen(seed);
        for (int m = 0; m < 4; ++m) a[m] = unit_uniform(gen);
        for (int m = 0; m < 4; ++m) ph[m] = kPi * (unit_uniform(gen) + 1.0);
    }
    return polar_mesh(rings, sectors, [&](int j, int k) {
        const double rho = static_cast<double>(j) / rings;
        const double theta = 2.0 * kPi * k / sectors;
        Vec3 p{radius * rho * std::cos(theta), radius * rho * std::sin(theta), 0.0};
        if (bump != 0.0 && j < rings) {
            double h = a[0] * std::sin(kPi * rho);
            double rm = rho;
            for (int m = 1; m <= 3; ++m, rm *= rho) h += a[m] * rm * std::cos(m * theta + ph[m]);
            p.z = bump * (1.0 - rho * rho) * h;
        }
        return p;
    });
}

ImmersedMesh make_annulus(double r_inner, double r_outer, int rings, int sectors) {
    if (!(0.0 < r_inner && r_inner < r_outer))
        fail(Errc::invalid_input, "make_annulus: need 0 < r_inner < r_outer");
    if (rings < 1 || sectors < 3) fail(Errc::invalid_input, "make_annulus: rings >= 1, sectors >= 3");
    std::vector<Vec3> pos;
    for (int j = 0; j <= rings; ++j) {
        const double r = r_inner + (r_outer - r_inner) * j / rings;
        for (int k = 0; k < sectors; ++k) {
            const double theta = 2.0 * kPi * k / sectors;
            pos.push_back({r * std::cos(theta), r * std::sin(theta), 0.0});
        }
    }
    auto vid = [&](int j, int k) { return j * sectors + (k % sectors); };
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < rings; ++j) {
        for (int k = 0; k < sectors; ++k) {
            faces.push_back({vid(j, k), vid(j + 1, k), vid(j + 1, k + 1)});
            faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j, k + 1)});
        }
    }
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

ImmersedMesh make_icosphere(int subdivisions, double radius) {
    if (subdivisions < 0 || subdivisions > 8)
        fail(Errc::invalid_input, "make_icosphere: subdivisions in [0, 8]");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> pos = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
    };
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };
    for (Vec3& p : pos) p = normalized(p) * radius;

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            const auto key = std::minmax(i, j);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int id = static_cast<int>(pos.size());
            pos.push_back(normalized((pos[i] + pos[j]) * 0.5) * radius);
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int m01 = mid(f[0], f[1]), m12 = mid(f[1], f[2]), m20 = mid(f[2], f[0]);
            next.push_back({f[0], m01, m20});
            next.push_back({f[1], m12, m01});
            next.push_back({f[2], m20, m12});
            next.push_back({m01, m12, m20});
        }
        faces = std::move(next);
    }
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

ImmersedMesh make_uv_sphere(int sectors, int stacks, double radius) {
    if (sectors < 3 || stacks < 2) fail(Errc::invalid_input, "make_uv_sphere: sectors >= 3, stacks >= 2");
    std::vector<Vec3> pos;
    pos.push_back({0, 0, radius});
    for (int j = 1; j < stacks; ++j) {
        const double phi = kPi * j / stacks;
        for (int k = 0; k < sectors; ++k) {
            const double theta = 2.0 * kPi * k / sectors;
            pos.push_back({radius * std::sin(phi) * std::cos(theta),
                           radius * std::sin(phi) * std::sin(theta), radius * std::cos(phi)});
        }
    }
    pos.push_back({0, 0, -radius});
    const int south = static_cast<int>(pos.size()) - 1;
    auto vid = [&](int j, int k) { return 1 + (j - 1) * sectors + (k % sectors); };

    std::vector<std::array<int, 3>> faces;
    for (int k = 0; k < sectors; ++k) faces.push_back({0, vid(1, k), vid(1, k + 1)});
    for (int j = 1; j + 1 < stacks; ++j) {
        for (int k = 0; k < sectors; ++k) {
            faces.push_back({vid(j, k), vid(j + 1, k), vid(j + 1, k + 1)});
            faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j, k + 1)});
        }
    }
    for (int k = 0; k < sectors; ++k) faces.push_back({south, vid(stacks - 1, k + 1), vid(stacks - 1, k)});
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

ImmersedMesh make_spherical_cap(double theta_max, int rings, int sectors) {
    if (!(theta_max > 0.0 && theta_max < kPi))
        fail(Errc::invalid_input, "make_spherical_cap: theta_max in (0, pi)");
    return cap_mesh({1, 0, 0}, theta_max, rings, sectors);
}

ImmersedMesh make_hemisphere(int rings, int sectors) {
    return cap_mesh({0, 0, 1}, kPi / 2.0, rings, sectors);
}

ImmersedMesh make_cylinder_band(double radius, double height, int sectors, int stacks) {
    if (!(radius > 0.0 && height > 0.0))
        fail(Errc::invalid_input, "make_cylinder_band: radius, height > 0");
    if (sectors < 3 || stacks < 1)
        fail(Errc::invalid_input, "make_cylinder_band: sectors >= 3, stacks >= 1");
    std::vector<Vec3> pos;
    for (int j = 0; j <= stacks; ++j) {
        const double z = -0.5 * height + height * j / stacks;
        for (int k = 0; k < sectors; ++k) {
            const double theta = 2.0 * kPi * k / sectors;
            pos.push_back({radius * std::cos(theta), radius * std::sin(theta), z});
        }
    }
    auto vid = [&](int j, int k) { return j * sectors + (k % sectors); };
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < stacks; ++j) {
        for (int k = 0; k < sectors; ++k) {
            faces.push_back({vid(j, k), vid(j, k + 1), vid(j + 1, k + 1)});
            faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j + 1, k)});
        }
    }
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

ImmersedMesh make_plane_patch(double half_width, int n, double z0) {
    if (!(half_width > 0.0) || n < 1) fail(Errc::invalid_input, "make_plane_patch: bad input");
    std::vector<Vec3> pos;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            pos.push_back({-half_width + 2.0 * half_width * i / n,
                           -half_width + 2.0 * half_width * j / n, z0});
    auto vid = [&](int j, int i) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            faces.push_back({vid(j, i), vid(j, i + 1), vid(j + 1, i + 1)});
            faces.push_back({vid(j, i), vid(j + 1, i + 1), vid(j + 1, i)});
        }
    }
    return ImmersedMesh::create(std::move(pos), std::move(faces));
}

std::vector<NamedCurve> make_circle_pair(double radius, double separation, int points) {
    if (!(radius > 0.0) || points < 3) fail(Errc::invalid_input, "make_circle_pair: bad input");
    std::vector<NamedCurve> out(2);
    out[0].name = "lower";
    out[1].name = "upper";
    for (int k = 0; k < points; ++k) {
        const double theta = 2.0 * kPi * k / points;
        const double x = radius * std::cos(theta), y = radius * std::sin(theta);
        out[0].points.push_back({x, y, -0.5 * separation});
        out[1].points.push_back({x, y, +0.5 * separation});
    }
    return out;
}

}  // namespace confdiam

#include "confdiam/curvature.hpp"

#include <cmath>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

struct VertexScratch {
    Vec3 normal;
    Vec3 cot_sum;      // sum of (cot a + cot b)(p_j - p_v) over the star
    double mixed_area;
    bool fallback;
};

// Per-vertex curvature kernel. Everything is gathered from the star, so the
// computation is independent per vertex and the OpenMP schedule cannot change
// the arithmetic.
VertexScratch vertex_kernel(const ImmersedMesh& mesh, int v) {
    VertexScratch out{{0, 0, 0}, {0, 0, 0}, 0.0, false};
    const Vec3& pv = mesh.position(v);

    for (int f : mesh.faces_around(v)) {
        const auto& tri = mesh.face(f);
        int rot = 0;
        while (tri[rot] != v) ++rot;
        const Vec3& pa = mesh.position(tri[(rot + 1) % 3]);
        const Vec3& pb = mesh.position(tri[(rot + 2) % 3]);

        const Vec3 e_va = pa - pv, e_vb = pb - pv, e_ab = pb - pa;
        const Vec3 n = cross(e_va, e_vb);
        const double twice_area = norm(n);
        const double area = 0.5 * twice_area;

        const double angle_v = std::atan2(twice_area, dot(e_va, e_vb));
        out.normal += n * (angle_v / std::max(twice_area, 1e-300));

        const double longest2 =
            std::max({norm2(e_va), norm2(e_vb), norm2(e_ab)});
        if (area < 1e-10 * longest2) {
            // Sliver star: cotangents blow up, fall back to barycentric thirds.
            out.mixed_area += area / 3.0;
            out.fallback = true;
            continue;
        }

        const double dot_a = dot(pv - pa, pb - pa);  // angle at a, opposite edge (v,b)
        const double dot_b = dot(pv - pb, pa - pb);  // angle at b, opposite edge (v,a)
        const double dot_v = dot(e_va, e_vb);
        const double cot_a = dot_a / twice_area;
        const double cot_b = dot_b / twice_area;

        out.cot_sum += e_vb * cot_a + e_va * cot_b;

        // Meyer mixed area: Voronoi for non-obtuse triangles, else the
        // half/quarter split keyed on where the obtuse angle sits.
        if (dot_v < 0.0)
            out.mixed_area += area / 2.0;
        else if (dot_a < 0.0 || dot_b < 0.0)
            out.mixed_area += area / 4.0;
        else
            out.mixed_area += (norm2(e_vb) * cot_a + norm2(e_va) * cot_b) / 8.0;
    }
    out.normal = normalized(out.normal);
    return out;
}

}  // namespace

CurvatureField curvature_field(const ImmersedMesh& mesh, const ConformalAmbient& a, Exec exec) {
    mesh.require_inside(a);
    const int nv = mesh.vertex_count();
    CurvatureField field;
    field.H_delta.assign(nv, Vec3{});
    field.H_conf_norm.assign(nv, 0.0);
    field.normals.assign(nv, Vec3{});
    field.mixed_areas.assign(nv, 0.0);

    std::vector<char> fallback(nv, 0);

    auto body = [&](int v) {
        const VertexScratch s = vertex_kernel(mesh, v);
        field.normals[v] = s.normal;
        field.mixed_areas[v] = s.mixed_area;
        fallback[v] = s.fallback ? 1 : 0;
        if (mesh.is_boundary_vertex(v)) return;  // operator undefined there

        const Vec3 H = s.cot_sum / (2.0 * s.mixed_area);
        field.H_delta[v] = H;
        const Vec3& p = mesh.position(v);
        const Vec3 grad = a.grad_phi(p);
        const Vec3 normal_part = field.normals[v] * dot(grad, field.normals[v]);
        field.H_conf_norm[v] = std::exp(-a.phi(p)) * norm(H - normal_part * 2.0);
    };

    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
        for (int v = 0; v < nv; ++v) body(v);
    } else {
        for (int v = 0; v < nv; ++v) body(v);
    }

    for (char fb : fallback)
        if (fb) field.barycentric_fallback = true;
    return field;
}

CurvatureField mean_curvature_delta(const ImmersedMesh& mesh, Exec exec) {
    return curvature_field(mesh, ConformalAmbient::euclidean(), exec);
}

double area(const ImmersedMesh& mesh, const ConformalAmbient& a) {
    mesh.require_inside(a);
    double total = 0.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const double factor = a.conformal_factor(mesh.face_centroid(f));
        total += factor * factor * mesh.face_area(f);
    }
    return total;
}

double boundary_length(const ImmersedMesh& mesh, const ConformalAmbient& a, int quad_order) {
    mesh.require_inside(a);
    double total = 0.0;
    CurveLengthOptions opts;
    opts.quad_order = quad_order;
    opts.closed = true;
    for (const auto& loop : mesh.boundary_loops()) {
        std::vector<Vec3> pts;
        pts.reserve(loop.size());
        for (int v : loop) pts.push_back(mesh.position(v));
        total += curve_length(a, pts, opts);
    }
    return total;
}

double total_mean_curvature_weighted(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                     std::span<const double> vertex_weight, Exec exec) {
    if (!vertex_weight.empty() && static_cast<int>(vertex_weight.size()) != mesh.vertex_count())
        fail(Errc::invalid_input, "vertex weight size mismatch");
    const CurvatureField field = curvature_field(mesh, a, exec);

    // |H|_g dmu = e^{phi} |H_delta - 2 (Dphi)^perp|_delta dmu_delta; the field
    // already holds e^{-phi} times the norm, so multiply by e^{2 phi}.
    double total = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.is_boundary_vertex(v)) continue;
        const double w = vertex_weight.empty() ? 1.0 : vertex_weight[v];
        if (w == 0.0) continue;
        const double factor = a.conformal_factor(mesh.position(v));
        total += w * field.H_conf_norm[v] * factor * factor * field.mixed_areas[v];
    }
    return total;
}

double total_mean_curvature(const ImmersedMesh& mesh, const ConformalAmbient& a, Exec exec) {
    return total_mean_curvature_weighted(mesh, a, {}, exec);
}

}  // namespace confdiam

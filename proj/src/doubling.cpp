#include "confdiam/doubling.hpp"

#include <algorithm>
#include <cmath>

#include "confdiam/curvature.hpp"
#include "confdiam/error.hpp"

namespace confdiam {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Piecewise description of the teardrop: lead-out segment, left arc of
// turning pi + 2 eta, slant segment, right arc of turning 2 eta back into the
// origin. kappa is +-1/R on the arcs and 0 on the segments.
struct DropPieces {
    double eta, R;
    double lead, slant;  // the two shooting unknowns
    double phi1() const { return kPi + 2.0 * eta; }

    double len(int piece) const {
        switch (piece) {
            case 0: return lead;
            case 1: return R * phi1();
            case 2: return slant;
            default: return R * 2.0 * eta;
        }
    }
    double total() const { return len(0) + len(1) + len(2) + len(3); }
    double kappa(int piece) const {
        return piece == 1 ? 1.0 / R : (piece == 3 ? -1.0 / R : 0.0);
    }

    // Position and tangent at arclength s via forward evaluation of the pieces.
    void eval(double s, double& x, double& y, double& tx, double& ty) const {
        const double a = lead, c = slant, f1 = phi1();
        if (s <= a) {
            x = s; y = 0.0; tx = 1.0; ty = 0.0;
            return;
        }
        s -= a;
        if (s <= R * f1) {
            const double t = s / R;
            x = a + R * std::sin(t);
            y = R * (1.0 - std::cos(t));
            tx = std::cos(t); ty = std::sin(t);
            return;
        }
        s -= R * f1;
        const double dx = std::cos(f1), dy = std::sin(f1);
        const double px = a + R * std::sin(f1), py = R * (1.0 - std::cos(f1));
        if (s <= c) {
            x = px + s * dx; y = py + s * dy;
            tx = dx; ty = dy;
            return;
        }
        s -= c;
        const double qx = px + c * dx, qy = py + c * dy;
        const double theta = f1 - s / R;  // heading decreases on the right turn
        x = qx + R * (std::sin(f1) - std::sin(theta));
        y = qy + R * (std::cos(theta) - std::cos(f1));
        tx = std::cos(theta); ty = std::sin(theta);
    }

    void endpoint(double& x, double& y) const {
        double tx, ty;
        eval(total(), x, y, tx, ty);
    }
};

void resample(const DropPieces& d, int n_samples, TeardropCurve& out) {
    const double b = d.total();
    out.length = b;
    out.total_abs_turn = kPi + 4.0 * d.eta;
    out.breakpoints = {0.0, d.len(0), d.len(0) + d.len(1), d.len(0) + d.len(1) + d.len(2), b};

    // Uniform grid plus the interior breakpoints; at a breakpoint two samples
    // share the arclength and carry the left/right curvature so trapezoid
    // quadrature of |kappa| stays exact on the constant pieces.
    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i) grid[i] = b * i / (n_samples - 1);
    for (int k = 1; k <= 3; ++k) grid.push_back(out.breakpoints[k]);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [&](double u, double v) { return std::abs(u - v) < 1e-15 * b; }),
               grid.end());

    auto piece_of = [&](double s, bool left) {
        for (int k = 1; k <= 3; ++k) {
            const double bp = out.breakpoints[k];
            if (std::abs(s - bp) < 1e-14 * b) return left ? k - 1 : k;
        }
        for (int k = 0; k < 4; ++k)
            if (s <= out.breakpoints[k + 1]) return k;
        return 3;
    };

    out.samples.clear();
    out.samples.reserve(grid.size() + 3);
    for (double s : grid) {
        double x, y, tx, ty;
        d.eval(s, x, y, tx, ty);
        const bool is_break =
            std::abs(s - out.breakpoints[1]) < 1e-14 * b ||
            std::abs(s - out.breakpoints[2]) < 1e-14 * b ||
            std::abs(s - out.breakpoints[3]) < 1e-14 * b;
        if (is_break) {
            out.samples.push_back({s, x, y, tx, ty, d.kappa(piece_of(s, true))});
            out.samples.push_back({s, x, y, tx, ty, d.kappa(piece_of(s, false))});
        } else {
            out.samples.push_back({s, x, y, tx, ty, d.kappa(piece_of(s, false))});
        }
    }
}

}  // namespace

void TeardropCurve::eval(double s, double& x, double& y) const {
    s = std::clamp(s, 0.0, length);
    size_t lo = 0, hi = samples.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        (samples[mid].s <= s ? lo : hi) = mid;
    }
    const CurveSample& p = samples[lo];
    const CurveSample& q = samples[hi];
    const double ds = q.s - p.s;
    const double t = ds > 0.0 ? (s - p.s) / ds : 0.0;
    x = p.x + t * (q.x - p.x);
    y = p.y + t * (q.y - p.y);
}

TeardropCurve make_teardrop(double eta, int n_samples) {
    if (!(eta > 0.0 && eta < kPi / 4.0))
        fail(Errc::invalid_input, "make_teardrop: eta must lie in (0, pi/4)");
    if (n_samples < 64) fail(Errc::invalid_input, "make_teardrop: n_samples >= 64");

    DropPieces d;
    d.eta = eta;
    d.R = 0.5 * std::sin(2.0 * eta);  // normalizes the lead-out near unit length
    d.lead = 1.0;
    d.slant = 1.0;

    // Shooting on the closure residual z(b) - z(0) over (lead, slant).
    const double scale = 1.0 + d.R * (kPi + 4.0 * eta);
    bool converged = false;
    for (int iter = 0; iter < 50; ++iter) {
        double rx, ry;
        d.endpoint(rx, ry);
        if (std::hypot(rx, ry) <= 1e-12 * scale) {
            converged = true;
            break;
        }
        const double h = 1e-7 * scale;
        DropPieces da = d, dc = d;
        da.lead += h;
        dc.slant += h;
        double ax, ay, cx, cy;
        da.endpoint(ax, ay);
        dc.endpoint(cx, cy);
        const double j00 = (ax - rx) / h, j01 = (cx - rx) / h;
        const double j10 = (ay - ry) / h, j11 = (cy - ry) / h;
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) break;
        double step_lead = (-rx * j11 + ry * j01) / det;
        double step_slant = (-ry * j00 + rx * j10) / det;
        // Keep the segment lengths positive; halve the step if needed.
        double damp = 1.0;
        while ((d.lead + damp * step_lead <= 0.0 || d.slant + damp * step_slant <= 0.0) &&
               damp > 1e-6)
            damp *= 0.5;
        d.lead += damp * step_lead;
        d.slant += damp * step_slant;
    }
    double rx, ry;
    d.endpoint(rx, ry);
    if (!converged && std::hypot(rx, ry) > 1e-9 * scale)
        fail(Errc::construction_error, "make_teardrop: closure solver did not converge");

    TeardropCurve out;
    resample(d, n_samples, out);
    return out;
}

TeardropCurve make_circle_curve(double radius, int n_samples) {
    if (!(radius > 0.0) || n_samples < 16) fail(Errc::invalid_input, "make_circle_curve: bad input");
    TeardropCurve out;
    out.length = 2.0 * kPi * radius;
    out.total_abs_turn = 2.0 * kPi;
    out.breakpoints = {0.0, out.length};
    out.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double s = out.length * i / (n_samples - 1);
        const double t = s / radius;
        out.samples.push_back({s, radius * std::sin(t), radius * (1.0 - std::cos(t)),
                               std::cos(t), std::sin(t), 1.0 / radius});
    }
    return out;
}

TeardropCurve make_semicircle_arc(double radius, int n_samples) {
    if (!(radius > 0.0) || n_samples < 16)
        fail(Errc::invalid_input, "make_semicircle_arc: bad input");
    TeardropCurve out;
    out.length = kPi * radius;
    out.total_abs_turn = kPi;
    out.breakpoints = {0.0, out.length};
    out.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double s = out.length * i / (n_samples - 1);
        const double t = s / radius;
        out.samples.push_back({s, radius * std::sin(t), radius * (1.0 - std::cos(t)),
                               std::cos(t), std::sin(t), 1.0 / radius});
    }
    return out;
}

double total_abs_curvature(const TeardropCurve& c) {
    if (c.samples.size() < 2) fail(Errc::invalid_input, "total_abs_curvature: too few samples");
    double total = 0.0;
    for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
        const double ds = c.samples[i + 1].s - c.samples[i].s;
        total += 0.5 * (std::abs(c.samples[i].kappa) + std::abs(c.samples[i + 1].kappa)) * ds;
    }
    return total;
}

std::vector<std::vector<BoundaryFrame>> boundary_frames(const ImmersedMesh& mesh) {
    if (mesh.is_closed()) fail(Errc::invalid_input, "boundary_frames: mesh has no boundary");

    // Angle-weighted vertex normal, local to the boundary vertices we touch.
    auto vertex_normal = [&](int v) {
        Vec3 n{0, 0, 0};
        const Vec3& pv = mesh.position(v);
        for (int f : mesh.faces_around(v)) {
            const auto& tri = mesh.face(f);
            int rot = 0;
            while (tri[rot] != v) ++rot;
            const Vec3 e1 = mesh.position(tri[(rot + 1) % 3]) - pv;
            const Vec3 e2 = mesh.position(tri[(rot + 2) % 3]) - pv;
            const Vec3 c = cross(e1, e2);
            const double len = norm(c);
            if (len > 0.0) n += c * (std::atan2(len, dot(e1, e2)) / len);
        }
        return normalized(n);
    };

    std::vector<std::vector<BoundaryFrame>> out;
    for (const auto& loop : mesh.boundary_loops()) {
        const int L = static_cast<int>(loop.size());
        std::vector<BoundaryFrame> frames(L);
        for (int k = 0; k < L; ++k) {
            const int v = loop[k];
            const Vec3& pv = mesh.position(v);
            const Vec3 e1 =
                normalized(mesh.position(loop[(k + 1) % L]) - mesh.position(loop[(k - 1 + L) % L]));

            Vec3 inward{0, 0, 0};
            Vec3 centroid{0, 0, 0};
            int interior_count = 0;
            for (int j : mesh.neighbors(v)) {
                if (mesh.is_boundary_vertex(j)) continue;
                inward += normalized(mesh.position(j) - pv);
                centroid += mesh.position(j);
                ++interior_count;
            }
            if (interior_count == 0)
                fail(Errc::mesh_quality,
                     "boundary vertex " + std::to_string(v) + " has no interior neighbour");
            centroid = centroid / interior_count;

            // Conormal: orthogonal to both the boundary tangent and the vertex
            // normal, oriented outward (away from the interior centroid).
            const Vec3 n = vertex_normal(v);
            Vec3 e2 = cross(e1, n);
            e2 -= e1 * dot(e2, e1);
            e2 = normalized(e2);
            if (dot(e2, pv - centroid) < 0.0) e2 = -e2;
            const Vec3 e3 = cross(e1, e2);

            frames[k] = {v, e1, e2, e3};
        }
        out.push_back(std::move(frames));
    }
    return out;
}

namespace {

void require_weldable(const TeardropCurve& drop) {
    if (drop.samples.size() < 2 || drop.length <= 0.0)
        fail(Errc::invalid_input, "build_double: empty cross-section curve");
    const CurveSample& first = drop.samples.front();
    const CurveSample& last = drop.samples.back();
    if (std::hypot(first.x - last.x, first.y - last.y) > 1e-9 * drop.length)
        fail(Errc::invalid_input, "build_double: cross-section curve is not closed");
    if (std::abs(first.tx - 1.0) > 1e-6 || std::abs(first.ty) > 1e-6 ||
        std::abs(last.tx + 1.0) > 1e-6 || std::abs(last.ty) > 1e-6)
        fail(Errc::invalid_input,
             "build_double: cross-section end tangents must be +x at 0 and -x at b");
}

// Ring arclengths: roughly uniform with the target count, but snapped to the
// curve's piece breakpoints (arcs get at least 4 rings) so the cross-section
// polygon's turning telescopes exactly within each smooth piece.
std::vector<double> ring_arclengths(const TeardropCurve& drop, int s_res) {
    const double target = drop.length / s_res;
    std::vector<double> s_values{0.0};
    for (size_t k = 0; k + 1 < drop.breakpoints.size(); ++k) {
        const double lo = drop.breakpoints[k], hi = drop.breakpoints[k + 1];
        const double len = hi - lo;
        if (len <= 0.0) continue;
        int n = std::max(1, static_cast<int>(std::lround(len / target)));
        const bool is_arc = drop.breakpoints.size() == 5 && (k == 1 || k == 3);
        if (is_arc) n = std::max(n, 4);
        for (int i = 1; i <= n; ++i) s_values.push_back(lo + len * i / n);
    }
    return s_values;
}

}  // namespace

DoubledMesh build_double(const ImmersedMesh& mesh, const ConformalAmbient& a, double eps,
                         const TeardropCurve& drop, int s_res) {
    if (!(eps > 0.0)) fail(Errc::invalid_input, "build_double: eps must be positive");
    if (s_res < 8) fail(Errc::invalid_input, "build_double: s_res >= 8");
    if (mesh.is_closed()) fail(Errc::invalid_input, "build_double: mesh has no boundary");
    mesh.require_connected();
    mesh.require_inside(a);
    require_weldable(drop);

    const auto frames = boundary_frames(mesh);
    const auto s_values = ring_arclengths(drop, s_res);
    const int rings = static_cast<int>(s_values.size());  // includes s = 0 and s = b
    const int nA = mesh.vertex_count();

    std::vector<Vec3> positions(mesh.positions().begin(), mesh.positions().end());
    std::vector<std::array<int, 3>> faces(mesh.faces().begin(), mesh.faces().end());
    std::vector<char> tube_face(faces.size(), 0);

    // Interior tube rings per loop, then the full reversed copy B.
    std::vector<std::vector<int>> ring_start(frames.size());
    for (size_t k = 0; k < frames.size(); ++k) {
        const int L = static_cast<int>(frames[k].size());
        ring_start[k].assign(rings, -1);
        for (int j = 1; j + 1 < rings; ++j) {
            ring_start[k][j] = static_cast<int>(positions.size());
            double x, y;
            drop.eval(s_values[j], x, y);
            for (int i = 0; i < L; ++i) {
                const BoundaryFrame& fr = frames[k][i];
                const Vec3 p = mesh.position(fr.vertex) + (fr.e2 * x + fr.e3 * y) * eps;
                a.require_inside(p);
                positions.push_back(p);
            }
        }
    }
    const int b_offset = static_cast<int>(positions.size());
    for (int v = 0; v < nA; ++v) positions.push_back(mesh.position(v));

    auto ring_vertex = [&](size_t k, int j, int i) {
        if (j == 0) return frames[k][i].vertex;
        if (j == rings - 1) return b_offset + frames[k][i].vertex;
        return ring_start[k][j] + i;
    };

    for (size_t k = 0; k < frames.size(); ++k) {
        const int L = static_cast<int>(frames[k].size());
        for (int j = 0; j + 1 < rings; ++j) {
            for (int i = 0; i < L; ++i) {
                const int i2 = (i + 1) % L;
                const int t0 = ring_vertex(k, j, i), t1 = ring_vertex(k, j, i2);
                const int u0 = ring_vertex(k, j + 1, i), u1 = ring_vertex(k, j + 1, i2);
                faces.push_back({t1, t0, u0});
                faces.push_back({t1, u0, u1});
                tube_face.push_back(1);
                tube_face.push_back(1);
            }
        }
    }
    for (const auto& tri : mesh.faces()) {
        faces.push_back({b_offset + tri[0], b_offset + tri[2], b_offset + tri[1]});
        tube_face.push_back(0);
    }

    DoubledMesh out{ImmersedMesh::create(std::move(positions), std::move(faces)),
                    std::move(tube_face), {}, nA};

    out.tube_weight.assign(out.mesh.vertex_count(), 0.0);
    for (int v = 0; v < out.mesh.vertex_count(); ++v) {
        int tube = 0, total = 0;
        for (int f : out.mesh.faces_around(v)) {
            ++total;
            tube += out.tube_face[f];
        }
        if (tube == total)
            out.tube_weight[v] = 1.0;
        else if (tube > 0)
            out.tube_weight[v] = 0.5;  // C^{1,1} junction rings split between pieces
    }
    return out;
}

double tube_mean_curvature_integral(const DoubledMesh& dbl, const ConformalAmbient& a,
                                    Exec exec) {
    return total_mean_curvature_weighted(dbl.mesh, a, dbl.tube_weight, exec);
}

std::vector<ConvergenceRow> convergence_study(const ImmersedMesh& mesh,
                                              const ConformalAmbient& a,
                                              const TeardropCurve& drop,
                                              std::span<const double> eps_list,
                                              const ConvergenceOptions& opts) {
    if (eps_list.empty()) fail(Errc::invalid_input, "convergence_study: empty eps list");
    for (size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || (i > 0 && eps_list[i] >= eps_list[i - 1]))
            fail(Errc::invalid_input, "convergence_study: eps list must be positive decreasing");
    }

    const double kz = total_abs_curvature(drop);
    const double bl = boundary_length(mesh, a);
    const double reference = kz * bl;
    const double sigma_total_H = total_mean_curvature(mesh, a, opts.exec);
    const DiameterResult d_sigma = intrinsic_diameter(mesh, a, opts.diameter);

    std::vector<ConvergenceRow> rows;
    for (double eps : eps_list) {
        ConvergenceRow row;
        row.eps = eps;
        row.reference = reference;
        row.d_sigma = d_sigma.value;

        const DoubledMesh dbl = build_double(mesh, a, eps, drop, opts.s_res);
        row.tube_integral = tube_mean_curvature_integral(dbl, a, opts.exec);
        row.abs_error = std::abs(row.tube_integral - reference);

        const DiameterResult d_m = intrinsic_diameter(dbl.mesh, a, opts.diameter);
        row.d_m_eps = d_m.value;
        const double tol =
            2.0 * WeightedGraph::from_mesh(dbl.mesh, a, opts.diameter.graph).max_edge_weight();
        row.monotone_ok = d_sigma.value <= d_m.value + tol;

        ReportOptions ropts;
        ropts.alpha = opts.alpha;
        ropts.strict = opts.strict;
        ropts.diameter = opts.diameter;
        ropts.exec = opts.exec;
        ropts.precomputed_diameter = d_m;
        row.wz = wu_zheng_check(dbl.mesh, a, ropts);
        row.diam_bound_ok =
            d_m.value <= row.wz.C2alpha * (2.0 * sigma_total_H + row.tube_integral);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace confdiam

#include "confdiam/plateau.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline double e2phi(const ConformalAmbient& a, const Vec3& p) {
    const double f = a.conformal_factor(p);
    return f * f;
}

double conformal_area_of(std::span<const Vec3> pos,
                         std::span<const std::array<int, 3>> faces,
                         const ConformalAmbient& a) {
    double total = 0.0;
    for (const auto& tri : faces) {
        const Vec3& p0 = pos[tri[0]];
        const Vec3& p1 = pos[tri[1]];
        const Vec3& p2 = pos[tri[2]];
        const double area = 0.5 * norm(cross(p1 - p0, p2 - p0));
        const double factor = (e2phi(a, (p0 + p1) * 0.5) + e2phi(a, (p1 + p2) * 0.5) +
                               e2phi(a, (p2 + p0) * 0.5)) / 3.0;
        total += factor * area;
    }
    return total;
}

// d/dp_v of A_f * avg_midedge e^{2 phi} summed over the star of v. The two
// edge midpoints adjacent to v move at rate 1/2 with the vertex.
Vec3 vertex_area_gradient(const ImmersedMesh& mesh, std::span<const Vec3> pos,
                          const ConformalAmbient& a, int v) {
    Vec3 g{0, 0, 0};
    for (int f : mesh.faces_around(v)) {
        const auto& tri = mesh.face(f);
        int rot = 0;
        while (tri[rot] != v) ++rot;
        const Vec3& pv = pos[v];
        const Vec3& pa = pos[tri[(rot + 1) % 3]];
        const Vec3& pb = pos[tri[(rot + 2) % 3]];
        const Vec3 n = cross(pa - pv, pb - pv);
        const double n_len = norm(n);
        if (n_len == 0.0) continue;
        const double area = 0.5 * n_len;
        const Vec3 m_va = (pv + pa) * 0.5, m_vb = (pv + pb) * 0.5, m_ab = (pa + pb) * 0.5;
        const double factor = (e2phi(a, m_va) + e2phi(a, m_vb) + e2phi(a, m_ab)) / 3.0;
        const Vec3 grad_area = cross(n / n_len, pb - pa) * 0.5;
        const Vec3 grad_factor =
            (a.grad_phi(m_va) * e2phi(a, m_va) + a.grad_phi(m_vb) * e2phi(a, m_vb)) / 3.0;
        g += grad_area * factor + grad_factor * area;
    }
    return g;
}

bool faces_admissible(const ImmersedMesh& mesh, std::span<const Vec3> pos,
                      std::span<const Vec3> old_normals, const ConformalAmbient& a,
                      std::span<const int> moved) {
    for (int v : moved)
        if (!a.contains(pos[v])) return false;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.face(f);
        const Vec3 n = cross(pos[tri[1]] - pos[tri[0]], pos[tri[2]] - pos[tri[0]]);
        if (dot(n, old_normals[f]) <= 0.0) return false;
    }
    return true;
}

double face_quality(std::span<const Vec3> pos, const std::array<int, 3>& tri) {
    const double l0 = distance(pos[tri[0]], pos[tri[1]]);
    const double l1 = distance(pos[tri[1]], pos[tri[2]]);
    const double l2 = distance(pos[tri[2]], pos[tri[0]]);
    const double longest = std::max({l0, l1, l2});
    const double perimeter = l0 + l1 + l2;
    const double area = 0.5 * norm(cross(pos[tri[1]] - pos[tri[0]], pos[tri[2]] - pos[tri[0]]));
    return perimeter > 0.0 && longest > 0.0 ? 2.0 * area / (perimeter * longest) : 0.0;
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIters: return "max_iters";
        case SolveStatus::Stalled: return "stalled";
        case SolveStatus::NeckCollapse: return "neck_collapse";
    }
    return "unknown";
}

double objective_area(const ImmersedMesh& mesh, const ConformalAmbient& a) {
    mesh.require_inside(a);
    return conformal_area_of(mesh.positions(), mesh.faces(), a);
}

std::vector<Vec3> area_gradient(const ImmersedMesh& mesh, const ConformalAmbient& a, Exec exec) {
    mesh.require_inside(a);
    const int nv = mesh.vertex_count();
    std::vector<Vec3> g(nv);
    const auto pos = mesh.positions();
    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
        for (int v = 0; v < nv; ++v) g[v] = vertex_area_gradient(mesh, pos, a, v);
    } else {
        for (int v = 0; v < nv; ++v) g[v] = vertex_area_gradient(mesh, pos, a, v);
    }
    return g;
}

double min_face_quality(const ImmersedMesh& mesh) {
    double q = std::numeric_limits<double>::infinity();
    for (const auto& tri : mesh.faces()) q = std::min(q, face_quality(mesh.positions(), tri));
    return q;
}

MinimizeResult minimize_area(const ImmersedMesh& mesh, const ConformalAmbient& a,
                             const SolverOptions& opts) {
    if (mesh.is_closed())
        fail(Errc::invalid_input, "minimize_area: mesh needs a fixed boundary");
    if (!(opts.shrink > 0.0 && opts.shrink < 1.0) || opts.max_iters <= 0 ||
        opts.grad_tol <= 0.0 || opts.sufficient_decrease <= 0.0)
        fail(Errc::invalid_input, "minimize_area: bad solver options");
    mesh.require_inside(a);

    std::vector<int> interior;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.is_boundary_vertex(v)) interior.push_back(v);

    std::vector<Vec3> pos(mesh.positions().begin(), mesh.positions().end());
    std::vector<Vec3> candidate(pos.size());
    std::vector<Vec3> grad(pos.size());
    std::vector<Vec3> normals(mesh.face_count());

    auto refresh_normals = [&](std::span<const Vec3> p) {
        for (int f = 0; f < mesh.face_count(); ++f) {
            const auto& tri = mesh.face(f);
            normals[f] = cross(p[tri[1]] - p[tri[0]], p[tri[2]] - p[tri[0]]);
        }
    };

    double mean_edge = 0.0;
    for (const auto& e : mesh.edges()) mean_edge += distance(pos[e.a], pos[e.b]);
    mean_edge /= std::max(1, mesh.edge_count());

    MinimizeResult result{mesh, {}, SolveStatus::MaxIters};
    double energy = conformal_area_of(pos, mesh.faces(), a);
    double step = -1.0;  // set from the first gradient

    const int nv = mesh.vertex_count();
    auto compute_gradient = [&]() {
        if (opts.exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
            for (int v = 0; v < nv; ++v) grad[v] = vertex_area_gradient(mesh, pos, a, v);
        } else {
            for (int v = 0; v < nv; ++v) grad[v] = vertex_area_gradient(mesh, pos, a, v);
        }
    };

    bool done = false;
    for (int iter = 0; iter < opts.max_iters && !done; ++iter) {
        compute_gradient();
        double sup = 0.0, g2 = 0.0;
        for (int v : interior) {
            sup = std::max(sup, norm(grad[v]));
            g2 += norm2(grad[v]);
        }
        result.history.push_back({energy, sup});

        if (sup <= opts.grad_tol) {
            result.status = SolveStatus::Converged;
            break;
        }
        {
            double q = std::numeric_limits<double>::infinity();
            for (const auto& tri : mesh.faces()) q = std::min(q, face_quality(pos, tri));
            if (q < opts.quality_floor) {
                result.status = SolveStatus::NeckCollapse;
                break;
            }
        }

        if (step < 0.0) step = 0.05 * mean_edge / sup;
        refresh_normals(pos);

        bool accepted = false;
        double t = step;
        for (int bt = 0; bt < 60 && !accepted; ++bt) {
            candidate = pos;
            for (int v : interior) candidate[v] -= grad[v] * t;
            if (faces_admissible(mesh, candidate, normals, a, interior)) {
                const double trial = conformal_area_of(candidate, mesh.faces(), a);
                if (trial <= energy - opts.sufficient_decrease * t * g2) {
                    const double prev = energy;
                    pos.swap(candidate);
                    energy = trial;
                    step = t * 2.0;
                    accepted = true;
                    if (opts.rel_area_tol > 0.0 &&
                        prev - energy < opts.rel_area_tol * std::abs(prev)) {
                        result.history.push_back({energy, sup});
                        result.status = SolveStatus::Converged;
                        done = true;
                    }
                }
            }
            if (!accepted) t *= opts.shrink;
        }
        if (!accepted) {
            result.status = SolveStatus::Stalled;
            break;
        }
    }

    result.mesh = mesh.with_positions(std::move(pos));
    return result;
}

double catenoid_critical_ratio() {
    // coth u = u has a single root in (1, 2); the critical neck sits at
    // h/r = 2u / cosh u.
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (1.0 / std::tanh(mid) - mid > 0.0 ? lo : hi) = mid;
    }
    const double u = 0.5 * (lo + hi);
    return 2.0 * u / std::cosh(u);
}

ScreenVerdict screen_boundary(std::span<const NamedCurve> curves, const ConformalAmbient& a,
                              std::optional<double> alpha, std::optional<double> area_budget,
                              bool strict) {
    if (curves.empty()) fail(Errc::invalid_input, "screen_boundary: need at least one curve");
    for (const auto& c : curves) {
        if (c.points.size() < 3)
            fail(Errc::invalid_input, "screen_boundary: component '" + c.name +
                                          "' needs at least 3 points");
    }

    ScreenVerdict v;
    v.area_budget = area_budget;
    CurveLengthOptions copts;
    copts.closed = true;
    for (const auto& c : curves) {
        const double len = curve_length(a, c.points, copts);
        v.component_lengths.push_back(len);
        v.total_length += len;
    }

    for (size_t i = 0; i < curves.size(); ++i) {
        for (size_t j = i + 1; j < curves.size(); ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec3& p : curves[i].points)
                for (const Vec3& q : curves[j].points)
                    best = std::min(best, ambient_distance(a, p, q));
            v.pair_distances.push_back({static_cast<int>(i), static_cast<int>(j), best});
            v.separation = std::max(v.separation, best);
        }
    }

    if (alpha) {
        v.alpha = *alpha;
        if (a.K_upper() > 0.0) {
            if (!area_budget)
                fail(Errc::invalid_input, "screen_boundary: area_budget required when K > 0");
            const GatePair gates =
                check_gates(*area_budget, a.K_upper(), a.inj_radius(), v.alpha, strict);
            if (!gates.star_ok || !gates.starstar_ok)
                fail(Errc::gate_violation, "screen_boundary: gates fail at the given alpha/budget");
        }
    } else if (a.K_upper() > 0.0) {
        if (!area_budget)
            fail(Errc::invalid_input, "screen_boundary: area_budget required when K > 0");
        v.alpha = optimal_alpha(*area_budget, a.K_upper(), strict).alpha;
    } else {
        v.alpha = 2.0 / 3.0;
    }

    v.bound = wz_constant(v.alpha) * kPi * v.total_length;
    v.no_connected_surface = v.separation > v.bound;
    v.verdict = v.no_connected_surface ? "no-connected-surface" : "inconclusive";
    return v;
}

std::string screen_verdict_json(const ScreenVerdict& v, int indent) {
    nlohmann::json j;
    j["component_lengths"] = v.component_lengths;
    j["total_length"] = v.total_length;
    auto pairs = nlohmann::json::array();
    for (const auto& p : v.pair_distances)
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"distance", p.distance}});
    j["pair_distances"] = pairs;
    j["separation"] = v.separation;
    j["bound"] = v.bound;
    j["alpha"] = v.alpha;
    if (v.area_budget)
        j["area_budget"] = *v.area_budget;
    else
        j["area_budget"] = nullptr;
    j["verdict"] = v.verdict;
    return j.dump(indent);
}

}  // namespace confdiam

#include "confdiam/gates.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "confdiam/error.hpp"

namespace confdiam {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::invalid_input, "alpha must lie in (0, 1), got " + std::to_string(alpha));
}

// Star condition with the area term passed directly: K (1-alpha)^{-1} T / pi
// compared against 1 (strict or not). For K <= 0 the left side is <= 0.
bool star_condition(double area_term, double K, double alpha, bool strict) {
    const double lhs = K * area_term / ((1.0 - alpha) * kPi);
    return strict ? lhs < 1.0 : lhs <= 1.0;
}

AlphaChoice optimal_alpha_area_term(double area_term, double K, bool strict) {
    constexpr double kOptimal = 2.0 / 3.0;  // interior minimum of 1/(a^2(1-a))
    if (K <= 0.0) return {kOptimal, wz_constant(kOptimal)};
    const double cap = 1.0 - K * area_term / kPi;
    if (cap <= 0.0)
        fail(Errc::gate_violation,
             "star gate infeasible: no alpha in (0,1) admits this area with K > 0");
    double alpha = std::min(kOptimal, cap);
    if (strict && cap <= kOptimal) alpha = std::nextafter(cap, 0.0);
    return {alpha, wz_constant(alpha)};
}

}  // namespace

double unit_ball_volume(int m) {
    if (m < 1) fail(Errc::invalid_input, "unit_ball_volume: m >= 1");
    return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double rho0(double alpha, double area2, double K) {
    require_alpha(alpha);
    if (area2 < 0.0) fail(Errc::invalid_input, "rho0: area term must be nonnegative");
    const double base = std::sqrt(area2 / kPi) / std::sqrt(1.0 - alpha);
    if (K <= 0.0) return base;
    const double arg = std::sqrt(K) * base;
    if (arg > 1.0)
        fail(Errc::gate_violation, "rho0: asin argument exceeds 1 (star gate fails first)");
    return std::asin(arg) / std::sqrt(K);
}

GatePair check_gates_area_term(double area_term, double K, double inj, double alpha,
                               bool strict) {
    require_alpha(alpha);
    GatePair out;
    out.star_ok = star_condition(area_term, K, alpha, strict);
    if (std::isinf(inj)) {
        out.starstar_ok = true;
        return out;
    }
    double r;
    try {
        r = rho0(alpha, area_term, K);
    } catch (const Error&) {
        out.starstar_ok = false;
        return out;
    }
    out.starstar_ok = strict ? (2.0 * r < inj) : (2.0 * r <= inj);
    return out;
}

GatePair check_gates(double area, double K, double inj, double alpha, bool strict) {
    return check_gates_area_term(2.0 * area, K, inj, alpha, strict);
}

double wz_constant(double alpha) {
    require_alpha(alpha);
    const double v = 576.0 * kPi / (alpha * alpha * (1.0 - alpha));
    return std::min(v, kConstantCap);
}

double hs_constant(int m, double alpha, bool K_nonnegative) {
    if (m < 2) fail(Errc::invalid_input, "hs_constant: m >= 2");
    require_alpha(alpha);
    double c = std::pow(2.0, m - 2) / alpha * std::pow(1.0 - alpha, -1.0 / m) *
               (static_cast<double>(m) / (m - 1)) * std::pow(unit_ball_volume(m), -1.0 / m);
    if (K_nonnegative) c *= kPi / 2.0;
    return c;
}

AlphaChoice optimal_alpha(double area, double K, bool strict) {
    return optimal_alpha_area_term(2.0 * area, K, strict);
}

namespace {

// Shared by the boundary and closed-surface reports once the per-surface
// quantities are known. area_term is what the gates see (2|Sigma| or |M|);
// h_factor multiplies the curvature integral in the right-hand side (2 for
// the doubled-surface bound, 1 for the closed-surface bound).
GateReport assemble_report(double surface_area, double area_term, const ConformalAmbient& a,
                           double total_H, double bl, double h_factor,
                           const DiameterResult& diam, std::optional<double> alpha_opt,
                           bool strict) {
    GateReport r;
    r.area = surface_area;
    r.K_upper = a.K_upper();
    r.strict_mode = strict;
    r.total_H = total_H;
    r.boundary_len = bl;
    r.diameter = diam.value;
    r.diameter_v0 = diam.v0;
    r.diameter_v1 = diam.v1;

    if (alpha_opt) {
        require_alpha(*alpha_opt);
        r.alpha = *alpha_opt;
    } else {
        try {
            r.alpha = optimal_alpha_area_term(area_term, a.K_upper(), strict).alpha;
        } catch (const Error&) {
            r.alpha = 2.0 / 3.0;  // reported for reference; gates will fail below
        }
    }
    r.C2alpha = wz_constant(r.alpha);

    try {
        r.rho0 = rho0(r.alpha, area_term, a.K_upper());
    } catch (const Error&) {
        r.rho0 = std::numeric_limits<double>::quiet_NaN();
    }
    const GatePair gates = check_gates_area_term(area_term, a.K_upper(), a.inj_radius(),
                                                 r.alpha, strict);
    r.star_ok = gates.star_ok;
    r.starstar_ok = gates.starstar_ok;

    r.rhs = r.C2alpha * (h_factor * r.total_H + kPi * r.boundary_len);
    r.margin = r.rhs - r.diameter;

    if (!gates.star_ok || !gates.starstar_ok) {
        r.applicable = false;
        r.verdict = "not applicable: gate conditions fail for alpha = " + std::to_string(r.alpha);
    } else {
        r.applicable = true;
        r.verdict = r.margin >= 0.0 ? "ok" : "violated";
    }
    return r;
}

}  // namespace

GateReport main_inequality_report(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                  const ReportOptions& opts) {
    mesh.require_connected();
    mesh.require_inside(a);
    if (mesh.is_closed()) {
        GateReport r;
        r.area = area(mesh, a);
        r.K_upper = a.K_upper();
        r.strict_mode = opts.strict;
        r.alpha = opts.alpha.value_or(2.0 / 3.0);
        r.applicable = false;
        r.verdict = "not applicable: closed surface; use wu_zheng_check";
        return r;
    }

    const double surface_area = area(mesh, a);
    const double total_H = total_mean_curvature(mesh, a, opts.exec);
    const double bl = boundary_length(mesh, a);
    const DiameterResult diam = intrinsic_diameter(mesh, a, opts.diameter);
    return assemble_report(surface_area, 2.0 * surface_area, a, total_H, bl, 2.0, diam,
                           opts.alpha, opts.strict);
}

GateReport wu_zheng_check(const ImmersedMesh& mesh, const ConformalAmbient& a,
                          const ReportOptions& opts) {
    if (!mesh.is_closed())
        fail(Errc::invalid_input, "wu_zheng_check requires a closed surface");
    mesh.require_connected();
    mesh.require_inside(a);

    const double surface_area = area(mesh, a);
    const double total_H = total_mean_curvature(mesh, a, opts.exec);
    const DiameterResult diam = opts.precomputed_diameter
                                    ? *opts.precomputed_diameter
                                    : intrinsic_diameter(mesh, a, opts.diameter);
    return assemble_report(surface_area, surface_area, a, total_H, 0.0, 1.0, diam, opts.alpha,
                           opts.strict);
}

SobolevPair hoffman_spruck_check(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                 std::span<const double> f, double alpha, bool strict) {
    require_alpha(alpha);
    mesh.require_inside(a);
    if (static_cast<int>(f.size()) != mesh.vertex_count())
        fail(Errc::invalid_input, "hoffman_spruck_check: f must have one value per vertex");
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (f[v] < 0.0) fail(Errc::invalid_input, "hoffman_spruck_check: f must be nonnegative");
        if (mesh.is_boundary_vertex(v) && f[v] != 0.0)
            fail(Errc::invalid_input, "hoffman_spruck_check: f must vanish on the boundary");
    }

    // Support area: faces where f is nonzero at any corner, measured in dmu.
    double supp_area = 0.0;
    for (int fi = 0; fi < mesh.face_count(); ++fi) {
        const auto& tri = mesh.face(fi);
        if (f[tri[0]] == 0.0 && f[tri[1]] == 0.0 && f[tri[2]] == 0.0) continue;
        const double factor = a.conformal_factor(mesh.face_centroid(fi));
        supp_area += factor * factor * mesh.face_area(fi);
    }
    const GatePair gates =
        check_gates_area_term(supp_area, a.K_upper(), a.inj_radius(), alpha, strict);
    if (!gates.star_ok || !gates.starstar_ok)
        fail(Errc::gate_violation, "hoffman_spruck_check: support-area gates fail");

    const double c = hs_constant(2, alpha, a.K_upper() >= 0.0);
    const CurvatureField field = curvature_field(mesh, a);

    double lhs2 = 0.0;
    double grad_term = 0.0, curv_term = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const double factor = a.conformal_factor(mesh.position(v));
        const double mu_v = factor * factor * field.mixed_areas[v];
        lhs2 += f[v] * f[v] * mu_v;
        if (!mesh.is_boundary_vertex(v)) curv_term += f[v] * field.H_conf_norm[v] * mu_v;
    }
    for (int fi = 0; fi < mesh.face_count(); ++fi) {
        const auto& tri = mesh.face(fi);
        const Vec3& p0 = mesh.position(tri[0]);
        const Vec3& p1 = mesh.position(tri[1]);
        const Vec3& p2 = mesh.position(tri[2]);
        const double A = mesh.face_area(fi);
        const Vec3 n = mesh.face_normal(fi);
        // P1 gradient: grad lambda_i = n x (opposite edge) / (2A).
        const Vec3 g0 = cross(n, p2 - p1) / (2.0 * A);
        const Vec3 g1 = cross(n, p0 - p2) / (2.0 * A);
        const Vec3 g2 = cross(n, p1 - p0) / (2.0 * A);
        const Vec3 grad = g0 * f[tri[0]] + g1 * f[tri[1]] + g2 * f[tri[2]];
        // |grad f|_g dmu = e^{-phi} |grad f| e^{2 phi} dA = e^{phi} |grad f| dA.
        grad_term += a.conformal_factor(mesh.face_centroid(fi)) * norm(grad) * A;
    }

    SobolevPair pair;
    pair.lhs = std::sqrt(lhs2);
    pair.rhs = c * (grad_term + curv_term);
    return pair;
}

double weighted_gate(const ImmersedMesh& mesh,
                     const std::function<double(const Vec3&)>& psi,
                     const std::function<Vec3(const Vec3&)>& grad_psi) {
    if (!psi || !grad_psi) fail(Errc::invalid_input, "weighted_gate: psi and grad_psi required");
    const CurvatureField field = mean_curvature_delta(mesh);
    double total = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.position(v);
        total += dot(p, grad_psi(p)) * std::exp(psi(p)) * field.mixed_areas[v];
    }
    return total;
}

std::string gate_report_json(const GateReport& r, int indent) {
    json j;
    j["area"] = r.area;
    j["K_upper"] = r.K_upper;
    j["alpha"] = r.alpha;
    j["rho0"] = r.rho0;  // NaN serializes as null when the star gate fails
    j["star_ok"] = r.star_ok;
    j["starstar_ok"] = r.starstar_ok;
    j["strict_mode"] = r.strict_mode;
    j["C2alpha"] = r.C2alpha;
    j["total_H"] = r.total_H;
    j["boundary_len"] = r.boundary_len;
    j["diameter"] = r.diameter;
    j["diameter_pair"] = {r.diameter_v0, r.diameter_v1};
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["applicable"] = r.applicable;
    j["verdict"] = r.verdict;
    return j.dump(indent);
}

}  // namespace confdiam

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "confdiam/ambient.hpp"
#include "confdiam/curvature.hpp"
#include "confdiam/geodesy.hpp"
#include "confdiam/mesh.hpp"

namespace confdiam {

/// Unit 2-ball area, the omega_2 normalization used throughout the gates.
inline constexpr double kOmega2 = 3.14159265358979323846;

/// Volume of the unit m-ball.
double unit_ball_volume(int m);

/// rho_0 for m = 2 as a function of the area term fed to the gates
/// (2|Sigma| for surfaces with boundary, |M| for closed surfaces):
///   K > 0:   K^{-1/2} asin( K^{1/2} (1-alpha)^{-1/2} (area2/pi)^{1/2} )
///   K <= 0:  (1-alpha)^{-1/2} (area2/pi)^{1/2}
/// Throws gate_violation when the asin argument exceeds 1 (the star gate
/// fails first in that regime).
double rho0(double alpha, double area2, double K);

struct GatePair {
    bool star_ok = false;
    bool starstar_ok = false;
};

/// The two smallness conditions for a surface with boundary of area |Sigma|:
///   star:      K (1-alpha)^{-1} pi^{-1} 2|Sigma|  <  1
///   starstar:  2 rho0(alpha, 2|Sigma|)            <  inj
/// Non-strict mode (the default, paired with the explicit constant
/// 576 pi / (alpha^2 (1-alpha))) uses <= instead.
GatePair check_gates(double area, double K, double inj, double alpha, bool strict);

/// Same conditions with the area term passed directly (closed-surface form).
GatePair check_gates_area_term(double area_term, double K, double inj, double alpha,
                               bool strict);

/// Values above this are clamped; alpha near the poles of the constant.
inline constexpr double kConstantCap = 1e18;

/// The closed-surface diameter constant C(2, alpha) = 576 pi / (alpha^2 (1-alpha)),
/// clamped to kConstantCap near alpha = 0, 1.
double wz_constant(double alpha);

/// The Sobolev constant
///   c(m, alpha) = [pi/2 if K >= 0] 2^{m-2} alpha^{-1} (1-alpha)^{-1/m}
///                 * m/(m-1) * omega_m^{-1/m}.
double hs_constant(int m, double alpha, bool K_nonnegative);

struct AlphaChoice {
    double alpha = 0.0;
    double C = 0.0;  // wz_constant(alpha)
};

/// Minimizes wz_constant over the alphas admitted by the star gate. The
/// unconstrained minimizer is alpha = 2/3; for K > 0 the gate caps alpha at
/// 1 - 2 K |Sigma| / pi. Throws gate_violation when no alpha is feasible.
AlphaChoice optimal_alpha(double area, double K, bool strict);

/// Everything the main inequality evaluation produces for one surface.
/// rhs = C2alpha * (2 * total_H + pi * boundary_len); margin = rhs - diameter.
struct GateReport {
    double area = 0.0;
    double K_upper = 0.0;
    double alpha = 0.0;
    double rho0 = 0.0;  // NaN when the star gate fails with K > 0
    bool star_ok = false;
    bool starstar_ok = false;
    bool strict_mode = false;
    double C2alpha = 0.0;
    double total_H = 0.0;
    double boundary_len = 0.0;
    double diameter = 0.0;
    int diameter_v0 = -1, diameter_v1 = -1;
    double rhs = 0.0;
    double margin = 0.0;
    bool applicable = false;
    std::string verdict;  // "ok" | "violated" | "not applicable: ..."
};

/// Fixed snake_case field names, suitable for report.json.
std::string gate_report_json(const GateReport& r, int indent = 2);

struct ReportOptions {
    std::optional<double> alpha;  // default: optimal_alpha for the gates
    bool strict = false;
    DiameterOptions diameter;
    Exec exec = Exec::OpenMP;
    /// Reuse a diameter computed by the caller (the convergence study needs
    /// the same value twice per row).
    std::optional<DiameterResult> precomputed_diameter;
};

/// d(Sigma) <= C(2, alpha) [ 2 int |H| dmu + pi l(boundary) ] for a connected
/// compact surface with boundary. Gate failure or a closed input yields a
/// "not applicable" report rather than an error; a negative margin is
/// reported as "violated" (that outcome is the whole point of the check).
GateReport main_inequality_report(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                  const ReportOptions& opts = {});

/// Closed-surface bound d(M) <= C(2, alpha) int |H| dmu (m = 2 only, so the
/// |H|^{m-1} integrand reduces to |H|). Boundary input is invalid here.
GateReport wu_zheng_check(const ImmersedMesh& mesh, const ConformalAmbient& a,
                          const ReportOptions& opts = {});

struct SobolevPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Numeric check of (int f^2 dmu)^{1/2} <= c(2, alpha) int (|grad f| + f |H|) dmu
/// for nonnegative per-vertex f vanishing on the boundary. Face gradients are
/// piecewise linear, |grad f|_g = e^{-phi} |grad f|_delta. The support-area
/// gates are evaluated on the dmu-area of faces where f is nonzero at any
/// corner (conservative overestimate); failure throws gate_violation.
SobolevPair hoffman_spruck_check(const ImmersedMesh& mesh, const ConformalAmbient& a,
                                 std::span<const double> f, double alpha,
                                 bool strict = false);

/// Weighted-manifold gate integrand, integrated with vertex quadrature:
///   int <x, Dpsi(x)>_delta e^{psi(x)} dmu_delta(x).
/// Sign >= 0 means the weighted-substitute hypothesis holds for this surface.
double weighted_gate(const ImmersedMesh& mesh,
                     const std::function<double(const Vec3&)>& psi,
                     const std::function<Vec3(const Vec3&)>& grad_psi);

}  // namespace confdiam

#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confdiam/vec3.hpp"

namespace confdiam {

enum class AmbientKind {
    Euclidean,
    HyperbolicBall,
    HyperbolicHalfSpace,
    SphereStereographic,
    Custom,
};

const char* ambient_kind_name(AmbientKind kind);

/// Parses the CLI spelling: e3 | h3-ball | h3-half | s3.
AmbientKind ambient_kind_from_flag(const std::string& flag);

/// A conformally flat ambient metric g = e^{2 phi} delta on a chart domain
/// V in R^3, together with the curvature bound and injectivity radius the
/// gate conditions consume. Immutable after construction; safe to share
/// across threads.
///
/// Builtins:
///   Euclidean             phi = 0                      K = 0,  inj = inf
///   HyperbolicBall        phi = ln(2/(1-|p|^2)),|p|<1  K = -1, inj = inf
///   HyperbolicHalfSpace   phi = -ln z, z > 0           K = -1, inj = inf
///   SphereStereographic   phi = ln(2/(1+|p|^2))        K = +1, inj = pi
class ConformalAmbient {
public:
    using ScalarField = std::function<double(const Vec3&)>;
    using VectorField = std::function<Vec3(const Vec3&)>;
    using DomainTest = std::function<bool(const Vec3&)>;

    static ConformalAmbient euclidean();
    static ConformalAmbient hyperbolic_ball();
    static ConformalAmbient hyperbolic_half_space();
    static ConformalAmbient sphere_stereographic();
    static ConformalAmbient from_kind(AmbientKind kind);

    /// User-supplied conformal factor. grad_phi is checked against a central
    /// finite difference of phi at the probe points (relative tolerance 1e-6)
    /// and construction fails if they disagree.
    static ConformalAmbient custom(ScalarField phi, VectorField grad_phi, double K_upper,
                                   double inj_radius, DomainTest domain,
                                   std::span<const Vec3> probe_points);

    AmbientKind kind() const { return kind_; }
    double K_upper() const { return K_upper_; }
    double inj_radius() const { return inj_radius_; }

    /// Log-conformal factor phi(p). Precondition: p in V (not rechecked here;
    /// the mesh-level operations validate domain membership up front).
    double phi(const Vec3& p) const;
    Vec3 grad_phi(const Vec3& p) const;
    /// e^{phi(p)}
    double conformal_factor(const Vec3& p) const;
    bool contains(const Vec3& p) const;

    /// Throws Errc::domain_error if p lies outside V.
    void require_inside(const Vec3& p) const;

private:
    ConformalAmbient() = default;

    AmbientKind kind_ = AmbientKind::Euclidean;
    double K_upper_ = 0.0;
    double inj_radius_ = std::numeric_limits<double>::infinity();
    ScalarField custom_phi_;
    VectorField custom_grad_;
    DomainTest custom_domain_;
};

/// |v|_g at p, i.e. e^{phi(p)} |v|_delta.
double conformal_norm(const ConformalAmbient& a, const Vec3& p, const Vec3& v);

struct CurveLengthOptions {
    int quad_order = 2;   // Gauss points per segment
    bool closed = false;  // append the closing segment
};

/// Length of a polyline in the conformal metric: per segment, Gauss
/// quadrature of e^{phi} along the Euclidean chord times chord length.
/// Requires >= 2 points, all inside V, consecutive points distinct.
double curve_length(const ConformalAmbient& a, std::span<const Vec3> points,
                    const CurveLengthOptions& opts = {});

/// Geodesic distance between chart points in the model geometry. Closed forms
/// per builtin kind; Custom is unsupported.
double ambient_distance(const ConformalAmbient& a, const Vec3& p, const Vec3& q);

}  // namespace confdiam

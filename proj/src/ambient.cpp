#include "confdiam/ambient.hpp"

#include <cmath>
#include <sstream>

#include "confdiam/error.hpp"
#include "confdiam/gauss.hpp"

namespace confdiam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGradCheckRelTol = 1e-6;

Vec3 fd_gradient(const ConformalAmbient::ScalarField& phi, const Vec3& p) {
    const double h = 1e-6 * (1.0 + norm(p));
    const auto d = [&](Vec3 dp) { return (phi(p + dp) - phi(p - dp)) / (2.0 * h); };
    return {d({h, 0, 0}), d({0, h, 0}), d({0, 0, h})};
}

}  // namespace

const char* ambient_kind_name(AmbientKind kind) {
    switch (kind) {
        case AmbientKind::Euclidean: return "e3";
        case AmbientKind::HyperbolicBall: return "h3-ball";
        case AmbientKind::HyperbolicHalfSpace: return "h3-half";
        case AmbientKind::SphereStereographic: return "s3";
        case AmbientKind::Custom: return "custom";
    }
    return "unknown";
}

AmbientKind ambient_kind_from_flag(const std::string& flag) {
    if (flag == "e3" || flag == "euclidean") return AmbientKind::Euclidean;
    if (flag == "h3-ball") return AmbientKind::HyperbolicBall;
    if (flag == "h3-half") return AmbientKind::HyperbolicHalfSpace;
    if (flag == "s3") return AmbientKind::SphereStereographic;
    fail(Errc::invalid_input, "unknown ambient '" + flag + "' (expected e3|h3-ball|h3-half|s3)");
}

ConformalAmbient ConformalAmbient::euclidean() {
    ConformalAmbient a;
    a.kind_ = AmbientKind::Euclidean;
    a.K_upper_ = 0.0;
    a.inj_radius_ = kInf;
    return a;
}

ConformalAmbient ConformalAmbient::hyperbolic_ball() {
    ConformalAmbient a;
    a.kind_ = AmbientKind::HyperbolicBall;
    a.K_upper_ = -1.0;
    a.inj_radius_ = kInf;
    return a;
}

ConformalAmbient ConformalAmbient::hyperbolic_half_space() {
    ConformalAmbient a;
    a.kind_ = AmbientKind::HyperbolicHalfSpace;
    a.K_upper_ = -1.0;
    a.inj_radius_ = kInf;
    return a;
}

ConformalAmbient ConformalAmbient::sphere_stereographic() {
    ConformalAmbient a;
    a.kind_ = AmbientKind::SphereStereographic;
    a.K_upper_ = 1.0;
    a.inj_radius_ = 3.14159265358979323846;
    return a;
}

ConformalAmbient ConformalAmbient::from_kind(AmbientKind kind) {
    switch (kind) {
        case AmbientKind::Euclidean: return euclidean();
        case AmbientKind::HyperbolicBall: return hyperbolic_ball();
        case AmbientKind::HyperbolicHalfSpace: return hyperbolic_half_space();
        case AmbientKind::SphereStereographic: return sphere_stereographic();
        case AmbientKind::Custom:
            fail(Errc::invalid_input, "Custom ambients require explicit fields");
    }
    fail(Errc::invalid_input, "bad ambient kind");
}

ConformalAmbient ConformalAmbient::custom(ScalarField phi, VectorField grad_phi, double K_upper,
                                          double inj_radius, DomainTest domain,
                                          std::span<const Vec3> probe_points) {
    if (!phi || !grad_phi) fail(Errc::invalid_input, "custom ambient: phi and grad_phi required");
    ConformalAmbient a;
    a.kind_ = AmbientKind::Custom;
    a.K_upper_ = K_upper;
    a.inj_radius_ = inj_radius;
    a.custom_phi_ = std::move(phi);
    a.custom_grad_ = std::move(grad_phi);
    a.custom_domain_ = std::move(domain);

    for (const Vec3& p : probe_points) {
        if (!a.contains(p)) fail(Errc::domain_error, "custom ambient: probe point outside domain");
        const Vec3 g = a.custom_grad_(p);
        const Vec3 fd = fd_gradient(a.custom_phi_, p);
        const double scale = std::max({1.0, norm(g), norm(fd)});
        if (norm(g - fd) > kGradCheckRelTol * scale) {
            std::ostringstream msg;
            msg << "custom ambient: grad_phi disagrees with finite difference of phi at " << p;
            fail(Errc::invalid_input, msg.str());
        }
    }
    return a;
}

double ConformalAmbient::phi(const Vec3& p) const {
    switch (kind_) {
        case AmbientKind::Euclidean:
            return 0.0;
        case AmbientKind::HyperbolicBall:
            return std::log(2.0 / (1.0 - norm2(p)));
        case AmbientKind::HyperbolicHalfSpace:
            return -std::log(p.z);
        case AmbientKind::SphereStereographic:
            return std::log(2.0 / (1.0 + norm2(p)));
        case AmbientKind::Custom:
            return custom_phi_(p);
    }
    return 0.0;
}

Vec3 ConformalAmbient::grad_phi(const Vec3& p) const {
    switch (kind_) {
        case AmbientKind::Euclidean:
            return {0, 0, 0};
        case AmbientKind::HyperbolicBall:
            return p * (2.0 / (1.0 - norm2(p)));
        case AmbientKind::HyperbolicHalfSpace:
            return {0, 0, -1.0 / p.z};
        case AmbientKind::SphereStereographic:
            return p * (-2.0 / (1.0 + norm2(p)));
        case AmbientKind::Custom:
            return custom_grad_(p);
    }
    return {0, 0, 0};
}

double ConformalAmbient::conformal_factor(const Vec3& p) const { return std::exp(phi(p)); }

bool ConformalAmbient::contains(const Vec3& p) const {
    switch (kind_) {
        case AmbientKind::Euclidean:
            return true;
        case AmbientKind::HyperbolicBall:
            return norm2(p) < 1.0;
        case AmbientKind::HyperbolicHalfSpace:
            return p.z > 0.0;
        case AmbientKind::SphereStereographic:
            // The chart is taken to cover all of R^3; the factor is smooth there.
            return true;
        case AmbientKind::Custom:
            return custom_domain_ ? custom_domain_(p) : true;
    }
    return false;
}

void ConformalAmbient::require_inside(const Vec3& p) const {
    if (!contains(p)) {
        std::ostringstream msg;
        msg << "point " << p << " outside the " << ambient_kind_name(kind_) << " chart domain";
        fail(Errc::domain_error, msg.str());
    }
}

double conformal_norm(const ConformalAmbient& a, const Vec3& p, const Vec3& v) {
    a.require_inside(p);
    return a.conformal_factor(p) * norm(v);
}

double curve_length(const ConformalAmbient& a, std::span<const Vec3> points,
                    const CurveLengthOptions& opts) {
    if (points.size() < 2) fail(Errc::invalid_input, "curve_length: need at least 2 points");
    for (const Vec3& p : points) a.require_inside(p);
    const auto rule = gauss_rule(opts.quad_order);

    const size_t n = points.size();
    const size_t segments = opts.closed ? n : n - 1;
    double total = 0.0;
    for (size_t i = 0; i < segments; ++i) {
        const Vec3& p = points[i];
        const Vec3& q = points[(i + 1) % n];
        const double chord = distance(p, q);
        if (chord == 0.0) fail(Errc::invalid_input, "curve_length: repeated consecutive point");
        double factor = 0.0;
        for (const GaussPoint& gp : rule) factor += gp.weight * a.conformal_factor(p + (q - p) * gp.node);
        total += factor * chord;
    }
    return total;
}

double ambient_distance(const ConformalAmbient& a, const Vec3& p, const Vec3& q) {
    a.require_inside(p);
    a.require_inside(q);
    switch (a.kind()) {
        case AmbientKind::Euclidean:
            return distance(p, q);
        case AmbientKind::HyperbolicBall: {
            const double num = 2.0 * norm2(p - q);
            const double den = (1.0 - norm2(p)) * (1.0 - norm2(q));
            return std::acosh(1.0 + num / den);
        }
        case AmbientKind::HyperbolicHalfSpace:
            return std::acosh(1.0 + norm2(p - q) / (2.0 * p.z * q.z));
        case AmbientKind::SphereStereographic: {
            // Inverse stereographic images on the unit 3-sphere:
            // X(p) = (2p, |p|^2 - 1) / (1 + |p|^2). The angle between unit
            // vectors via atan2(|u-v|, |u+v|) is stable at both ends.
            const double ap = 1.0 + norm2(p), aq = 1.0 + norm2(q);
            const Vec3 d3 = p * (2.0 / ap) - q * (2.0 / aq);
            const Vec3 s3 = p * (2.0 / ap) + q * (2.0 / aq);
            const double d4 = (norm2(p) - 1.0) / ap - (norm2(q) - 1.0) / aq;
            const double s4 = (norm2(p) - 1.0) / ap + (norm2(q) - 1.0) / aq;
            const double diff = std::sqrt(norm2(d3) + d4 * d4);
            const double sum = std::sqrt(norm2(s3) + s4 * s4);
            return 2.0 * std::atan2(diff, sum);
        }
        case AmbientKind::Custom:
            fail(Errc::unsupported, "ambient_distance is not defined for Custom ambients");
    }
    return 0.0;
}

}  // namespace confdiam

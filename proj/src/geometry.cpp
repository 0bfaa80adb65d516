#include "exitbound/geometry.hpp"

#include "exitbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace exitbound {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(const DomainSpec& domain, const Point& x) {
    if (static_cast<int>(x.size()) != domain.d) {
        throw GeometryError("point dimension " + std::to_string(x.size()) + " does not match domain dimension "
                            + std::to_string(domain.d));
    }
}

// Cone {x1 >= |x| cos(omega)} in the leading `dim` coordinates of x.
struct ConeView {
    double axial;  // x1
    double perp;   // norm of (x2, ..., x_dim)
    double radius; // norm of (x1, ..., x_dim)
    double theta;  // polar angle from +e1, in [0, pi]
};

ConeView cone_view(const Point& x, int dim) {
    double perp2 = 0.0;
    for (int i = 1; i < dim; ++i) perp2 += x[i] * x[i];
    ConeView v;
    v.axial = x[0];
    v.perp = std::sqrt(perp2);
    v.radius = std::sqrt(perp2 + x[0] * x[0]);
    v.theta = std::atan2(v.perp, v.axial);
    return v;
}

bool in_cone(const ConeView& v, double omega) {
    return v.radius == 0.0 || v.theta <= omega;
}

// Distance from a point outside the cone to the (infinite) cone surface.
double cone_surface_distance(const ConeView& v, double omega) {
    const double gap = v.theta - omega;
    if (gap <= 0.0) return 0.0;
    if (gap >= kPi / 2.0) return v.radius;
    return v.radius * std::sin(gap);
}

// Nearest point on the cone surface, written into the leading `dim` coordinates of out.
void cone_surface_projection(const Point& x, const ConeView& v, double omega, int dim, Point& out) {
    const double gap = v.theta - omega;
    if (gap >= kPi / 2.0) {
        for (int i = 0; i < dim; ++i) out[i] = 0.0;
        return;
    }
    const double s = v.radius * std::cos(std::max(gap, 0.0));
    out[0] = s * std::cos(omega);
    const double lateral = s * std::sin(omega);
    if (v.perp > 0.0) {
        for (int i = 1; i < dim; ++i) out[i] = lateral * x[i] / v.perp;
    } else {
        for (int i = 1; i < dim; ++i) out[i] = 0.0;
        if (dim > 1) out[1] = lateral;
    }
}

double cone_domain_dist(const Point& x, int dim, double omega, double r) {
    const ConeView v = cone_view(x, dim);
    return std::min(r - v.radius, cone_surface_distance(v, omega));
}

bool cone_domain_contains(const Point& x, int dim, double omega, double r) {
    const ConeView v = cone_view(x, dim);
    return v.radius < r && !in_cone(v, omega);
}

} // namespace

double norm(const Point& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
}

double distance(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] - y[i];
        s += t * t;
    }
    return std::sqrt(s);
}

DomainSpec DomainSpec::ball(Point center, double radius) {
    DomainSpec s;
    s.kind = DomainKind::Ball;
    s.d = static_cast<int>(center.size());
    s.center = std::move(center);
    s.R = radius;
    s.validate();
    return s;
}

DomainSpec DomainSpec::annulus(Point center, double r, double R) {
    DomainSpec s;
    s.kind = DomainKind::Annulus;
    s.d = static_cast<int>(center.size());
    s.center = std::move(center);
    s.r = r;
    s.R = R;
    s.validate();
    return s;
}

DomainSpec DomainSpec::ball_minus_cone(int d, double omega, double r) {
    DomainSpec s;
    s.kind = DomainKind::BallMinusCone;
    s.d = d;
    s.center = Point(static_cast<std::size_t>(std::max(d, 0)), 0.0);
    s.omega = omega;
    s.r = r;
    s.validate();
    return s;
}

DomainSpec DomainSpec::cylinder_minus_wedge(double omega, double r, double l) {
    DomainSpec s;
    s.kind = DomainKind::CylinderMinusWedge;
    s.d = 3;
    s.center = Point(3, 0.0);
    s.omega = omega;
    s.r = r;
    s.l = l;
    s.validate();
    return s;
}

void DomainSpec::validate() const {
    if (static_cast<int>(center.size()) != d) throw GeometryError("center dimension does not match d");
    switch (kind) {
    case DomainKind::Ball:
        if (d < 1) throw GeometryError("ball: d must be >= 1");
        if (!(R > 0.0)) throw GeometryError("ball: radius must be > 0");
        break;
    case DomainKind::Annulus:
        if (d < 2) throw GeometryError("annulus: d must be >= 2");
        if (!(r > 0.0)) throw GeometryError("annulus: inner radius must be > 0");
        if (!(r < R)) throw GeometryError("annulus: requires r < R");
        break;
    case DomainKind::BallMinusCone:
        if (d < 2) throw GeometryError("ball_minus_cone: d must be >= 2");
        if (!(r > 0.0)) throw GeometryError("ball_minus_cone: radius must be > 0");
        if (!(omega >= 0.0 && omega <= kPi / 2.0)) throw GeometryError("ball_minus_cone: omega must lie in [0, pi/2]");
        break;
    case DomainKind::CylinderMinusWedge:
        if (d != 3) throw GeometryError("cylinder_minus_wedge: d must be 3");
        if (!(r > 0.0)) throw GeometryError("cylinder_minus_wedge: radius must be > 0");
        if (!(l > 0.0)) throw GeometryError("cylinder_minus_wedge: length must be > 0");
        if (!(omega >= 0.0 && omega <= kPi / 2.0)) {
            throw GeometryError("cylinder_minus_wedge: omega must lie in [0, pi/2]");
        }
        break;
    }
}

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::Ball: return "ball";
    case DomainKind::Annulus: return "annulus";
    case DomainKind::BallMinusCone: return "ball_minus_cone";
    case DomainKind::CylinderMinusWedge: return "cylinder_minus_wedge";
    }
    return "unknown";
}

DomainKind parse_domain_kind(const std::string& name) {
    if (name == "ball") return DomainKind::Ball;
    if (name == "annulus") return DomainKind::Annulus;
    if (name == "ball_minus_cone") return DomainKind::BallMinusCone;
    if (name == "cylinder_minus_wedge") return DomainKind::CylinderMinusWedge;
    throw GeometryError("unknown domain kind '" + name + "'");
}

std::string describe(const DomainSpec& domain) {
    std::ostringstream os;
    os.precision(6);
    switch (domain.kind) {
    case DomainKind::Ball: os << "Ball(R=" << domain.R << ",d=" << domain.d << ")"; break;
    case DomainKind::Annulus: os << "Annulus(r=" << domain.r << ",R=" << domain.R << ",d=" << domain.d << ")"; break;
    case DomainKind::BallMinusCone:
        os << "BallMinusCone(omega=" << domain.omega << ",r=" << domain.r << ",d=" << domain.d << ")";
        break;
    case DomainKind::CylinderMinusWedge:
        os << "CylinderMinusWedge(omega=" << domain.omega << ",r=" << domain.r << ",l=" << domain.l << ")";
        break;
    }
    return os.str();
}

std::string to_string(BoundaryLabel label) {
    return label == BoundaryLabel::Gamma0 ? "Gamma0" : "Gamma1";
}

bool contains(const DomainSpec& domain, const Point& x) {
    check_dim(domain, x);
    switch (domain.kind) {
    case DomainKind::Ball: return distance(x, domain.center) < domain.R;
    case DomainKind::Annulus: {
        const double rho = distance(x, domain.center);
        return rho > domain.r && rho < domain.R;
    }
    case DomainKind::BallMinusCone: return cone_domain_contains(x, domain.d, domain.omega, domain.r);
    case DomainKind::CylinderMinusWedge:
        return std::fabs(x[2]) < 0.5 * domain.l && cone_domain_contains(x, 2, domain.omega, domain.r);
    }
    return false;
}

double dist_to_boundary_unchecked(const DomainSpec& domain, const Point& x) {
    switch (domain.kind) {
    case DomainKind::Ball: return domain.R - distance(x, domain.center);
    case DomainKind::Annulus: {
        const double rho = distance(x, domain.center);
        return std::min(rho - domain.r, domain.R - rho);
    }
    case DomainKind::BallMinusCone: return cone_domain_dist(x, domain.d, domain.omega, domain.r);
    case DomainKind::CylinderMinusWedge:
        return std::min(cone_domain_dist(x, 2, domain.omega, domain.r), 0.5 * domain.l - std::fabs(x[2]));
    }
    return 0.0;
}

double dist_to_boundary(const DomainSpec& domain, const Point& x) {
    check_dim(domain, x);
    const double dist = dist_to_boundary_unchecked(domain, x);
    if (!contains(domain, x)) {
        if (std::fabs(dist) <= boundary_tolerance(domain)) return 0.0;
        throw GeometryError("dist_to_boundary: point lies outside the closure of " + describe(domain));
    }
    return dist;
}

Point nearest_boundary_point(const DomainSpec& domain, const Point& x) {
    check_dim(domain, x);
    Point out = x;
    auto radial = [&](const Point& c, double radius) {
        const double rho = distance(x, c);
        if (rho == 0.0) {
            out = c;
            out[0] += radius;
            return;
        }
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = c[i] + radius * (x[i] - c[i]) / rho;
    };
    switch (domain.kind) {
    case DomainKind::Ball: radial(domain.center, domain.R); break;
    case DomainKind::Annulus: {
        const double rho = distance(x, domain.center);
        radial(domain.center, (rho - domain.r <= domain.R - rho) ? domain.r : domain.R);
        break;
    }
    case DomainKind::BallMinusCone: {
        const ConeView v = cone_view(x, domain.d);
        if (domain.r - v.radius <= cone_surface_distance(v, domain.omega)) {
            radial(domain.center, domain.r);
        } else {
            cone_surface_projection(x, v, domain.omega, domain.d, out);
        }
        break;
    }
    case DomainKind::CylinderMinusWedge: {
        const ConeView v = cone_view(x, 2);
        const double to_cap = 0.5 * domain.l - std::fabs(x[2]);
        const double to_sphere = domain.r - v.radius;
        const double to_cone = cone_surface_distance(v, domain.omega);
        if (to_cap <= std::min(to_sphere, to_cone)) {
            out[2] = std::copysign(0.5 * domain.l, x[2]);
        } else if (to_sphere <= to_cone) {
            out[0] = domain.r * x[0] / v.radius;
            out[1] = domain.r * x[1] / v.radius;
        } else {
            cone_surface_projection(x, v, domain.omega, 2, out);
        }
        break;
    }
    }
    return out;
}

double diameter(const DomainSpec& domain) {
    switch (domain.kind) {
    case DomainKind::Ball: return 2.0 * domain.R;
    case DomainKind::Annulus: return 2.0 * domain.R;
    case DomainKind::BallMinusCone: return 2.0 * domain.r;
    case DomainKind::CylinderMinusWedge: return std::sqrt(4.0 * domain.r * domain.r + domain.l * domain.l);
    }
    return 0.0;
}

double boundary_tolerance(const DomainSpec& domain) {
    return 1e-9 * diameter(domain);
}

BoundaryClass classify_boundary(const DomainSpec& domain, const Point& y, const DecompositionSpec& decomposition) {
    check_dim(domain, y);
    const double tol = boundary_tolerance(domain);
    if (std::fabs(dist_to_boundary_unchecked(domain, y)) > tol) {
        throw GeometryError("classify_boundary: point is farther than the classification tolerance from the boundary");
    }
    switch (decomposition.kind) {
    case Decomposition::Whole: return {BoundaryLabel::Gamma0, "whole boundary is Gamma0"};
    case Decomposition::LocalBall:
        if (norm(y) < decomposition.r0) return {BoundaryLabel::Gamma0, "boundary inside B(0,r0)"};
        return {BoundaryLabel::Gamma1, "boundary outside B(0,r0)"};
    case Decomposition::InnerSphere: {
        if (domain.kind != DomainKind::Annulus) throw GeometryError("inner-sphere decomposition needs an annulus");
        const double rho = distance(y, domain.center);
        if (std::fabs(rho - domain.r) <= tol) return {BoundaryLabel::Gamma0, "inner sphere"};
        return {BoundaryLabel::Gamma1, "outer sphere"};
    }
    case Decomposition::ConeFaces: {
        if (domain.kind == DomainKind::BallMinusCone) {
            const ConeView v = cone_view(y, domain.d);
            if (domain.r - v.radius <= tol) return {BoundaryLabel::Gamma1, "outer sphere"};
            return {BoundaryLabel::Gamma0, "cone lateral surface"};
        }
        if (domain.kind == DomainKind::CylinderMinusWedge) {
            const ConeView v = cone_view(y, 2);
            if (0.5 * domain.l - std::fabs(y[2]) <= tol) return {BoundaryLabel::Gamma1, "end cap"};
            if (domain.r - v.radius <= tol) return {BoundaryLabel::Gamma1, "outer cylinder"};
            return {BoundaryLabel::Gamma0, "wedge lateral face"};
        }
        throw GeometryError("cone-face decomposition needs a cone or wedge domain");
    }
    }
    throw GeometryError("classify_boundary: unknown decomposition");
}

Point anchor_point(const DomainSpec& domain, const Point& x) {
    check_dim(domain, x);
    switch (domain.kind) {
    case DomainKind::Annulus: {
        const double rho = distance(x, domain.center);
        if (rho == 0.0) throw GeometryError("anchor_point: point at the annulus center");
        Point out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = domain.center[i] + domain.r * (x[i] - domain.center[i]) / rho;
        return out;
    }
    case DomainKind::BallMinusCone:
    case DomainKind::CylinderMinusWedge: return Point(x.size(), 0.0);
    case DomainKind::Ball: return nearest_boundary_point(domain, x);
    }
    return x;
}

} // namespace exitbound

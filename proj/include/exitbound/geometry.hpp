#pragma once

#include <string>
#include <vector>

namespace exitbound {

using Point = std::vector<double>;

enum class DomainKind { Ball, Annulus, BallMinusCone, CylinderMinusWedge };

// Parametric benchmark domain.
//  Ball:               B(center, R)
//  Annulus:            {r < |x - center| < R}
//  BallMinusCone:      B(0, r) minus the closed cone {x1 >= |x| cos(omega)}, axis +e1
//  CylinderMinusWedge: (2D ball-minus-cone in (x1, x2)) x (-l/2, l/2), d = 3
struct DomainSpec {
    DomainKind kind = DomainKind::Ball;
    int d = 2;
    Point center;
    double r = 0.0;
    double R = 0.0;
    double omega = 0.0;
    double l = 0.0;

    static DomainSpec ball(Point center, double radius);
    static DomainSpec annulus(Point center, double r, double R);
    static DomainSpec ball_minus_cone(int d, double omega, double r);
    static DomainSpec cylinder_minus_wedge(double omega, double r, double l);

    void validate() const;
    bool operator==(const DomainSpec&) const = default;
};

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string& name);
std::string describe(const DomainSpec& domain);

enum class BoundaryLabel { Gamma0, Gamma1 };

// Which splitting of the boundary into Gamma0 / Gamma1 is used.
//  Whole:       Gamma0 = whole boundary
//  ConeFaces:   Gamma0 = lateral surface (and vertex/edge) of the removed cone or wedge
//  InnerSphere: Gamma0 = inner sphere of an annulus
//  LocalBall:   Gamma0 = boundary inside the open ball B(0, r0)
enum class Decomposition { Whole, ConeFaces, InnerSphere, LocalBall };

struct DecompositionSpec {
    Decomposition kind = Decomposition::Whole;
    double r0 = 0.0;
};

struct BoundaryClass {
    BoundaryLabel label = BoundaryLabel::Gamma0;
    std::string description;
};

std::string to_string(BoundaryLabel label);

bool contains(const DomainSpec& domain, const Point& x);

// Exact distance to the boundary; requires x in the closure of the domain.
double dist_to_boundary(const DomainSpec& domain, const Point& x);

// Distance to the boundary without the membership check (0 outside is not guaranteed).
double dist_to_boundary_unchecked(const DomainSpec& domain, const Point& x);

// Closest boundary point to an interior (or boundary) point.
Point nearest_boundary_point(const DomainSpec& domain, const Point& x);

BoundaryClass classify_boundary(const DomainSpec& domain, const Point& y, const DecompositionSpec& decomposition);

double diameter(const DomainSpec& domain);

// Boundary classification tolerance, 1e-9 * diameter.
double boundary_tolerance(const DomainSpec& domain);

// Boundary point x0 about which one-point bounds are stated: the touching point on
// the inner sphere for an annulus, the vertex for cones and wedges, the nearest
// boundary point for a ball.
Point anchor_point(const DomainSpec& domain, const Point& x);

double norm(const Point& x);
double distance(const Point& x, const Point& y);

} // namespace exitbound

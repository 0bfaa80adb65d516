#pragma once

#include "exitbound/constants.hpp"
#include "exitbound/geometry.hpp"

#include <map>
#include <optional>
#include <string>

namespace exitbound {

// An evaluated analytic bound at a point.
struct BoundCertificate {
    double value = 0.0;           // reported bound: min(theorem_value, uniform_value)
    double theorem_value = 0.0;   // right-hand side of the displayed inequality
    std::optional<double> uniform_value; // trivially valid fallback, when one exists
    std::string theorem;
    std::string regime;
    std::map<std::string, double> constants;
    bool valid = true;
};

// Exterior condition satisfied at x0 = origin (or, for Sphere, at the touching point).
enum class ConditionKind { Uniform, Sphere, Cone2d, Wedge3d, ConeHD };

struct Condition {
    ConditionKind kind = ConditionKind::Uniform;
    int d = 2;
    double r = 0.0;     // sphere: inner radius; cone/wedge: cone radius
    double R = 0.0;     // sphere: outer radius
    double omega = 0.0; // cone/wedge angle
    double l = 0.0;     // wedge length
    double r0 = 0.0;    // cone d >= 3: localisation radius
    double diam = 0.0;  // diameter of D
    std::optional<double> delta; // cone d >= 3: contraction factor (default: delta_omega_bound)
    bool uniform = false;        // condition holds at every boundary point
};

std::string to_string(ConditionKind kind);
ConditionKind parse_condition_kind(const std::string& name);

// The exterior condition realized by one of the benchmark domains.
Condition condition_for(const DomainSpec& domain);

struct DataSpec {
    std::optional<double> g_seminorm; // |g|_alpha or |g|_alpha^{x0}
    std::optional<double> g_sup_gap;  // sup over Gamma1 of |g - g(x0)|
    std::optional<double> f_norm;     // ||f||_gamma (||f||_inf when gamma = inf)
    bool operator==(const DataSpec&) const = default;
};

BoundCertificate lower_bound_v(const DomainSpec& domain, const Point& x, double alpha, Policy policy);
BoundCertificate uniform_bound_v(const DomainSpec& domain, double alpha, Policy policy = Policy::Canonical);

// Bound on v_{D, alpha/2} for D inside an annulus A(a, r, R) touching the inner sphere.
BoundCertificate bound_v_annulus(const DomainSpec& annulus, const Point& x, double alpha, Policy policy);

// Bound on u_f for f = 1 (i.e. v_D) near the inner sphere of an annulus.
BoundCertificate bound_vD_annulus(const DomainSpec& annulus, const Point& x);

BoundCertificate bound_h_cone2d(double omega, double r, const Point& x);
BoundCertificate bound_v_cone2d(double omega, double r, double diam, const Point& x, double alpha, Policy policy);
BoundCertificate bound_h_wedge3d(double omega, double r, double l, const Point& x);
BoundCertificate bound_v_wedge3d(double omega, double r, double l, double diam, const Point& x, double alpha,
                                 Policy policy);

// Closed-form solution of Phi(r) <= c r^a + delta Phi(2r), Phi <= phi_sup.
double reverse_doubling_solve(double c, double a, double delta, double r0, double phi_sup, double r);

struct HVCertificates {
    BoundCertificate h;
    BoundCertificate v;
};

HVCertificates bound_vh_reverse_doubling(int d, const Point& x, double alpha, double delta, double r0, double diam,
                                         Policy policy);

// One-point (about x0 = origin) or two-point (x = difference vector) Hoelder bound for u_g.
BoundCertificate bound_ug(const Condition& cond, const Point& x, const HolderParams& params, const DataSpec& data,
                          Policy policy, bool two_point = false);

// |u_g(x) - g(x0)| <= sup_{Gamma1} |g - g(x0)| h_{D,Gamma0}(x) when g = g(x0) on Gamma0.
BoundCertificate bound_ug_partial(const BoundCertificate& h_certificate, const DataSpec& data);

BoundCertificate bound_uf(const Condition& cond, const Point& x, const HolderParams& params, const DataSpec& data,
                          Policy policy);

// Gradient bound at an interior point with dist(x, boundary) = dist.
BoundCertificate bound_gradient(const Condition& cond, double dist, const HolderParams& params, const DataSpec& data,
                                Policy policy);

// Green function bound G_D(x, y) given dist(y, boundary) and |x - y|.
BoundCertificate bound_green(const Condition& cond, double dist_y, double dist_xy, const HolderParams& params,
                             Policy policy);

} // namespace exitbound

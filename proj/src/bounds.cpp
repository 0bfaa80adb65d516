#include "exitbound/bounds.hpp"

#include "exitbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exitbound {

namespace {

constexpr double kE = std::numbers::e;

double pos(double t) { return t > 0.0 ? t : 0.0; }

BoundCertificate make(std::string theorem, std::string regime, double theorem_value,
                      std::optional<double> uniform = std::nullopt) {
    BoundCertificate c;
    c.theorem = std::move(theorem);
    c.regime = std::move(regime);
    c.theorem_value = theorem_value;
    c.uniform_value = uniform;
    c.value = uniform ? std::min(theorem_value, *uniform) : theorem_value;
    c.valid = true;
    return c;
}

void require_open_unit_alpha(double alpha, const char* what) {
    if (alpha == 1.0) throw DomainError(std::string(what) + ": hypothesis 0 < alpha != 1 violated");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(what) + ": hypothesis 0 < alpha < 1 violated");
}

void require_alpha_not_one(double alpha, const char* what) {
    if (!(alpha > 0.0)) throw DomainError(std::string(what) + ": requires alpha > 0");
    if (alpha == 1.0) throw DomainError(std::string(what) + ": hypothesis 0 < alpha != 1 violated");
}

void require_dim(const Point& x, std::size_t d, const char* what) {
    if (x.size() != d) throw GeometryError(std::string(what) + ": expected a point of dimension " + std::to_string(d));
}

double planar_norm(const Point& x) { return std::hypot(x[0], x[1]); }

// Exponent profile (s/r)^w log(r/s).
double log_profile(double s, double r, double w) { return std::pow(s / r, w) * std::log(r / s); }

double uniform_v_half(int d, double diam, double alpha, Policy policy) {
    return uniform_moment_constant(alpha / 2.0, d, policy) * std::pow(diam, alpha);
}

// General u_g estimate fed with the uniform moment bound.
double ug_uniform(const Condition& cond, double s, double alpha, double g, Policy policy) {
    return g * std::pow(2.0, pos(alpha - 1.0))
           * (multidim_bdg_constant(alpha, cond.d, policy) * uniform_v_half(cond.d, cond.diam, alpha, policy)
              + std::pow(s, alpha));
}

double cone_threshold(double r, double omega) { return r * std::exp(-1.0 / tilde_omega(omega)); }

double theta_profile(const Condition& cond, double s, double delta, Policy policy, std::string& regime) {
    const int d = cond.d;
    const double dd = static_cast<double>(d);
    if (s >= cond.r0 / 2.0) {
        regime = "far (|x| >= r0/2)";
        return cond.diam * cond.diam / dd * std::pow(2.0 / cond.r0, 2.0) * s * s;
    }
    const double c = reverse_doubling_c(d, 2.0, policy);
    const double ld = std::fabs(std::log2(delta));
    const double phi = std::pow(cond.diam, 4.0) / (delta * dd * dd);
    if (delta < 0.25) {
        regime = "near, delta < 1/4";
        return c * cond.r0 * cond.r0 / (1.0 - 4.0 * delta) * s * s + phi * std::pow(s, ld);
    }
    if (delta > 0.25) {
        regime = "near, delta > 1/4";
        return (c * cond.r0 * cond.r0 / (4.0 * delta - 1.0) + phi) * std::pow(s, ld);
    }
    regime = "near, delta = 1/4";
    return (c * cond.r0 * cond.r0 * std::fabs(std::log2(s)) + 4.0 * std::pow(cond.diam, 4.0) / (dd * dd)) * s * s;
}

double resolve_delta(const Condition& cond) {
    if (cond.delta) return *cond.delta;
    return delta_omega_bound(cond.omega, cond.d);
}

} // namespace

std::string to_string(ConditionKind kind) {
    switch (kind) {
    case ConditionKind::Uniform: return "uniform";
    case ConditionKind::Sphere: return "sphere";
    case ConditionKind::Cone2d: return "cone2d";
    case ConditionKind::Wedge3d: return "wedge3d";
    case ConditionKind::ConeHD: return "coneHD";
    }
    return "unknown";
}

ConditionKind parse_condition_kind(const std::string& name) {
    if (name == "uniform") return ConditionKind::Uniform;
    if (name == "sphere") return ConditionKind::Sphere;
    if (name == "cone2d") return ConditionKind::Cone2d;
    if (name == "wedge3d") return ConditionKind::Wedge3d;
    if (name == "coneHD") return ConditionKind::ConeHD;
    throw DomainError("unknown condition '" + name + "'");
}

Condition condition_for(const DomainSpec& domain) {
    Condition c;
    c.d = domain.d;
    c.diam = diameter(domain);
    switch (domain.kind) {
    case DomainKind::Ball: c.kind = ConditionKind::Uniform; break;
    case DomainKind::Annulus:
        c.kind = ConditionKind::Sphere;
        c.r = domain.r;
        c.R = domain.R;
        break;
    case DomainKind::BallMinusCone:
        c.kind = domain.d == 2 ? ConditionKind::Cone2d : ConditionKind::ConeHD;
        c.r = domain.r;
        c.r0 = domain.r;
        c.omega = domain.omega;
        break;
    case DomainKind::CylinderMinusWedge:
        c.kind = ConditionKind::Wedge3d;
        c.r = domain.r;
        c.l = domain.l;
        c.omega = domain.omega;
        break;
    }
    return c;
}

BoundCertificate lower_bound_v(const DomainSpec& domain, const Point& x, double alpha, Policy policy) {
    if (!(alpha > 0.0)) throw DomainError("lower_bound_v: requires alpha > 0");
    const double dist = dist_to_boundary(domain, x);
    const double C2a = bdg_constants(2.0 * alpha, policy).C_upper;
    const double denom = std::pow(static_cast<double>(domain.d), pos(alpha - 1.0)) * C2a;
    auto cert = make("lower_bound_moment", dist > 0.0 ? "interior" : "boundary", std::pow(dist, 2.0 * alpha) / denom);
    cert.constants["C_2alpha"] = C2a;
    return cert;
}

BoundCertificate uniform_bound_v(const DomainSpec& domain, double alpha, Policy policy) {
    const double C1 = uniform_moment_constant(alpha, domain.d, policy);
    auto cert = make("uniform_moment", "global", C1 * std::pow(diameter(domain), 2.0 * alpha));
    cert.constants["C1_alpha_d"] = C1;
    return cert;
}

BoundCertificate bound_v_annulus(const DomainSpec& annulus, const Point& x, double alpha, Policy policy) {
    if (annulus.kind != DomainKind::Annulus) throw GeometryError("bound_v_annulus: domain must be an annulus");
    require_open_unit_alpha(alpha, "bound_v_annulus");
    const double dist = dist_to_boundary(annulus, x);
    const int d = annulus.d;
    const double dd = static_cast<double>(d);
    const double diam = diameter(annulus);
    const double r = annulus.r;
    const double R = annulus.R;
    const double uniform = uniform_v_half(d, diam, alpha, policy);
    const double c = bdg_constants(alpha, policy).c_lower;
    if (dist < r / dd) {
        const double bracket = 4.0 / ((1.0 - alpha) * c) + std::pow((R - r) / r, alpha / 2.0) * std::pow(dd, alpha / 2.0);
        auto cert = make("exterior_sphere_moment", "near (dist < r/d)",
                         std::pow(dist, alpha) * std::exp(alpha) * bracket, uniform);
        cert.constants["c_alpha"] = c;
        return cert;
    }
    auto cert = make("exterior_sphere_moment", "far (dist >= r/d)",
                     std::pow(diam, alpha) * std::pow(dd, alpha / 2.0) / std::pow(r, alpha) * std::pow(dist, alpha),
                     uniform);
    return cert;
}

BoundCertificate bound_vD_annulus(const DomainSpec& annulus, const Point& x) {
    if (annulus.kind != DomainKind::Annulus) throw GeometryError("bound_vD_annulus: domain must be an annulus");
    const double dist = dist_to_boundary(annulus, x);
    const double uniform = uniform_moment_constant(1.0, annulus.d) * std::pow(diameter(annulus), 2.0);
    return make("annulus_exit_time", "global", dist * (annulus.R - annulus.r) * annulus.R / annulus.r, uniform);
}

BoundCertificate bound_h_cone2d(double omega, double r, const Point& x) {
    require_dim(x, 2, "bound_h_cone2d");
    if (!(omega > 0.0 && omega < std::numbers::pi)) throw DomainError("bound_h_cone2d: requires omega in (0, pi)");
    if (!(r > 0.0)) throw GeometryError("bound_h_cone2d: requires r > 0");
    const double s = planar_norm(x);
    const double w = tilde_omega(omega);
    if (!(s < cone_threshold(r, omega))) {
        throw RegimeError("bound_h_cone2d: not claimed here (requires |x| < r exp(-1/omega~))");
    }
    if (s == 0.0) return make("cone2d_harmonic_measure", "near", 0.0, 1.0);
    auto cert = make("cone2d_harmonic_measure", "near", w * log_profile(s, r, w), 1.0);
    cert.constants["omega_tilde"] = w;
    return cert;
}

BoundCertificate bound_v_cone2d(double omega, double r, double diam, const Point& x, double alpha, Policy policy) {
    require_dim(x, 2, "bound_v_cone2d");
    require_alpha_not_one(alpha, "bound_v_cone2d");
    if (!(omega > 0.0 && omega <= std::numbers::pi / 2.0)) {
        throw DomainError("bound_v_cone2d: requires omega in (0, pi/2]");
    }
    const double s = planar_norm(x);
    const double w = tilde_omega(omega);
    const double uniform = uniform_v_half(2, diam, alpha, policy);
    if (s < cone_threshold(r, omega)) {
        const double C3 = cone_C3(alpha, omega, r, policy);
        const double C4 = cone_C4(alpha, omega, r, diam, policy);
        const double m = std::min(1.0, alpha);
        const double value = s == 0.0 ? 0.0
                                      : C3 * std::pow(s / r, m * w) * std::pow(std::log(r / s), m)
                                            + C4 * log_profile(s, r, w);
        auto cert = make("cone2d_moment", "near (|x| < r exp(-1/omega~))", value, uniform);
        cert.constants["C3"] = C3;
        cert.constants["C4"] = C4;
        return cert;
    }
    const double C1 = uniform_moment_constant(alpha / 2.0, 2, policy);
    auto cert = make("cone2d_moment", "far (|x| >= r exp(-1/omega~))",
                     C1 * std::pow(diam, alpha) * kE * std::pow(s / r, w), uniform);
    cert.constants["C1_half_alpha_d"] = C1;
    return cert;
}

BoundCertificate bound_h_wedge3d(double omega, double r, double l, const Point& x) {
    require_dim(x, 3, "bound_h_wedge3d");
    if (!(omega >= 0.0 && omega < std::numbers::pi)) throw DomainError("bound_h_wedge3d: requires omega in [0, pi)");
    if (!(r > 0.0) || !(l > 0.0)) throw GeometryError("bound_h_wedge3d: requires r, l > 0");
    const double s = planar_norm(x);
    const double w = tilde_omega(omega);
    if (!(s <= cone_threshold(r, omega))) {
        throw RegimeError("bound_h_wedge3d: not claimed here (requires |x_(1)| <= r exp(-1/omega~))");
    }
    if (s == 0.0) return make("wedge3d_harmonic_measure", "near", 0.0, 1.0);
    auto cert = make("wedge3d_harmonic_measure", "near", w * log_profile(s, r, w), 1.0);
    cert.constants["omega_tilde"] = w;
    return cert;
}

BoundCertificate bound_v_wedge3d(double omega, double r, double l, double diam, const Point& x, double alpha,
                                 Policy policy) {
    require_dim(x, 3, "bound_v_wedge3d");
    require_alpha_not_one(alpha, "bound_v_wedge3d");
    if (!(omega >= 0.0 && omega <= std::numbers::pi / 2.0)) {
        throw DomainError("bound_v_wedge3d: requires omega in [0, pi/2]");
    }
    const double s1 = planar_norm(x);
    const double w = tilde_omega(omega);
    const double uniform = uniform_v_half(3, diam, alpha, policy);
    if (s1 <= cone_threshold(r, omega) && std::fabs(x[2]) <= l) {
        const double C3 = cone_C3(alpha, omega, r, policy);
        const double C8 = wedge_C8(alpha, omega, r, l, diam, policy);
        const double m = std::min(1.0, alpha);
        const double value = s1 == 0.0 ? 0.0
                                       : C3 * std::pow(s1 / r, m * w) * std::pow(std::log(r / s1), m)
                                             + C8 * log_profile(s1, r, w);
        auto cert = make("wedge3d_moment", "near (|x_(1)| <= r exp(-1/omega~), |x_(2)| <= l)", value, uniform);
        cert.constants["C3"] = C3;
        cert.constants["C8"] = C8;
        return cert;
    }
    const double C1 = uniform_moment_constant(alpha / 2.0, 3, policy);
    auto cert = make("wedge3d_moment", "far", C1 * std::pow(diam, alpha) * std::max(kE, std::pow(r / l, w))
                                                  * std::pow(norm(x) / r, w),
                     uniform);
    cert.constants["C1_half_alpha_d"] = C1;
    return cert;
}

double reverse_doubling_solve(double c, double a, double delta, double r0, double phi_sup, double r) {
    if (!(c >= 0.0) || !(a >= 0.0) || !(phi_sup >= 0.0)) {
        throw DomainError("reverse_doubling_solve: requires c, a, phi_sup >= 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("reverse_doubling_solve: requires delta in (0,1)");
    if (!(r0 > 0.0)) throw DomainError("reverse_doubling_solve: requires r0 > 0");
    if (!(r >= 0.0) || r > r0 / 2.0) throw DomainError("reverse_doubling_solve: requires 0 <= r <= r0/2");
    const double two_a = std::pow(2.0, a);
    const double ld = std::fabs(std::log2(delta));
    const double cr = c * std::pow(r0, a);
    if (delta < 1.0 / two_a) return cr * std::pow(r, a) / (1.0 - two_a * delta) + std::pow(r, ld) * phi_sup / delta;
    if (delta > 1.0 / two_a) return (cr / (two_a * delta - 1.0) + phi_sup / delta) * std::pow(r, ld);
    if (r == 0.0) return 0.0;
    return (cr * std::log2(1.0 / r) + phi_sup / delta) * std::pow(r, a);
}

HVCertificates bound_vh_reverse_doubling(int d, const Point& x, double alpha, double delta, double r0, double diam,
                                         Policy policy) {
    require_dim(x, static_cast<std::size_t>(d), "bound_vh_reverse_doubling");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bound_vh_reverse_doubling: requires delta in (0,1)");
    require_alpha_not_one(alpha, "bound_vh_reverse_doubling");
    const double s = norm(x);
    if (!(s < r0 / 2.0)) throw RegimeError("bound_vh_reverse_doubling: not claimed here (requires |x| < r0/2)");
    const double ld = std::fabs(std::log2(delta));

    HVCertificates out;
    out.h = make("reverse_doubling_harmonic_measure", "near (|x| < r0/2)", std::pow(s, ld) / delta, 1.0);
    out.h.constants["delta"] = delta;

    const double c = reverse_doubling_c(d, alpha, policy);
    const double phi = std::pow(diam, 2.0 * alpha) / std::pow(static_cast<double>(d), alpha);
    const double two_a = std::pow(2.0, alpha);
    const std::string regime = delta < 1.0 / two_a   ? "delta < 2^-alpha"
                               : delta > 1.0 / two_a ? "delta > 2^-alpha"
                                                     : "delta = 2^-alpha";
    out.v = make("reverse_doubling_moment", regime, reverse_doubling_solve(c, alpha, delta, r0, phi, s),
                 uniform_v_half(d, diam, alpha, policy));
    out.v.constants["c_d_alpha"] = c;
    out.v.constants["delta"] = delta;
    return out;
}

BoundCertificate bound_ug(const Condition& cond, const Point& x, const HolderParams& params, const DataSpec& data,
                          Policy policy, bool two_point) {
    if (!data.g_seminorm) throw DomainError("bound_ug: data.g_seminorm is not populated");
    const double alpha = params.alpha;
    require_open_unit_alpha(alpha, "bound_ug");
    if (two_point && !cond.uniform) {
        throw DomainError("bound_ug: two-point bound requires the uniform exterior condition flag");
    }
    const double g = *data.g_seminorm;
    if (g < 0.0) throw DomainError("bound_ug: seminorm must be >= 0");
    const double s = norm(x);
    const double factor = two_point ? 2.0 : 1.0;
    const double uniform = factor * ug_uniform(cond, s, alpha, g, policy);
    const double sa = std::pow(s, alpha);
    const char* kind = two_point ? "two_point" : "one_point";

    switch (cond.kind) {
    case ConditionKind::Uniform:
        return make(std::string("general_ug_") + kind, "global", uniform);
    case ConditionKind::Sphere: {
        const double dd = static_cast<double>(cond.d);
        const double Csph = sphere_constant(alpha, cond.d, cond.R, cond.r, policy);
        const double far = std::pow(cond.diam, alpha) * std::pow(dd, alpha / 2.0) / std::pow(cond.r, alpha);
        BoundCertificate cert;
        if (s <= cond.r / dd) {
            cert = make(std::string("exterior_sphere_ug_") + kind, "near (|x-x0| <= r/d)", factor * Csph * g * sa,
                        uniform);
        } else {
            // the two-point display doubles only the near term
            cert = make(std::string("exterior_sphere_ug_") + kind, "far (|x-x0| > r/d)", far * g * sa, uniform);
        }
        cert.constants["C_alpha_d_R_r"] = Csph;
        return cert;
    }
    case ConditionKind::Cone2d: {
        if (!(s < cond.r)) throw RegimeError("bound_ug: cone2d display needs |x - x0| < r");
        if (s == 0.0) return make(std::string("cone2d_ug_") + kind, "near", 0.0, uniform);
        const double w = tilde_omega(cond.omega);
        const double C5 = cone_C5(alpha, cond.omega, cond.r, policy);
        const double C6 = cone_C6(alpha, cond.omega, cond.r, cond.diam, policy);
        const bool far = s >= cone_threshold(cond.r, cond.omega);
        const double L = std::log(cond.r / s);
        double value = C5 * std::pow(s / cond.r, alpha * w) * std::pow(L, alpha)
                       + std::pow(s / cond.r, w)
                             * (C6 * L + (far ? kE * std::pow(cond.diam, alpha) / std::pow(2.0, alpha / 2.0) : 0.0))
                       + sa;
        auto cert = make(std::string("cone2d_ug_") + kind, far ? "far" : "near", factor * g * value, uniform);
        cert.constants["C5"] = C5;
        cert.constants["C6"] = C6;
        return cert;
    }
    case ConditionKind::Wedge3d: {
        const double w = tilde_omega(cond.omega);
        const double C9 = wedge_C9(alpha, cond.omega, cond.r, policy);
        const double C10 = wedge_C10(alpha, cond.omega, cond.r, cond.l, cond.diam, policy);
        const bool near = s < std::min(cond.l, cone_threshold(cond.r, cond.omega));
        double value = sa;
        if (near && s > 0.0) {
            const double L = std::log(cond.r / s);
            value += C9 * std::pow(s / cond.r, alpha * w) * std::pow(L, alpha) + std::pow(s / cond.r, w) * C10 * L;
        } else if (!near) {
            value += std::pow(s / cond.r, w) * std::pow(cond.diam, alpha) / std::pow(3.0, alpha / 2.0)
                     * std::max(kE, std::pow(cond.r / cond.l, w));
        }
        auto cert = make(std::string("wedge3d_ug_") + kind, near ? "near" : "far", factor * g * value, uniform);
        cert.constants["C9"] = C9;
        cert.constants["C10"] = C10;
        return cert;
    }
    case ConditionKind::ConeHD: {
        const double delta = resolve_delta(cond);
        const double dd = static_cast<double>(cond.d);
        if (s >= cond.r0 / 2.0) {
            const double value = std::pow(cond.diam, alpha) / std::pow(dd, alpha / 2.0) * std::pow(2.0 / cond.r0, alpha) * sa;
            return make(std::string("reverse_doubling_ug_") + kind, "far (|x| >= r0/2)", factor * g * value, uniform);
        }
        const ReverseDoublingConstants rd = reverse_doubling_constants(alpha, cond.d, delta, cond.r0, cond.diam, policy);
        double value;
        std::string regime;
        if (rd.log_case) {
            // Moment bound of the log case fed into the general estimate.
            const double c = reverse_doubling_c(cond.d, alpha, policy);
            const double v = (c * std::pow(cond.r0, alpha) * std::fabs(std::log2(s))
                              + std::pow(2.0, alpha) * std::pow(cond.diam, 2.0 * alpha) / std::pow(dd, alpha))
                             * sa;
            value = std::pow(2.0, pos(alpha - 1.0)) * (multidim_bdg_constant(alpha, cond.d, policy) * v + sa);
            regime = "near, delta = 2^-alpha";
        } else {
            value = rd.C1 * sa + rd.C2 * std::pow(s, std::fabs(std::log2(delta)));
            regime = "near (|x| < r0/2)";
        }
        auto cert = make(std::string("reverse_doubling_ug_") + kind, regime, factor * g * value, uniform);
        cert.constants["delta"] = delta;
        if (!rd.log_case) {
            cert.constants["C1"] = rd.C1;
            cert.constants["C2"] = rd.C2;
        }
        return cert;
    }
    }
    throw DomainError("bound_ug: unknown condition");
}

BoundCertificate bound_ug_partial(const BoundCertificate& h_certificate, const DataSpec& data) {
    if (!data.g_sup_gap) throw DomainError("bound_ug_partial: data.g_sup_gap is not populated");
    auto cert = make("ug_vanishing_on_gamma0", h_certificate.regime, *data.g_sup_gap * h_certificate.theorem_value,
                     *data.g_sup_gap);
    cert.constants["h"] = h_certificate.value;
    return cert;
}

BoundCertificate bound_uf(const Condition& cond, const Point& x, const HolderParams& params, const DataSpec& data,
                          Policy policy) {
    if (!data.f_norm) throw DomainError("bound_uf: data.f_norm is not populated");
    const double f = *data.f_norm;
    if (f < 0.0) throw DomainError("bound_uf: f_norm must be >= 0");
    const int d = cond.d;
    const double dd = static_cast<double>(d);
    const bool sup_branch = !params.gamma_finite();
    double Cf = 1.0;
    double inv_p = 1.0;
    if (!sup_branch) {
        if (!(2.0 * params.gamma - params.q * dd > 0.0)) {
            throw VacuousBoundError("bound_uf: 2*gamma - q*d <= 0, vacuous bound");
        }
        Cf = source_constant(d, cond.diam, params.gamma, params.q);
        inv_p = 1.0 / params.p;
    }
    const std::string branch = sup_branch ? "sup" : "gamma";
    const double s = norm(x);
    // v_D <= C_1(1,d) diam^2 = diam^2 / d
    const double uniform = Cf * f * std::pow(cond.diam * cond.diam / dd, inv_p);

    auto finish = [&](const std::string& theorem, const std::string& regime, double profile) {
        auto cert = make(theorem + "_uf_" + branch, regime, Cf * f * std::pow(profile, inv_p), uniform);
        if (!sup_branch) cert.constants["C_f"] = Cf;
        return cert;
    };

    switch (cond.kind) {
    case ConditionKind::Uniform: return finish("general", "global", cond.diam * cond.diam / dd);
    case ConditionKind::Sphere:
        return finish("exterior_sphere", "global", s * (cond.R - cond.r) * cond.R / cond.r);
    case ConditionKind::Cone2d: {
        if (!(s < cond.r)) throw RegimeError("bound_uf: cone2d display needs |x - x0| < r");
        const double w = tilde_omega(cond.omega);
        const bool far = s >= cone_threshold(cond.r, cond.omega);
        const double C7 = cone_C7(cond.omega, cond.r, cond.diam, policy);
        const double profile = s == 0.0 ? 0.0
                                        : std::pow(s / cond.r, w)
                                              * (C7 * std::log(cond.r / s) + (far ? kE * cond.diam * cond.diam / 2.0 : 0.0));
        auto cert = finish("cone2d", far ? "far" : "near", profile);
        cert.constants["C7"] = C7;
        return cert;
    }
    case ConditionKind::Wedge3d: {
        const double w = tilde_omega(cond.omega);
        const bool near = s < std::min(cond.l, cone_threshold(cond.r, cond.omega));
        const double C11 = wedge_C11(cond.omega, cond.r, cond.l, cond.diam, policy);
        double bracket;
        if (near) {
            bracket = s == 0.0 ? 0.0 : C11 * std::log(cond.r / s);
        } else {
            bracket = cond.diam * cond.diam / 3.0 * std::max(kE, std::pow(cond.r / cond.l, w));
        }
        auto cert = finish("wedge3d", near ? "near" : "far", std::pow(s / cond.r, w) * bracket);
        cert.constants["C11"] = C11;
        return cert;
    }
    case ConditionKind::ConeHD: {
        const double delta = resolve_delta(cond);
        std::string regime;
        const double theta = theta_profile(cond, s, delta, policy, regime);
        auto cert = finish("reverse_doubling", regime, theta);
        cert.constants["delta"] = delta;
        cert.constants["c_d_2"] = reverse_doubling_c(d, 2.0, policy);
        return cert;
    }
    }
    throw DomainError("bound_uf: unknown condition");
}

BoundCertificate bound_gradient(const Condition& cond, double dist, const HolderParams& params, const DataSpec& data,
                                Policy policy) {
    if (!cond.uniform) throw DomainError("bound_gradient: requires the uniform exterior condition flag");
    if (!data.g_seminorm) throw DomainError("bound_gradient: data.g_seminorm is not populated");
    const double alpha = params.alpha;
    require_open_unit_alpha(alpha, "bound_gradient");
    if (!(dist > 0.0)) throw GeometryError("bound_gradient: requires an interior point (dist > 0)");
    const double g = *data.g_seminorm;
    const double dd = static_cast<double>(cond.d);
    const double lead = 2.0 * dd * g;

    switch (cond.kind) {
    case ConditionKind::Sphere: {
        const double eta = std::min(dist, cond.r / dd);
        const double Csph = sphere_constant(alpha, cond.d, cond.R, cond.r, policy);
        auto cert = make("exterior_sphere_gradient", dist <= cond.r / dd ? "dist <= r/d" : "dist > r/d",
                         lead * Csph * std::pow(eta, alpha - 1.0));
        cert.constants["C_alpha_d_R_r"] = Csph;
        return cert;
    }
    case ConditionKind::Cone2d:
    case ConditionKind::Wedge3d: {
        const bool wedge = cond.kind == ConditionKind::Wedge3d;
        const double w = tilde_omega(cond.omega);
        double cap = cone_threshold(cond.r, cond.omega);
        if (wedge) cap = std::min(cap, cond.l);
        const double eta = std::min(dist, cap);
        const double A = wedge ? wedge_C9(alpha, cond.omega, cond.r, policy) : cone_C5(alpha, cond.omega, cond.r, policy);
        const double B = wedge ? wedge_C10(alpha, cond.omega, cond.r, cond.l, cond.diam, policy)
                               : cone_C6(alpha, cond.omega, cond.r, cond.diam, policy);
        const double L = std::fabs(std::log(eta / cond.r));
        const double value = A * std::pow(eta, alpha * w - 1.0) * std::pow(cond.r, -alpha * w) * std::pow(L, alpha)
                             + B * std::pow(eta, w - 1.0) * std::pow(cond.r, -w) * L + std::pow(eta, alpha - 1.0);
        auto cert = make(wedge ? "wedge3d_gradient" : "cone2d_gradient", dist <= cap ? "dist <= cap" : "dist > cap",
                         lead * value);
        cert.constants[wedge ? "C9" : "C5"] = A;
        cert.constants[wedge ? "C10" : "C6"] = B;
        return cert;
    }
    case ConditionKind::ConeHD: {
        const double delta = resolve_delta(cond);
        const double eta = std::min(dist, cond.r0 / 2.0);
        const ReverseDoublingConstants rd = reverse_doubling_constants(alpha, cond.d, delta, cond.r0, cond.diam, policy);
        if (rd.log_case) throw UnsupportedError("bound_gradient: delta = 2^-alpha has no displayed gradient bound");
        auto cert = make("reverse_doubling_gradient", dist <= cond.r0 / 2.0 ? "dist <= r0/2" : "dist > r0/2",
                         lead * (rd.C1 * std::pow(eta, alpha - 1.0)
                                 + rd.C2 * std::pow(eta, std::fabs(std::log2(delta)) - 1.0)));
        cert.constants["C1"] = rd.C1;
        cert.constants["C2"] = rd.C2;
        cert.constants["delta"] = delta;
        return cert;
    }
    case ConditionKind::Uniform: break;
    }
    throw UnsupportedError("bound_gradient: no gradient estimate without an exterior condition");
}

BoundCertificate bound_green(const Condition& cond, double dist_y, double dist_xy, const HolderParams& params,
                             Policy policy) {
    if (cond.d < 3) throw UnsupportedError("bound_green: requires d >= 3");
    const double alpha = params.alpha;
    require_open_unit_alpha(alpha, "bound_green");
    if (!(dist_xy > 0.0)) throw GeometryError("bound_green: requires x != y");
    if (!(dist_y >= 0.0)) throw GeometryError("bound_green: requires dist(y, boundary) >= 0");
    const double dd = static_cast<double>(cond.d);
    const double expo = dd - 2.0 + alpha;
    const double singular = std::pow(dist_xy, -expo);
    const double gd = green_gamma_d(cond.d);

    if (!(dist_y < alpha / (2.0 * expo) * dist_xy)) {
        auto cert = make("green_reverse_case", "dist(y) >= alpha/(2(d-2+alpha)) |x-y|",
                         std::pow(2.0 * expo / alpha, alpha) * gd * std::pow(dist_y, alpha) * singular);
        cert.constants["gamma_d"] = gd;
        return cert;
    }
    const double gda = green_gamma_d_alpha(cond.d, alpha);
    const double s = dist_y;
    double braces = 0.0;
    std::string theorem;
    switch (cond.kind) {
    case ConditionKind::Sphere: {
        const double Csph = sphere_constant(alpha, cond.d, cond.R, cond.r, policy);
        braces = std::pow(s, alpha)
                 * (s <= cond.r / dd ? Csph
                                     : std::pow(cond.diam, alpha) * std::pow(dd, alpha / 2.0) / std::pow(cond.r, alpha));
        theorem = "exterior_sphere_green";
        break;
    }
    case ConditionKind::Wedge3d: {
        const double w = tilde_omega(cond.omega);
        const bool near = s < std::min(cond.l, cone_threshold(cond.r, cond.omega));
        braces = std::pow(s, alpha);
        if (near && s > 0.0) {
            const double L = std::log(cond.r / s);
            braces += wedge_C9(alpha, cond.omega, cond.r, policy) * std::pow(s / cond.r, alpha * w) * std::pow(L, alpha)
                      + std::pow(s / cond.r, w) * wedge_C10(alpha, cond.omega, cond.r, cond.l, cond.diam, policy) * L;
        } else if (!near) {
            braces += std::pow(s / cond.r, w) * std::pow(cond.diam, alpha) / std::pow(3.0, alpha / 2.0)
                      * std::max(kE, std::pow(cond.r / cond.l, w));
        }
        theorem = "wedge3d_green";
        break;
    }
    case ConditionKind::ConeHD: {
        const double delta = resolve_delta(cond);
        if (s < cond.r0 / 2.0) {
            const ReverseDoublingConstants rd =
                reverse_doubling_constants(alpha, cond.d, delta, cond.r0, cond.diam, policy);
            if (rd.log_case) throw UnsupportedError("bound_green: delta = 2^-alpha has no displayed Green bound");
            braces = rd.C1 * std::pow(s, alpha) + rd.C2 * std::pow(s, std::fabs(std::log2(delta)));
        } else {
            braces = std::pow(cond.diam, alpha) / std::pow(dd, alpha / 2.0) * std::pow(2.0 / cond.r0, alpha)
                     * std::pow(s, alpha);
        }
        theorem = "reverse_doubling_green";
        break;
    }
    case ConditionKind::Uniform:
    case ConditionKind::Cone2d:
        throw UnsupportedError("bound_green: no Green estimate for this condition");
    }
    auto cert = make(theorem, "dist(y) < alpha/(2(d-2+alpha)) |x-y|", gda * singular * braces);
    cert.constants["gamma_d_alpha"] = gda;
    return cert;
}

} // namespace exitbound

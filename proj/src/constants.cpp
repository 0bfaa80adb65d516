#include "exitbound/constants.hpp"

#include "exitbound/errors.hpp"
#include "exitbound/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exitbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double pos(double t) { return t > 0.0 ? t : 0.0; }

void require_alpha(double alpha, const char* what) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError(std::string(what) + ": requires alpha > 0");
}

void require_alpha_not_one(double alpha, const char* what) {
    if (alpha == 1.0) throw DomainError(std::string(what) + ": hypothesis 0 < alpha != 1 violated (divides by |alpha-1|)");
}

void require_alpha_below_one(double alpha, const char* what) {
    require_alpha(alpha, what);
    if (!(alpha < 1.0)) throw DomainError(std::string(what) + ": requires 0 < alpha < 1");
}

} // namespace

std::string to_string(Policy policy) {
    return policy == Policy::Canonical ? "canonical" : "best";
}

Policy parse_policy(const std::string& name) {
    if (name == "canonical") return Policy::Canonical;
    if (name == "best") return Policy::Best;
    throw DomainError("unknown constant policy '" + name + "' (expected canonical or best)");
}

HolderParams HolderParams::with_q(double alpha, double gamma, double q) {
    HolderParams h;
    h.alpha = alpha;
    h.gamma = gamma;
    h.q = q;
    h.p = (q == 1.0) ? kInfinity : q / (q - 1.0);
    return h;
}

void HolderParams::validate() const {
    require_alpha(alpha, "HolderParams");
    if (!(gamma > 0.0)) throw DomainError("HolderParams: gamma must be > 0 or infinite");
    if (!(q >= 1.0) || !(p >= 1.0)) throw DomainError("HolderParams: p and q must be >= 1");
    const double inv = (std::isinf(p) ? 0.0 : 1.0 / p) + (std::isinf(q) ? 0.0 : 1.0 / q);
    if (std::fabs(inv - 1.0) > 1e-12) throw DomainError("HolderParams: 1/p + 1/q must equal 1");
}

double ConstantTable::at(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw DomainError("constant '" + key + "' is not defined for this configuration");
    return it->second;
}

BdgConstants bdg_constants(double alpha, Policy policy) {
    require_alpha(alpha, "bdg_constants");
    BdgConstants out;
    const bool below_two = alpha < 2.0;
    const bool above_one = alpha > 1.0;

    if (policy == Policy::Canonical) {
        if (below_two) {
            out.c_lower = (2.0 - alpha) / (4.0 - alpha);
            out.C_upper = (4.0 - alpha) / (2.0 - alpha);
            out.variants_used = {"canonical_lower", "canonical_upper"};
        } else {
            out.c_lower = 1.0 / (2.0 * kSqrt2 * alpha);
            out.C_upper = 2.0 * kSqrt2 * alpha;
            out.variants_used = {"alpha_gt_1_lower", "alpha_gt_1_upper"};
        }
        return out;
    }

    std::string lower_name;
    std::string upper_name;
    double lower = 0.0;
    double upper = kInfinity;
    auto offer_lower = [&](double v, const char* name) {
        if (v > lower) {
            lower = v;
            lower_name = name;
        }
    };
    auto offer_upper = [&](double v, const char* name) {
        if (v < upper) {
            upper = v;
            upper_name = name;
        }
    };
    if (below_two) {
        offer_lower((2.0 - alpha) / (4.0 - alpha), "canonical_lower");
        offer_upper((4.0 - alpha) / (2.0 - alpha), "canonical_upper");
        const double s = std::pow(2.0 / alpha, alpha / 2.0);
        offer_lower(s * (2.0 - alpha) / 2.0, "scaled_lower");
        offer_upper(s * 2.0 / (2.0 - alpha), "scaled_upper");
    }
    if (above_one) {
        offer_lower(1.0 / (2.0 * kSqrt2 * alpha), "alpha_gt_1_lower");
        offer_upper(2.0 * kSqrt2 * alpha, "alpha_gt_1_upper");
    }
    out.c_lower = lower;
    out.C_upper = upper;
    out.variants_used = {lower_name, upper_name};
    return out;
}

double multidim_bdg_constant(double alpha, int d, Policy policy) {
    require_alpha(alpha, "multidim_bdg_constant");
    if (d < 1) throw DomainError("multidim_bdg_constant: requires d >= 1");
    const double dd = static_cast<double>(d);
    const double general = std::pow(dd, 1.0 + pos(alpha - 1.0)) * bdg_constants(alpha, policy).C_upper;
    if (alpha < 1.0) {
        const double alt = std::pow(dd, alpha / 2.0) * std::pow(alpha, -alpha) / (1.0 - alpha);
        return std::min(alt, general);
    }
    return general;
}

double doob_factor(double alpha) {
    require_alpha(alpha, "doob_factor");
    require_alpha_not_one(alpha, "doob_factor");
    const double m = std::max(alpha, 1.0);
    return std::pow(m / std::fabs(alpha - 1.0), m);
}

double uniform_moment_constant(double alpha, int d, Policy policy) {
    require_alpha(alpha, "uniform_moment_constant");
    if (d < 1) throw DomainError("uniform_moment_constant: requires d >= 1");
    const double dd = static_cast<double>(d);
    if (alpha <= 1.0) return std::pow(dd, -alpha);
    const double exponent = (alpha / 2.0) * pos(2.0 / alpha - 1.0) - 1.0;
    return doob_factor(alpha) / bdg_constants(alpha, policy).c_lower * std::pow(dd, exponent);
}

double source_constant(int d, double diam, double gamma, double q) {
    if (d < 2) throw DomainError("source_constant: requires d >= 2");
    if (!(diam > 0.0)) throw GeometryError("source_constant: diameter must be > 0");
    if (!(q > 1.0)) throw DomainError("source_constant: requires q > 1");
    if (!std::isfinite(gamma)) throw DomainError("source_constant: gamma must be finite (use the sup-norm branch)");
    if (!(gamma > q)) throw DomainError("source_constant: requires gamma > q");
    const double dd = static_cast<double>(d);
    const double slack = 2.0 * gamma - q * dd;
    if (!(slack > 0.0)) throw VacuousBoundError("source_constant: 2*gamma - q*d <= 0, vacuous bound");
    const double p = q / (q - 1.0);
    const double outer = (gamma - q) / (gamma * q);
    if (d == 2) {
        return std::pow(diam, 2.0 * (gamma - q) / (gamma * q)) / std::pow(4.0 * kPi, 1.0 / q)
               * std::pow(gamma_fn(gamma / (gamma - q) + 1.0), outer);
    }
    const double bracket = (dd - 2.0) * (gamma - q)
                           / (std::pow(dd * (dd - 2.0) * unit_ball_volume(d), q / (gamma - q)) * slack);
    return std::pow(bracket, outer) * std::pow(diam, slack / (p * q));
}

double sphere_constant(double alpha, int d, double R, double r, Policy policy) {
    require_alpha_below_one(alpha, "sphere_constant");
    if (d < 2) throw DomainError("sphere_constant: requires d >= 2");
    if (!(r > 0.0) || !(r < R)) throw GeometryError("sphere_constant: requires 0 < r < R");
    const double c = bdg_constants(alpha, policy).c_lower;
    const double bracket = 4.0 / ((1.0 - alpha) * c)
                           + std::pow((R - r) / r, alpha / 2.0) * std::pow(static_cast<double>(d), alpha / 2.0);
    return multidim_bdg_constant(alpha, d, policy) * std::exp(alpha) * bracket + 1.0;
}

double tilde_omega(double omega) {
    if (!(omega >= 0.0 && omega < kPi)) throw DomainError("tilde_omega: requires omega in [0, pi)");
    return kPi / (2.0 * (kPi - omega));
}

double delta_omega_bound(double omega, int d) {
    if (d < 3) throw DomainError("delta_omega_bound: requires d >= 3");
    if (!(omega > 0.0 && omega <= kPi / 2.0)) throw DomainError("delta_omega_bound: requires omega in (0, pi/2]");
    const double s2 = std::sin(omega) * std::sin(omega);
    const double weight = 0.375 * std::pow(2.0 / 3.0, d - 1);
    const double via_beta = 1.0 - weight * beta_inc_regularized(s2, 0.5 * (d - 1), 0.5);
    const double via_power = 1.0 - weight * beta_inc_lower_bound(s2, d);
    return std::min(via_beta, via_power);
}

double cone_moment_constant(double alpha, double r, Policy policy) {
    require_alpha(alpha, "cone_moment_constant");
    if (!(r > 0.0)) throw GeometryError("cone_moment_constant: requires r > 0");
    const double e = pos(alpha - 1.0);
    return doob_factor(alpha) * std::pow(2.0, e) / bdg_constants(alpha, policy).c_lower * std::pow(2.0 * r, alpha)
           * (1.0 + std::pow(2.0 * r, e));
}

double cone_C3(double alpha, double omega, double r, Policy policy) {
    return 2.0 * cone_moment_constant(alpha, r, policy) * std::pow(tilde_omega(omega), alpha);
}

double cone_C4(double alpha, double omega, double r, double diam, Policy policy) {
    return uniform_moment_constant(alpha / 2.0, 2, policy) * std::pow(diam + r, alpha) * tilde_omega(omega);
}

double cone_C5(double alpha, double omega, double r, Policy policy) {
    require_alpha_below_one(alpha, "cone_C5");
    const double c = bdg_constants(alpha, policy).c_lower;
    return multidim_bdg_constant(alpha, 2, policy) * std::pow(tilde_omega(omega), alpha) * 8.0 * std::pow(r, alpha)
           / ((1.0 - alpha) * c);
}

double cone_C6(double alpha, double omega, double r, double diam, Policy policy) {
    require_alpha_below_one(alpha, "cone_C6");
    return multidim_bdg_constant(alpha, 2, policy) * std::pow(diam + r, alpha) * tilde_omega(omega)
           / std::pow(2.0, alpha / 2.0);
}

double cone_C7(double omega, double r, double diam, Policy policy) {
    return cone_C3(2.0, omega, r, policy) + cone_C4(2.0, omega, r, diam, policy);
}

double wedge_C8(double alpha, double omega, double r, double l, double diam, Policy policy) {
    return uniform_moment_constant(alpha / 2.0, 3, policy) * std::pow(diam + r + l, alpha) * tilde_omega(omega);
}

double wedge_C9(double alpha, double omega, double r, Policy policy) {
    require_alpha_below_one(alpha, "wedge_C9");
    return multidim_bdg_constant(alpha, 3, policy) * cone_C3(alpha, omega, r, policy);
}

double wedge_C10(double alpha, double omega, double r, double l, double diam, Policy policy) {
    require_alpha_below_one(alpha, "wedge_C10");
    return multidim_bdg_constant(alpha, 3, policy) * wedge_C8(alpha, omega, r, l, diam, policy);
}

double wedge_C11(double omega, double r, double l, double diam, Policy policy) {
    return cone_C3(2.0, omega, r, policy) + wedge_C8(2.0, omega, r, l, diam, policy);
}

double wedge_C12(double omega, double r, double l, double diam, double gamma, double q, Policy policy) {
    const double p = q / (q - 1.0);
    return source_constant(3, diam, gamma, q) * std::pow(wedge_C11(omega, r, l, diam, policy), 1.0 / p);
}

double reverse_doubling_c(int d, double alpha, Policy policy) {
    require_alpha(alpha, "reverse_doubling_c");
    require_alpha_not_one(alpha, "reverse_doubling_c");
    if (d < 1) throw DomainError("reverse_doubling_c: requires d >= 1");
    const double exponent = (alpha / 2.0) * pos(2.0 / alpha - 1.0) - 1.0;
    return std::pow(3.0, alpha) / bdg_constants(alpha, policy).c_lower * doob_factor(alpha)
           * std::pow(static_cast<double>(d), exponent);
}

ReverseDoublingConstants reverse_doubling_constants(double alpha, int d, double delta, double r0, double diam,
                                                    Policy policy) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("reverse_doubling_constants: requires delta in (0,1)");
    if (!(r0 > 0.0) || !(diam > 0.0)) throw GeometryError("reverse_doubling_constants: requires r0, diam > 0");
    ReverseDoublingConstants out;
    out.c = reverse_doubling_c(d, alpha, policy);
    const double dd = static_cast<double>(d);
    const double two_a = std::pow(2.0, alpha);
    const double phi = std::pow(diam, 2.0 * alpha) / (delta * std::pow(dd, alpha));
    const double cr = out.c * std::pow(r0, alpha);
    if (delta < 1.0 / two_a) {
        out.tilde_C1 = cr / (1.0 - two_a * delta);
        out.tilde_C2 = phi;
    } else if (delta > 1.0 / two_a) {
        out.tilde_C1 = 0.0;
        out.tilde_C2 = cr / (two_a * delta - 1.0) + phi;
    } else {
        out.log_case = true;
        return out;
    }
    const double lead = std::pow(2.0, pos(alpha - 1.0));
    const double C = multidim_bdg_constant(alpha, d, policy);
    out.C1 = lead * (C * out.tilde_C1 + 1.0);
    out.C2 = lead * C * out.tilde_C2;
    return out;
}

double green_gamma_d(int d) {
    if (d < 3) throw UnsupportedError("green_gamma_d: requires d >= 3");
    return gamma_fn(0.5 * d - 1.0) / std::pow(4.0 * kPi, 0.5 * d);
}

double green_gamma_d_alpha(int d, double alpha) {
    require_alpha(alpha, "green_gamma_d_alpha");
    const double dd = static_cast<double>(d);
    return green_gamma_d(d) * std::pow(1.0 - alpha / (dd - 2.0 + alpha), 2.0 - dd - alpha)
           * std::pow(2.0 * (dd - 2.0) / alpha, alpha);
}

ConstantTable derived_constants(const HolderParams& params, const DomainSpec& domain, Policy policy) {
    params.validate();
    domain.validate();
    const double alpha = params.alpha;
    const int d = domain.d;
    const double diam = diameter(domain);

    ConstantTable t;
    t.policy = policy;
    auto& e = t.entries;

    const BdgConstants bdg = bdg_constants(alpha, policy);
    e["c_alpha"] = bdg.c_lower;
    e["C_alpha"] = bdg.C_upper;
    e["C_alpha_d"] = multidim_bdg_constant(alpha, d, policy);
    e["C1_alpha_d"] = uniform_moment_constant(alpha, d, policy);
    e["C1_half_alpha_d"] = uniform_moment_constant(alpha / 2.0, d, policy);
    e["diam"] = diam;
    if (alpha != 1.0) e["doob_factor"] = doob_factor(alpha);
    if (d >= 3) {
        e["gamma_d"] = green_gamma_d(d);
        e["gamma_d_alpha"] = green_gamma_d_alpha(d, alpha);
    }
    if (params.gamma_finite() && d >= 2) {
        try {
            e["C_f"] = source_constant(d, diam, params.gamma, params.q);
        } catch (const std::domain_error&) {
            // source bound not available for these exponents
        }
    }

    const bool cone2d = domain.kind == DomainKind::BallMinusCone && d == 2;
    const bool coneHD = domain.kind == DomainKind::BallMinusCone && d >= 3;
    const bool wedge = domain.kind == DomainKind::CylinderMinusWedge;

    if (domain.kind != DomainKind::Ball && alpha == 1.0) {
        throw DomainError("derived_constants: hypothesis 0 < alpha != 1 of the " + to_string(domain.kind)
                          + " estimates violated");
    }

    if (domain.kind == DomainKind::Annulus && alpha < 1.0) {
        e["C_alpha_d_R_r"] = sphere_constant(alpha, d, domain.R, domain.r, policy);
    }

    if (cone2d || wedge) {
        const double omega = domain.omega;
        const double r = domain.r;
        e["omega_tilde"] = tilde_omega(omega);
        e["C2_alpha_r"] = cone_moment_constant(alpha, r, policy);
        e["C3"] = cone_C3(alpha, omega, r, policy);
        if (cone2d) {
            e["C4"] = cone_C4(alpha, omega, r, diam, policy);
            e["C7"] = cone_C7(omega, r, diam, policy);
            if (alpha < 1.0) {
                e["C5"] = cone_C5(alpha, omega, r, policy);
                e["C6"] = cone_C6(alpha, omega, r, diam, policy);
            }
        } else {
            const double l = domain.l;
            e["C8"] = wedge_C8(alpha, omega, r, l, diam, policy);
            e["C11"] = wedge_C11(omega, r, l, diam, policy);
            if (alpha < 1.0) {
                e["C9"] = wedge_C9(alpha, omega, r, policy);
                e["C10"] = wedge_C10(alpha, omega, r, l, diam, policy);
            }
            if (params.gamma_finite()) {
                try {
                    e["C12"] = wedge_C12(omega, r, l, diam, params.gamma, params.q, policy);
                } catch (const std::domain_error&) {
                }
            }
        }
    }

    if (coneHD && domain.omega > 0.0) {
        const double delta = delta_omega_bound(domain.omega, d);
        e["delta_omega"] = delta;
        e["c_d_alpha"] = reverse_doubling_c(d, alpha, policy);
        e["c_d_2"] = reverse_doubling_c(d, 2.0, policy);
        const ReverseDoublingConstants rd = reverse_doubling_constants(alpha, d, delta, domain.r, diam, policy);
        if (!rd.log_case) {
            if (rd.tilde_C1 > 0.0) e["C_tilde_1"] = rd.tilde_C1;
            e["C_tilde_2"] = rd.tilde_C2;
            e["C1"] = rd.C1;
            e["C2"] = rd.C2;
        }
    }
    return t;
}

} // namespace exitbound

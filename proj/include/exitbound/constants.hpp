#pragma once

#include "exitbound/geometry.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace exitbound {

enum class Policy { Canonical, Best };

std::string to_string(Policy policy);
Policy parse_policy(const std::string& name);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Exponents: alpha (Hoelder order of g), gamma (integrability of f, +inf allowed),
// and the conjugate pair 1/p + 1/q = 1 used for L^gamma sources.
struct HolderParams {
    double alpha = 0.5;
    double gamma = kInfinity;
    double p = 2.0;
    double q = 2.0;

    static HolderParams with_q(double alpha, double gamma, double q);
    bool gamma_finite() const { return std::isfinite(gamma); }
    void validate() const;
    bool operator==(const HolderParams&) const = default;
};

struct BdgConstants {
    double c_lower = 0.0;
    double C_upper = 0.0;
    std::vector<std::string> variants_used;
};

// Named constants evaluated for one (domain, params, policy); inapplicable entries are absent.
struct ConstantTable {
    Policy policy = Policy::Canonical;
    std::map<std::string, double> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    double at(const std::string& key) const;
};

BdgConstants bdg_constants(double alpha, Policy policy);

// C(alpha, d): BDG constant for the coordinate-wise maximum of d-dimensional Brownian motion.
double multidim_bdg_constant(double alpha, int d, Policy policy);

// C_1(alpha, d): v_{D,alpha}(x) <= C_1(alpha, d) diam(D)^{2 alpha}.
double uniform_moment_constant(double alpha, int d, Policy policy = Policy::Canonical);

// Doob maximal factor ((alpha v 1)/|alpha - 1|)^{alpha v 1}.
double doob_factor(double alpha);

// C(d, D, gamma, q) of the L^gamma source estimate.
double source_constant(int d, double diam, double gamma, double q);

// C(alpha, d, R, r) of the exterior-sphere estimate.
double sphere_constant(double alpha, int d, double R, double r, Policy policy);

double tilde_omega(double omega);

double delta_omega_bound(double omega, int d);

// C_2(alpha, r) of the 2D cone moment estimate.
double cone_moment_constant(double alpha, double r, Policy policy);

// C_3 = 2 C_2(alpha, r) omega~^alpha.
double cone_C3(double alpha, double omega, double r, Policy policy);
// C_4 = C_1(alpha/2, 2) (diam + r)^alpha omega~.
double cone_C4(double alpha, double omega, double r, double diam, Policy policy);
double cone_C5(double alpha, double omega, double r, Policy policy);
double cone_C6(double alpha, double omega, double r, double diam, Policy policy);
double cone_C7(double omega, double r, double diam, Policy policy);
// C_8 = C_1(alpha/2, 3) (diam + r + l)^alpha omega~.
double wedge_C8(double alpha, double omega, double r, double l, double diam, Policy policy);
double wedge_C9(double alpha, double omega, double r, Policy policy);
double wedge_C10(double alpha, double omega, double r, double l, double diam, Policy policy);
double wedge_C11(double omega, double r, double l, double diam, Policy policy);
double wedge_C12(double omega, double r, double l, double diam, double gamma, double q, Policy policy);

// c_{d,alpha} of the reverse-doubling moment estimate.
double reverse_doubling_c(int d, double alpha, Policy policy);

// Constants of the u_g estimate under a uniform contraction factor delta.
struct ReverseDoublingConstants {
    double c = 0.0;
    double tilde_C1 = 0.0;
    double tilde_C2 = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    bool log_case = false;
};

ReverseDoublingConstants reverse_doubling_constants(double alpha, int d, double delta, double r0, double diam,
                                                    Policy policy);

// Green function prefactors gamma_d and gamma_{d, alpha}, d >= 3.
double green_gamma_d(int d);
double green_gamma_d_alpha(int d, double alpha);

ConstantTable derived_constants(const HolderParams& params, const DomainSpec& domain, Policy policy);

} // namespace exitbound

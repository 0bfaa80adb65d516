#pragma once

#include "exitbound/bounds.hpp"
#include "exitbound/montecarlo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exitbound {

// One line of a verdict table: lower <= MC <= upper with 3 SE slack.
struct VerdictRow {
    std::string domain;
    std::string quantity; // "v_half_alpha", "h", "u_f"
    Point point;
    double alpha = 0.0;
    double lower = 0.0;
    McEstimate mc;
    std::optional<double> upper; // empty when the theorem does not claim this point
    std::optional<bool> pass;    // empty for "not claimed here" rows
    std::string theorem;
    std::string note;
};

struct VerifyOptions {
    McBudget budget;
    PathParams path;
    double wos_eps = 0.0; // 0: 1e-6 diam
    double slack_se = 3.0;
    std::optional<Condition> condition; // default: condition_for(domain)
    std::vector<std::string> quantities; // subset of {"v", "h", "u_g", "u_f"}; empty: all applicable
};

// Upper certificate for v_{D, alpha/2} on one of the benchmark domains.
BoundCertificate v_certificate(const DomainSpec& domain, const Condition& cond, const Point& x, double alpha,
                               Policy policy);

// Certificate for h_{D, Gamma0} with Gamma0 the cone or wedge faces; empty for other domains.
std::optional<BoundCertificate> h_certificate(const DomainSpec& domain, const Condition& cond, const Point& x,
                                              double alpha, Policy policy);

// x - x0 for the anchor point x0 of x.
Point offset_from_anchor(const DomainSpec& domain, const Point& x);

// Representative alpha-Hoelder boundary datum with g(x0) = 0: g(y) = seminorm |y - x0|^alpha.
PointFunction holder_datum(const Point& x0, double alpha, double seminorm);

// Sandwich check of every applicable certificate at each grid point. Regime errors become
// rows with no verdict.
std::vector<VerdictRow> verify_certificates(const DomainSpec& domain, const std::vector<Point>& points,
                                            const HolderParams& params, const DataSpec& data,
                                            const VerifyOptions& options, Policy policy);

std::size_t count_failures(const std::vector<VerdictRow>& rows);

// Note text for a row whose point lies outside the theorem's claim.
std::string not_claimed_note(const std::string& reason);

std::string format_point(const Point& x);

} // namespace exitbound

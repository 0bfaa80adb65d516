#include "exitbound/verify.hpp"

#include "exitbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace exitbound {

namespace {

bool sandwiched(double lower, const McEstimate& mc, double upper, double slack) {
    const double s = slack * mc.std_error;
    return lower - s <= mc.mean && mc.mean <= upper + s;
}

} // namespace

BoundCertificate v_certificate(const DomainSpec& domain, const Condition& cond, const Point& x, double alpha,
                               Policy policy) {
    switch (domain.kind) {
    case DomainKind::Ball: return uniform_bound_v(domain, alpha / 2.0, policy);
    case DomainKind::Annulus: return bound_v_annulus(domain, x, alpha, policy);
    case DomainKind::BallMinusCone:
        if (domain.d == 2) return bound_v_cone2d(domain.omega, domain.r, cond.diam, x, alpha, policy);
        return bound_vh_reverse_doubling(domain.d, x, alpha, cond.delta.value_or(delta_omega_bound(domain.omega, domain.d)),
                                         cond.r0, cond.diam, policy)
            .v;
    case DomainKind::CylinderMinusWedge:
        return bound_v_wedge3d(domain.omega, domain.r, domain.l, cond.diam, x, alpha, policy);
    }
    throw GeometryError("v_certificate: unknown domain");
}

std::optional<BoundCertificate> h_certificate(const DomainSpec& domain, const Condition& cond, const Point& x,
                                              double alpha, Policy policy) {
    switch (domain.kind) {
    case DomainKind::BallMinusCone:
        if (domain.d == 2) return bound_h_cone2d(domain.omega, domain.r, x);
        return bound_vh_reverse_doubling(domain.d, x, alpha, cond.delta.value_or(delta_omega_bound(domain.omega, domain.d)),
                                         cond.r0, cond.diam, policy)
            .h;
    case DomainKind::CylinderMinusWedge: return bound_h_wedge3d(domain.omega, domain.r, domain.l, x);
    default: return std::nullopt;
    }
}

Point offset_from_anchor(const DomainSpec& domain, const Point& x) {
    const Point x0 = anchor_point(domain, x);
    Point rel(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) rel[j] = x[j] - x0[j];
    return rel;
}

PointFunction holder_datum(const Point& x0, double alpha, double seminorm) {
    return [x0, alpha, seminorm](const Point& y) { return seminorm * std::pow(distance(y, x0), alpha); };
}

std::string not_claimed_note(const std::string& reason) {
    if (reason.find("not claimed here") != std::string::npos) return reason;
    return "not claimed here: " + reason;
}

std::string format_point(const Point& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t k = 0; k < x.size(); ++k) os << (k ? ";" : "") << x[k];
    os << ')';
    return os.str();
}

std::vector<VerdictRow> verify_certificates(const DomainSpec& domain, const std::vector<Point>& points,
                                            const HolderParams& params, const DataSpec& data,
                                            const VerifyOptions& options, Policy policy) {
    domain.validate();
    options.path.validate();
    const Condition cond = options.condition.value_or(condition_for(domain));
    const double alpha = params.alpha;
    const std::string name = describe(domain);
    auto wanted = [&](const char* q) {
        return options.quantities.empty()
               || std::find(options.quantities.begin(), options.quantities.end(), q) != options.quantities.end();
    };
    const bool has_v = wanted("v");
    const bool has_h = wanted("h") && (domain.kind == DomainKind::BallMinusCone || domain.kind == DomainKind::CylinderMinusWedge);
    const bool has_uf = wanted("u_f") && data.f_norm.has_value() && !params.gamma_finite();
    const bool has_ug = wanted("u_g") && data.g_seminorm.has_value();
    const DecompositionSpec faces{Decomposition::ConeFaces, 0.0};
    const double wos_eps = options.wos_eps > 0.0 ? options.wos_eps : 1e-6 * diameter(domain);

    std::vector<VerdictRow> rows;
    if (options.budget.paths == 0) return rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& x = points[i];
        const std::uint64_t seed = derive_seed(options.budget.seed, i);

        std::vector<std::pair<std::string, std::function<double(const ExitSample&)>>> functionals;
        functionals.emplace_back("em_tau_pow", [alpha](const ExitSample& s) { return std::pow(s.tau, alpha / 2.0); });
        if (has_h)
            functionals.emplace_back("em_gamma1_fraction", [](const ExitSample& s) {
                return s.exit_class == BoundaryLabel::Gamma1 ? 1.0 : 0.0;
            });
        if (has_uf) {
            const double f = *data.f_norm;
            functionals.emplace_back("em_constant_source", [f](const ExitSample& s) { return f * s.tau; });
        }
        const auto mc = estimate_exit_functionals(domain, x, options.budget.paths, options.path, seed, functionals,
                                                  has_h ? &faces : nullptr, nullptr, options.budget.workers);

        auto row_for = [&](const std::string& quantity, double lower, const McEstimate& est,
                           const std::function<BoundCertificate()>& certify) {
            VerdictRow row;
            row.domain = name;
            row.quantity = quantity;
            row.point = x;
            row.alpha = alpha;
            row.lower = lower;
            row.mc = est;
            try {
                const BoundCertificate cert = certify();
                row.upper = cert.value;
                row.theorem = cert.theorem;
                row.note = cert.regime;
                row.pass = sandwiched(lower, est, cert.value, options.slack_se);
            } catch (const RegimeError& e) {
                row.note = not_claimed_note(e.what());
            } catch (const std::domain_error& e) {
                row.note = not_claimed_note(e.what());
            } catch (const UnsupportedError& e) {
                row.note = not_claimed_note(e.what());
            }
            if (!est.warning.empty()) row.note += (row.note.empty() ? "" : "; ") + est.warning;
            rows.push_back(std::move(row));
        };

        std::size_t k = 0;
        if (has_v) {
            row_for("v_half_alpha", lower_bound_v(domain, x, alpha / 2.0, policy).value, mc[k],
                    [&] { return v_certificate(domain, cond, x, alpha, policy); });
        }
        ++k;
        if (has_h) {
            row_for("h", 0.0, mc[k++], [&] { return *h_certificate(domain, cond, x, alpha, policy); });
        }
        if (has_uf) {
            const Point rel = offset_from_anchor(domain, x);
            row_for("u_f", 0.0, mc[k++], [&] { return bound_uf(cond, rel, params, data, policy); });
        }
        if (has_ug) {
            // |u_g(x) - g(x0)| for g(y) = |g|_alpha |y - x0|^alpha
            const Point x0 = anchor_point(domain, x);
            const McEstimate ug = estimate_ug_wos(domain, holder_datum(x0, alpha, *data.g_seminorm), x,
                                                  options.budget.paths, wos_eps, derive_seed(seed, 1),
                                                  options.budget.workers);
            const Point rel = offset_from_anchor(domain, x);
            row_for("u_g", 0.0, ug, [&] { return bound_ug(cond, rel, params, data, policy, false); });
        }
    }
    return rows;
}

std::size_t count_failures(const std::vector<VerdictRow>& rows) {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.pass && !*r.pass) ++n;
    return n;
}

} // namespace exitbound

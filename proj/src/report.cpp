#include "exitbound/report.hpp"

#include "exitbound/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace exitbound {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_json_value(std::ostream& os, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad << json(it.key()).dump() << ": ";
            write_json_value(os, it.value(), indent, depth + 1);
        }
        os << "\n" << close_pad << "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[";
        bool first = true;
        for (const auto& v : j) {
            if (!first) os << ", ";
            first = false;
            write_json_value(os, v, indent, depth + 1);
        }
        os << "]";
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (std::isfinite(v)) os << format_number(v);
        else os << json(format_number(v)).dump();
        return;
    }
    default: os << j.dump(); return;
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_json_value(os, j, 2, 0);
    os << "\n";
}

void write_csv_file(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

json point_json(const Point& p) {
    json a = json::array();
    for (double v : p) a.push_back(v);
    return a;
}

json certificate_json(const CertificateRow& row) {
    json j;
    j["quantity"] = row.quantity;
    j["point"] = point_json(row.point);
    if (row.certificate) {
        const auto& c = *row.certificate;
        j["value"] = c.value;
        j["theorem_value"] = c.theorem_value;
        if (c.uniform_value) j["uniform_value"] = *c.uniform_value;
        j["theorem"] = c.theorem;
        j["regime"] = c.regime;
        json consts = json::object();
        for (const auto& [k, v] : c.constants) consts[k] = v;
        j["constants"] = consts;
    }
    j["note"] = row.note;
    return j;
}

json estimate_json(const McEstimate& e) {
    return {{"mean", e.mean},           {"std_error", e.std_error}, {"n", e.n},
            {"ci95", {e.ci95_low, e.ci95_high}}, {"seed", e.seed}, {"estimator", e.estimator},
            {"censored", e.censored},   {"warning", e.warning}};
}

std::string pass_text(const std::optional<bool>& pass) {
    if (!pass) return "n/a";
    return *pass ? "true" : "false";
}

json constants_document(const RunConfig& config) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["policy"] = to_string(config.policy);
    doc["domain"] = describe(config.domain);
    try {
        const ConstantTable table = derived_constants(config.params, config.domain, config.policy);
        json entries = json::object();
        for (const auto& [k, v] : table.entries) entries[k] = v;
        doc["constants"] = entries;
        doc["bdg_variants"] = bdg_constants(config.params.alpha, config.policy).variants_used;
    } catch (const std::exception& e) {
        doc["constants"] = json::object();
        doc["error"] = e.what();
    }
    doc["config"] = json::parse(emit_config(config));
    return doc;
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<CertificateRow> certify_points(const RunConfig& config) {
    const Condition cond = resolve_condition(config);
    const double alpha = config.params.alpha;
    const Policy policy = config.policy;
    const DomainSpec& domain = config.domain;
    std::vector<CertificateRow> rows;

    auto add = [&](const std::string& quantity, const Point& x, const std::function<BoundCertificate()>& f) {
        CertificateRow row;
        row.quantity = quantity;
        row.point = x;
        try {
            row.certificate = f();
        } catch (const RegimeError& e) {
            row.note = not_claimed_note(e.what());
        } catch (const std::exception& e) {
            row.note = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
    };

    auto wants = [&](const std::string& q) {
        return std::find(config.quantities.begin(), config.quantities.end(), q) != config.quantities.end();
    };

    for (const Point& x : resolve_points(config.points)) {
        if (wants("v")) {
            add("v_half_alpha_lower", x, [&] { return lower_bound_v(domain, x, alpha / 2.0, policy); });
            add("v_half_alpha", x, [&] { return v_certificate(domain, cond, x, alpha, policy); });
        }
        if (wants("h")) {
            add("h", x, [&] {
                auto c = h_certificate(domain, cond, x, alpha, policy);
                if (!c) throw UnsupportedError("no harmonic-measure certificate for " + describe(domain));
                return *c;
            });
        }
        if (wants("u_g"))
            add("u_g", x, [&] { return bound_ug(cond, offset_from_anchor(domain, x), config.params, config.data, policy); });
        if (wants("u_f"))
            add("u_f", x, [&] { return bound_uf(cond, offset_from_anchor(domain, x), config.params, config.data, policy); });
        if (wants("gradient"))
            add("gradient", x, [&] {
                return bound_gradient(cond, dist_to_boundary(domain, x), config.params, config.data, policy);
            });
    }
    return rows;
}

std::vector<EstimateRow> simulate_points(const RunConfig& config) {
    std::vector<EstimateRow> rows;
    if (config.mc.paths == 0) return rows;
    const DomainSpec& domain = config.domain;
    const double alpha = config.params.alpha;
    auto wants = [&](const std::string& q) {
        return std::find(config.quantities.begin(), config.quantities.end(), q) != config.quantities.end();
    };
    const bool faces = wants("h")
                       && (domain.kind == DomainKind::BallMinusCone || domain.kind == DomainKind::CylinderMinusWedge);
    const DecompositionSpec decomposition{Decomposition::ConeFaces, 0.0};

    const std::vector<Point> points = resolve_points(config.points);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& x = points[i];
        const std::uint64_t seed = derive_seed(config.mc.seed, i);
        std::vector<std::string> names;
        std::vector<std::pair<std::string, std::function<double(const ExitSample&)>>> functionals;
        if (wants("v")) {
            names.push_back("tau");
            functionals.emplace_back("em_tau", [](const ExitSample& s) { return s.tau; });
            names.push_back("v_half_alpha");
            functionals.emplace_back("em_tau_pow", [alpha](const ExitSample& s) { return std::pow(s.tau, alpha / 2.0); });
        }
        if (faces) {
            names.push_back("h");
            functionals.emplace_back("em_gamma1_fraction", [](const ExitSample& s) {
                return s.exit_class == BoundaryLabel::Gamma1 ? 1.0 : 0.0;
            });
        }
        if (wants("u_f") && config.data.f_norm) {
            const double f = *config.data.f_norm;
            names.push_back("u_f");
            functionals.emplace_back("em_constant_source", [f](const ExitSample& s) { return f * s.tau; });
        }
        if (!functionals.empty()) {
            const auto est = estimate_exit_functionals(domain, x, config.mc.paths, config.mc.path, seed, functionals,
                                                       faces ? &decomposition : nullptr, nullptr, config.mc.workers);
            for (std::size_t k = 0; k < est.size(); ++k) rows.push_back({names[k], x, est[k]});
        }
        if (wants("u_g") && config.data.g_seminorm) {
            const Point x0 = anchor_point(domain, x);
            rows.push_back({"u_g", x,
                            estimate_ug_wos(domain, holder_datum(x0, alpha, *config.data.g_seminorm), x,
                                            config.mc.paths, config.mc.wos_eps, derive_seed(seed, 1),
                                            config.mc.workers)});
        }
    }
    return rows;
}

RunReport run(const RunConfig& config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    RunReport report;
    const std::string ext = config.format == OutputFormat::Csv ? ".csv" : ".json";
    const std::string domain_name = describe(config.domain);

    write_json_file(dir / "constants.json", constants_document(config));
    report.files.push_back("constants.json");

    if (config.mode != Mode::Simulate) {
        report.certificates = certify_points(config);
        if (config.format == OutputFormat::Csv) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : report.certificates) {
                const auto& c = r.certificate;
                rows.push_back({domain_name, r.quantity, format_point(r.point), format_number(config.params.alpha),
                                c ? format_number(c->value) : "", c ? format_number(c->theorem_value) : "",
                                c ? opt_number(c->uniform_value) : "", c ? c->theorem : "", c ? c->regime : "",
                                r.note});
            }
            write_csv_file(dir / "certificates.csv",
                           {"domain", "quantity", "point", "alpha", "value", "theorem_value", "uniform_value",
                            "theorem", "regime", "note"},
                           rows);
        } else {
            json arr = json::array();
            for (const auto& r : report.certificates) arr.push_back(certificate_json(r));
            write_json_file(dir / "certificates.json", {{"domain", domain_name}, {"alpha", config.params.alpha},
                                                        {"certificates", arr}});
        }
        report.files.push_back("certificates" + ext);
    }

    if (config.mode == Mode::Simulate) {
        report.estimates = simulate_points(config);
        if (config.format == OutputFormat::Csv) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : report.estimates) {
                const auto& e = r.estimate;
                rows.push_back({domain_name, r.quantity, format_point(r.point), format_number(config.params.alpha),
                                format_number(e.mean), format_number(e.std_error), std::to_string(e.n),
                                format_number(e.ci95_low), format_number(e.ci95_high), std::to_string(e.censored),
                                std::to_string(e.seed), e.estimator, e.warning});
            }
            write_csv_file(dir / "estimates.csv",
                           {"domain", "quantity", "point", "alpha", "mean", "std_error", "n", "ci95_low", "ci95_high",
                            "censored", "seed", "estimator", "warning"},
                           rows);
        } else {
            json arr = json::array();
            for (const auto& r : report.estimates) {
                json j = estimate_json(r.estimate);
                j["quantity"] = r.quantity;
                j["point"] = point_json(r.point);
                arr.push_back(j);
            }
            write_json_file(dir / "estimates.json", {{"domain", domain_name}, {"estimates", arr}});
        }
        report.files.push_back("estimates" + ext);
    }

    if (config.mode == Mode::Verify) {
        VerifyOptions opts;
        opts.budget = {config.mc.paths, config.mc.seed, config.mc.workers};
        opts.path = config.mc.path;
        opts.wos_eps = config.mc.wos_eps;
        opts.condition = resolve_condition(config);
        opts.quantities = config.quantities;
        report.verdicts = verify_certificates(config.domain, resolve_points(config.points), config.params,
                                              config.data, opts, config.policy);
        report.failures = count_failures(report.verdicts);
        if (config.format == OutputFormat::Csv) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : report.verdicts) {
                rows.push_back({r.domain, r.quantity, format_point(r.point), format_number(r.alpha),
                                format_number(r.lower), format_number(r.mc.mean), format_number(r.mc.std_error),
                                opt_number(r.upper), pass_text(r.pass), std::to_string(r.mc.n),
                                std::to_string(r.mc.censored), r.theorem, r.note});
            }
            write_csv_file(dir / "verdicts.csv",
                           {"domain", "quantity", "point", "alpha", "lower", "mc_mean", "mc_se", "upper", "pass", "n",
                            "censored", "theorem", "note"},
                           rows);
        } else {
            json arr = json::array();
            for (const auto& r : report.verdicts) {
                json j = {{"domain", r.domain},   {"quantity", r.quantity}, {"point", point_json(r.point)},
                          {"alpha", r.alpha},     {"lower", r.lower},       {"mc", estimate_json(r.mc)},
                          {"pass", pass_text(r.pass)}, {"theorem", r.theorem}, {"note", r.note}};
                if (r.upper) j["upper"] = *r.upper;
                arr.push_back(j);
            }
            write_json_file(dir / "verdicts.json", {{"verdicts", arr}});
        }
        report.files.push_back("verdicts" + ext);
    }

    std::uint64_t paths = 0;
    std::uint64_t censored = 0;
    std::set<std::pair<std::string, std::uint64_t>> seen; // functionals of one run share their paths
    auto tally = [&](const Point& x, const McEstimate& e) {
        if (!e.warning.empty()) report.warnings.push_back(format_point(x) + ": " + e.warning);
        if (!seen.insert({format_point(x), e.seed}).second) return;
        paths += e.n + e.censored;
        censored += e.censored;
    };
    for (const auto& r : report.estimates) tally(r.point, r.estimate);
    for (const auto& r : report.verdicts) tally(r.point, r.mc);

    report.exit_code = report.failures == 0 ? 0 : 1;
    report.files.push_back("run-meta.json");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["mode"] = to_string(config.mode);
    meta["wall_clock_seconds"] = seconds;
    meta["paths_total"] = paths;
    meta["censored_total"] = censored;
    meta["censoring_fraction"] = paths ? static_cast<double>(censored) / static_cast<double>(paths) : 0.0;
    meta["failed_verdicts"] = report.failures;
    meta["exit_code"] = report.exit_code;
    meta["warnings"] = report.warnings;
    meta["files"] = report.files;
    meta["config"] = json::parse(emit_config(config));
    write_json_file(dir / "run-meta.json", meta);
    return report;
}

} // namespace exitbound

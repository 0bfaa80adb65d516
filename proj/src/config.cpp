#include "exitbound/config.hpp"

#include "exitbound/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <set>

namespace exitbound {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

// Collects errors with a path prefix instead of stopping at the first one.
class Checker {
public:
    void fail(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }

    void known_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
    }

    bool object(const json& j, const std::string& where) {
        if (j.is_object()) return true;
        fail(where, "expected an object");
        return false;
    }

    std::optional<double> number(const json& obj, const std::string& key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const std::string text = v.get<std::string>();
            if (text == "inf" || text == "infinity") return kInfinity;
            if (auto parsed = parse_angle(text)) return parsed;
        }
        fail(where + "." + key, "expected a number");
        return std::nullopt;
    }

    std::optional<std::uint64_t> unsigned_int(const json& obj, const std::string& key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        fail(where + "." + key, "expected a non-negative integer");
        return std::nullopt;
    }

    std::optional<std::string> string(const json& obj, const std::string& key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        if (obj.at(key).is_string()) return obj.at(key).get<std::string>();
        fail(where + "." + key, "expected a string");
        return std::nullopt;
    }

    std::optional<Point> point(const json& v, const std::string& where) {
        if (!v.is_array() || v.empty()) {
            fail(where, "expected a non-empty array of numbers");
            return std::nullopt;
        }
        Point p;
        for (const auto& c : v) {
            if (!c.is_number()) {
                fail(where, "expected a non-empty array of numbers");
                return std::nullopt;
            }
            p.push_back(c.get<double>());
        }
        return p;
    }

    // Accepts "pi", "pi/6", "2*pi/3", "0.5*pi".
    static std::optional<double> parse_angle(const std::string& s) {
        static const std::regex re(R"(^\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
        std::smatch m;
        if (!std::regex_match(s, m, re)) return std::nullopt;
        try {
            const double num = m[1].matched ? std::stod(m[1].str()) : 1.0;
            const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
            return num * std::numbers::pi / den;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    std::vector<std::string> errors;
};

template <class F>
void guarded(Checker& c, const std::string& where, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        c.fail(where, e.what());
    }
}

DomainSpec parse_domain(Checker& c, const json& j) {
    DomainSpec dom;
    if (!c.object(j, "domain")) return dom;
    c.known_keys(j, "domain", {"kind", "d", "center", "r", "R", "omega", "l"});
    const auto kind = c.string(j, "kind", "domain");
    if (!kind) {
        c.fail("domain.kind", "required");
        return dom;
    }
    guarded(c, "domain.kind", [&] { dom.kind = parse_domain_kind(*kind); });
    if (j.contains("center"))
        if (auto p = c.point(j.at("center"), "domain.center")) dom.center = *p;
    if (auto d = c.unsigned_int(j, "d", "domain")) dom.d = static_cast<int>(*d);
    else if (dom.kind == DomainKind::CylinderMinusWedge) dom.d = 3;
    else if (!dom.center.empty()) dom.d = static_cast<int>(dom.center.size());
    if (dom.center.empty()) dom.center.assign(static_cast<std::size_t>(std::max(dom.d, 0)), 0.0);
    dom.r = c.number(j, "r", "domain").value_or(0.0);
    dom.R = c.number(j, "R", "domain").value_or(0.0);
    dom.omega = c.number(j, "omega", "domain").value_or(0.0);
    dom.l = c.number(j, "l", "domain").value_or(0.0);
    if (dom.kind == DomainKind::Ball && !j.contains("R") && j.contains("r")) {
        dom.R = dom.r;
        dom.r = 0.0;
    }
    return dom;
}

json domain_json(const DomainSpec& dom) {
    json j;
    j["kind"] = to_string(dom.kind);
    j["d"] = dom.d;
    j["center"] = dom.center;
    switch (dom.kind) {
    case DomainKind::Ball: j["R"] = dom.R; break;
    case DomainKind::Annulus:
        j["r"] = dom.r;
        j["R"] = dom.R;
        break;
    case DomainKind::BallMinusCone:
        j["r"] = dom.r;
        j["omega"] = dom.omega;
        break;
    case DomainKind::CylinderMinusWedge:
        j["r"] = dom.r;
        j["omega"] = dom.omega;
        j["l"] = dom.l;
        break;
    }
    return j;
}

json gamma_json(double gamma) { return std::isinf(gamma) ? json("inf") : json(gamma); }

std::vector<std::string> default_quantities(const DomainSpec& dom, const DataSpec& data) {
    std::vector<std::string> q{"v"};
    if (dom.kind == DomainKind::BallMinusCone || dom.kind == DomainKind::CylinderMinusWedge) q.push_back("h");
    if (data.g_seminorm) q.push_back("u_g");
    if (data.f_norm) q.push_back("u_f");
    return q;
}

void semantic_checks(Checker& c, const RunConfig& cfg) {
    bool domain_ok = true;
    guarded(c, "domain", [&] {
        try {
            cfg.domain.validate();
        } catch (...) {
            domain_ok = false;
            throw;
        }
    });

    const double alpha = cfg.params.alpha;
    if (alpha == 1.0) {
        c.fail("params.alpha", "hypothesis 0 < α ≠ 1 violated (alpha = 1)");
    } else if (!std::isfinite(alpha)) {
        c.fail("params.alpha", "must be finite");
    } else if (!(alpha > 0.0)) {
        c.fail("params.alpha", "hypothesis 0 < α ≠ 1 violated (alpha must be > 0)");
    } else if (domain_ok && cfg.domain.kind == DomainKind::Annulus && alpha > 1.0) {
        c.fail("params.alpha", "exterior sphere estimates need 0 < α < 1");
    }
    if (!(cfg.params.gamma > 0.0)) c.fail("params.gamma", "must be > 0 or \"inf\"");
    if (!(cfg.params.q >= 1.0) || !(cfg.params.p >= 1.0)) {
        c.fail("params", "p and q must be >= 1");
    } else {
        const double inv = (std::isinf(cfg.params.p) ? 0.0 : 1.0 / cfg.params.p)
                           + (std::isinf(cfg.params.q) ? 0.0 : 1.0 / cfg.params.q);
        if (std::fabs(inv - 1.0) > 1e-12) c.fail("params", "1/p + 1/q must equal 1");
    }
    if (domain_ok && cfg.params.gamma_finite() && cfg.params.gamma > 0.0
        && !(2.0 * cfg.params.gamma - cfg.params.q * cfg.domain.d > 0.0)) {
        c.fail("params", "2γ−qd ≤ 0 vacuous bound (2*" + std::to_string(cfg.params.gamma) + " - "
                             + std::to_string(cfg.params.q) + "*" + std::to_string(cfg.domain.d) + " <= 0)");
    }

    if (cfg.data.g_seminorm && *cfg.data.g_seminorm < 0.0) c.fail("data.g_seminorm", "must be >= 0");
    if (cfg.data.g_sup_gap && *cfg.data.g_sup_gap < 0.0) c.fail("data.g_sup_gap", "must be >= 0");
    if (cfg.data.f_norm && *cfg.data.f_norm < 0.0) c.fail("data.f_norm", "must be >= 0");

    const auto& known = known_quantities();
    for (const auto& q : cfg.quantities) {
        if (std::find(known.begin(), known.end(), q) == known.end()) {
            c.fail("quantities", "unknown quantity '" + q + "' (known: " + join(known, ", ") + ")");
        } else if (q == "u_g" && !cfg.data.g_seminorm) {
            c.fail("quantities", "u_g needs data.g_seminorm");
        } else if (q == "u_f" && !cfg.data.f_norm) {
            c.fail("quantities", "u_f needs data.f_norm");
        } else if (q == "h" && domain_ok && cfg.domain.kind != DomainKind::BallMinusCone
                   && cfg.domain.kind != DomainKind::CylinderMinusWedge) {
            c.fail("quantities", "h needs a cone or wedge domain");
        }
    }

    if (cfg.mode != Mode::Certify && cfg.mc.paths != 0 && cfg.mc.paths < 100)
        c.fail("mc.paths", "must be 0 or at least 100");
    guarded(c, "mc", [&] { cfg.mc.path.validate(); });
    if (!(cfg.mc.wos_eps > 0.0)) c.fail("mc.wos_eps", "must be > 0");
    if (cfg.condition.delta && !(*cfg.condition.delta > 0.0 && *cfg.condition.delta < 1.0))
        c.fail("condition.delta", "must lie in (0, 1)");

    if (cfg.points.ray) {
        const RayGrid& g = *cfg.points.ray;
        if (g.count < 0) c.fail("points.ray.count", "must be >= 0");
        if (g.spacing == Spacing::Log && !(g.t_min > 0.0)) c.fail("points.ray", "log spacing needs t_min > 0");
        if (g.t_max < g.t_min) c.fail("points.ray", "t_max must be >= t_min");
        if (norm(g.direction) == 0.0) c.fail("points.ray.direction", "must be non-zero");
        if (g.direction.size() != g.origin.size()) c.fail("points.ray", "origin and direction dimensions differ");
    }
    if (!domain_ok) return;
    std::vector<Point> pts;
    guarded(c, "points", [&] { pts = resolve_points(cfg.points); });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string where = "points[" + std::to_string(i) + "]";
        if (static_cast<int>(pts[i].size()) != cfg.domain.d) {
            c.fail(where, "dimension does not match the domain");
        } else if (!contains(cfg.domain, pts[i])) {
            c.fail(where, "lies outside " + describe(cfg.domain));
        } else if (cfg.mode != Mode::Certify && dist_to_boundary(cfg.domain, pts[i]) == 0.0) {
            c.fail(where, "lies on the boundary; simulation needs interior points");
        }
    }
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::invalid_argument("invalid config:\n  - " + join(errors, "\n  - ")), errors_(std::move(errors)) {}

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::Certify: return "certify";
    case Mode::Simulate: return "simulate";
    case Mode::Verify: return "verify";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name) {
    if (name == "certify") return Mode::Certify;
    if (name == "simulate") return Mode::Simulate;
    if (name == "verify") return Mode::Verify;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + name + "'");
}

const std::vector<std::string>& known_quantities() {
    static const std::vector<std::string> q{"v", "h", "u_g", "u_f", "gradient"};
    return q;
}

std::vector<Point> resolve_points(const PointSpec& spec) {
    std::vector<Point> out = spec.list;
    if (spec.ray) {
        const RayGrid& g = *spec.ray;
        const double len = norm(g.direction);
        if (len == 0.0) throw GeometryError("ray direction must be non-zero");
        for (int i = 0; i < g.count; ++i) {
            const double u = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
            const double t = g.spacing == Spacing::Log ? g.t_min * std::pow(g.t_max / g.t_min, u)
                                                       : g.t_min + (g.t_max - g.t_min) * u;
            Point p = g.origin;
            for (std::size_t k = 0; k < p.size() && k < g.direction.size(); ++k) p[k] += t * g.direction[k] / len;
            out.push_back(std::move(p));
        }
    }
    return out;
}

Condition resolve_condition(const RunConfig& config) {
    Condition cond = condition_for(config.domain);
    cond.delta = config.condition.delta;
    cond.uniform = config.condition.uniform;
    return cond;
}

RunConfig validate_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("document: not well-formed JSON (") + e.what() + ")"});
    }
    Checker c;
    RunConfig cfg;
    if (!c.object(doc, "document")) throw ConfigError(c.errors);
    c.known_keys(doc, "document",
                 {"schema_version", "mode", "domain", "params", "data", "points", "mc", "policy", "quantities",
                  "condition", "out"});

    if (auto v = c.unsigned_int(doc, "schema_version", "document")) {
        if (*v != kSchemaVersion) c.fail("schema_version", "unsupported version " + std::to_string(*v));
    } else if (!doc.contains("schema_version")) {
        c.fail("schema_version", "required");
    }
    if (auto m = c.string(doc, "mode", "document")) guarded(c, "mode", [&] { cfg.mode = parse_mode(*m); });
    if (auto p = c.string(doc, "policy", "document")) guarded(c, "policy", [&] { cfg.policy = parse_policy(*p); });

    if (doc.contains("domain")) cfg.domain = parse_domain(c, doc.at("domain"));
    else c.fail("domain", "required");

    if (doc.contains("params") && c.object(doc.at("params"), "params")) {
        const json& j = doc.at("params");
        c.known_keys(j, "params", {"alpha", "gamma", "p", "q"});
        if (auto a = c.number(j, "alpha", "params")) cfg.params.alpha = *a;
        else c.fail("params.alpha", "required");
        if (auto g = c.number(j, "gamma", "params")) cfg.params.gamma = *g;
        const auto p = c.number(j, "p", "params");
        const auto q = c.number(j, "q", "params");
        if (q) cfg.params.q = *q;
        if (p) cfg.params.p = *p;
        if (q && !p) cfg.params.p = *q > 1.0 ? *q / (*q - 1.0) : kInfinity;
        if (p && !q) cfg.params.q = *p > 1.0 ? *p / (*p - 1.0) : kInfinity;
    } else if (!doc.contains("params")) {
        c.fail("params", "required");
    }

    if (doc.contains("data") && c.object(doc.at("data"), "data")) {
        const json& j = doc.at("data");
        c.known_keys(j, "data", {"g_seminorm", "g_sup_gap", "f_norm"});
        cfg.data.g_seminorm = c.number(j, "g_seminorm", "data");
        cfg.data.g_sup_gap = c.number(j, "g_sup_gap", "data");
        cfg.data.f_norm = c.number(j, "f_norm", "data");
    }

    if (doc.contains("points") && c.object(doc.at("points"), "points")) {
        const json& j = doc.at("points");
        c.known_keys(j, "points", {"list", "ray"});
        if (j.contains("list")) {
            if (!j.at("list").is_array()) c.fail("points.list", "expected an array of points");
            else
                for (std::size_t i = 0; i < j.at("list").size(); ++i)
                    if (auto p = c.point(j.at("list")[i], "points.list[" + std::to_string(i) + "]"))
                        cfg.points.list.push_back(*p);
        }
        if (j.contains("ray") && c.object(j.at("ray"), "points.ray")) {
            const json& r = j.at("ray");
            c.known_keys(r, "points.ray", {"origin", "direction", "t_min", "t_max", "count", "spacing"});
            RayGrid g;
            if (r.contains("origin")) {
                if (auto p = c.point(r.at("origin"), "points.ray.origin")) g.origin = *p;
            } else {
                g.origin.assign(static_cast<std::size_t>(std::max(cfg.domain.d, 0)), 0.0);
            }
            if (r.contains("direction")) {
                if (auto p = c.point(r.at("direction"), "points.ray.direction")) g.direction = *p;
            } else {
                c.fail("points.ray.direction", "required");
            }
            if (auto v = c.number(r, "t_min", "points.ray")) g.t_min = *v;
            else c.fail("points.ray.t_min", "required");
            if (auto v = c.number(r, "t_max", "points.ray")) g.t_max = *v;
            else c.fail("points.ray.t_max", "required");
            if (auto v = c.unsigned_int(r, "count", "points.ray")) g.count = static_cast<int>(*v);
            else c.fail("points.ray.count", "required");
            if (auto s = c.string(r, "spacing", "points.ray")) {
                if (*s == "log") g.spacing = Spacing::Log;
                else if (*s == "linear") g.spacing = Spacing::Linear;
                else c.fail("points.ray.spacing", "expected 'linear' or 'log'");
            }
            cfg.points.ray = g;
        }
    }

    bool domain_sane = true;
    try {
        cfg.domain.validate();
    } catch (const std::exception&) {
        domain_sane = false;
    }
    if (domain_sane) cfg.mc.path = PathParams::defaults_for(cfg.domain);
    if (domain_sane) cfg.mc.wos_eps = 1e-6 * diameter(cfg.domain);
    if (doc.contains("mc") && c.object(doc.at("mc"), "mc")) {
        const json& j = doc.at("mc");
        c.known_keys(j, "mc", {"paths", "seed", "workers", "dt_base", "shell_eps", "dt_policy", "kappa", "max_steps",
                               "wos_eps"});
        if (auto v = c.unsigned_int(j, "paths", "mc")) cfg.mc.paths = *v;
        if (auto v = c.unsigned_int(j, "seed", "mc")) cfg.mc.seed = *v;
        if (auto v = c.unsigned_int(j, "workers", "mc")) cfg.mc.workers = static_cast<unsigned>(*v);
        if (auto v = c.number(j, "dt_base", "mc")) cfg.mc.path.dt_base = *v;
        if (auto v = c.number(j, "shell_eps", "mc")) cfg.mc.path.shell_eps = *v;
        if (auto v = c.number(j, "kappa", "mc")) cfg.mc.path.kappa = *v;
        if (auto v = c.unsigned_int(j, "max_steps", "mc")) cfg.mc.path.max_steps = *v;
        if (auto v = c.number(j, "wos_eps", "mc")) cfg.mc.wos_eps = *v;
        if (auto s = c.string(j, "dt_policy", "mc"))
            guarded(c, "mc.dt_policy", [&] { cfg.mc.path.dt_policy = parse_dt_policy(*s); });
    }

    if (doc.contains("condition") && c.object(doc.at("condition"), "condition")) {
        const json& j = doc.at("condition");
        c.known_keys(j, "condition", {"delta", "uniform"});
        cfg.condition.delta = c.number(j, "delta", "condition");
        if (j.contains("uniform")) {
            if (j.at("uniform").is_boolean()) cfg.condition.uniform = j.at("uniform").get<bool>();
            else c.fail("condition.uniform", "expected a boolean");
        }
    }

    if (doc.contains("quantities")) {
        if (!doc.at("quantities").is_array()) {
            c.fail("quantities", "expected an array of names");
        } else {
            for (const auto& q : doc.at("quantities")) {
                if (q.is_string()) cfg.quantities.push_back(q.get<std::string>());
                else c.fail("quantities", "expected an array of names");
            }
        }
    } else {
        cfg.quantities = default_quantities(cfg.domain, cfg.data);
    }

    if (doc.contains("out") && c.object(doc.at("out"), "out")) {
        const json& j = doc.at("out");
        c.known_keys(j, "out", {"dir", "format"});
        if (auto s = c.string(j, "dir", "out")) cfg.out_dir = *s;
        if (auto s = c.string(j, "format", "out")) guarded(c, "out.format", [&] { cfg.format = parse_format(*s); });
    }

    semantic_checks(c, cfg);
    if (!c.errors.empty()) throw ConfigError(c.errors);
    return cfg;
}

void validate_config(const RunConfig& config) {
    Checker c;
    if (config.schema_version != kSchemaVersion) c.fail("schema_version", "unsupported version");
    semantic_checks(c, config);
    if (!c.errors.empty()) throw ConfigError(c.errors);
}

std::string emit_config(const RunConfig& cfg) {
    json doc;
    doc["schema_version"] = cfg.schema_version;
    doc["mode"] = to_string(cfg.mode);
    doc["policy"] = to_string(cfg.policy);
    doc["domain"] = domain_json(cfg.domain);
    doc["params"] = {{"alpha", cfg.params.alpha},
                     {"gamma", gamma_json(cfg.params.gamma)},
                     {"p", gamma_json(cfg.params.p)},
                     {"q", gamma_json(cfg.params.q)}};
    json data = json::object();
    if (cfg.data.g_seminorm) data["g_seminorm"] = *cfg.data.g_seminorm;
    if (cfg.data.g_sup_gap) data["g_sup_gap"] = *cfg.data.g_sup_gap;
    if (cfg.data.f_norm) data["f_norm"] = *cfg.data.f_norm;
    doc["data"] = data;
    json pts = json::object();
    pts["list"] = cfg.points.list;
    if (cfg.points.ray) {
        const RayGrid& g = *cfg.points.ray;
        pts["ray"] = {{"origin", g.origin},   {"direction", g.direction}, {"t_min", g.t_min},
                      {"t_max", g.t_max},     {"count", g.count},
                      {"spacing", g.spacing == Spacing::Log ? "log" : "linear"}};
    }
    doc["points"] = pts;
    doc["mc"] = {{"paths", cfg.mc.paths},
                 {"seed", cfg.mc.seed},
                 {"workers", cfg.mc.workers},
                 {"dt_base", cfg.mc.path.dt_base},
                 {"shell_eps", cfg.mc.path.shell_eps},
                 {"dt_policy", to_string(cfg.mc.path.dt_policy)},
                 {"kappa", cfg.mc.path.kappa},
                 {"max_steps", cfg.mc.path.max_steps},
                 {"wos_eps", cfg.mc.wos_eps}};
    json cond = {{"uniform", cfg.condition.uniform}};
    if (cfg.condition.delta) cond["delta"] = *cfg.condition.delta;
    doc["condition"] = cond;
    doc["quantities"] = cfg.quantities;
    doc["out"] = {{"dir", cfg.out_dir}, {"format", to_string(cfg.format)}};
    return doc.dump(2) + "\n";
}

} // namespace exitbound

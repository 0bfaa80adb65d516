#pragma once

#include "exitbound/bounds.hpp"
#include "exitbound/constants.hpp"
#include "exitbound/geometry.hpp"
#include "exitbound/montecarlo.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exitbound {

enum class Mode { Certify, Simulate, Verify };
enum class OutputFormat { Csv, Json };
enum class Spacing { Linear, Log };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);
std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& name);

// Points origin + t * direction / |direction| for count values of t in [t_min, t_max].
struct RayGrid {
    Point origin;
    Point direction;
    double t_min = 0.0;
    double t_max = 0.0;
    int count = 0;
    Spacing spacing = Spacing::Linear;
    bool operator==(const RayGrid&) const = default;
};

struct PointSpec {
    std::vector<Point> list;
    std::optional<RayGrid> ray;
    bool operator==(const PointSpec&) const = default;
};

std::vector<Point> resolve_points(const PointSpec& spec);

struct McSettings {
    std::uint64_t paths = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    PathParams path;
    double wos_eps = 0.0;
    bool operator==(const McSettings&) const = default;
};

struct ConditionOverrides {
    std::optional<double> delta;
    bool uniform = false;
    bool operator==(const ConditionOverrides&) const = default;
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    int schema_version = kSchemaVersion;
    Mode mode = Mode::Certify;
    DomainSpec domain;
    HolderParams params;
    DataSpec data;
    PointSpec points;
    McSettings mc;
    Policy policy = Policy::Canonical;
    std::vector<std::string> quantities;
    ConditionOverrides condition;
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::Csv;
    bool operator==(const RunConfig&) const = default;
};

// Itemized validation failure.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

// Quantities understood by certify / simulate / verify.
const std::vector<std::string>& known_quantities();

// Parses a JSON config document, applies defaults and checks every rule; throws ConfigError.
RunConfig validate_config(const std::string& text);

// Re-checks an already built config (e.g. after command line overrides).
void validate_config(const RunConfig& config);

// Fully resolved JSON document; validate_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

Condition resolve_condition(const RunConfig& config);

} // namespace exitbound

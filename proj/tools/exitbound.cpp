#include "exitbound/config.hpp"
#include "exitbound/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
    std::string policy;
    std::string format;
};

int execute(exitbound::Mode mode, const Overrides& o) {
    using namespace exitbound;
    std::ifstream in(o.config_path);
    if (!in) {
        std::cerr << "error: cannot read config '" << o.config_path << "'\n";
        return 2;
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
        RunConfig config = validate_config(text.str());
        config.mode = mode;
        if (!o.out.empty()) config.out_dir = o.out;
        if (o.seed) config.mc.seed = *o.seed;
        if (o.paths) config.mc.paths = *o.paths;
        if (!o.policy.empty()) config.policy = parse_policy(o.policy);
        if (!o.format.empty()) config.format = parse_format(o.format);
        validate_config(config);

        const RunReport report = run(config);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << to_string(mode) << ": wrote";
        for (const auto& f : report.files) std::cout << " " << f;
        std::cout << " to " << config.out_dir << "\n";
        if (mode == Mode::Verify) {
            std::cout << report.verdicts.size() << " verdict rows, " << report.failures << " failed\n";
        }
        return report.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exit-time moment and Hoelder certificates for Brownian motion, with Monte Carlo verification"};
    app.require_subcommand(1);
    Overrides o;
    exitbound::Mode mode = exitbound::Mode::Certify;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output directory (overrides out.dir)");
        sub->add_option("--policy", o.policy, "constant variant policy")->check(CLI::IsMember({"canonical", "best"}));
        sub->add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "RNG seed (overrides mc.seed)");
        sub->add_option("--paths", o.paths, "paths per point (overrides mc.paths)");
    };

    auto* certify = app.add_subcommand("certify", "evaluate constants and certificates only");
    add_common(certify);
    add_mc(certify);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates at the configured points");
    add_common(simulate);
    add_mc(simulate);
    auto* verify = app.add_subcommand("verify", "certificates sandwiched against Monte Carlo estimates");
    add_common(verify);
    add_mc(verify);

    certify->callback([&] { mode = exitbound::Mode::Certify; });
    simulate->callback([&] { mode = exitbound::Mode::Simulate; });
    verify->callback([&] { mode = exitbound::Mode::Verify; });

    CLI11_PARSE(app, argc, argv);
    return execute(mode, o);
}

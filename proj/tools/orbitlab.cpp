#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orbitlab/io.hpp"

namespace {

orbitlab::Json error_body(const orbitlab::Error& e) {
    orbitlab::Json j = orbitlab::Json::object();
    j["schema"] = 1;
    orbitlab::Json err = orbitlab::Json::object();
    err["code"] = orbitlab::error_code_name(e.code());
    err["message"] = e.what();
    if (e.index() >= 0) err["index"] = e.index();
    j["error"] = std::move(err);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    using orbitlab::RunConfig;

    CLI::App app{"exact arithmetic of rational dynamical systems, S-unit orbits, and D-finite series"};
    app.require_subcommand(1);

    RunConfig config;
    std::string eps_text = "1/20";
    std::string tail_text = "1/2";
    if (const char* env = std::getenv("ORBITLAB_BUDGET")) config.digit_budget = std::atol(env);

    const std::vector<std::string> commands = {"orbit",  "member",  "decompose", "depend",
                                               "torus",  "heights", "certify"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", config.input_path, "input definition (JSON)")->required();
        sub->add_option("--out", config.output_path, "report path, '-' for stdout");
        sub->add_option("--n", config.horizon, "orbit/expansion horizon");
        sub->add_option("--lmax", config.l_max, "largest period tried");
        sub->add_option("--eps", eps_text, "density threshold, a rational in (0, 1/2)");
        sub->add_option("--tail", tail_text, "tail fraction for density windows");
        sub->add_option("--window", config.windows, "window sizes (comma separated)")
            ->delimiter(',');
        sub->add_option("--budget", config.digit_budget, "digit-size budget for orbit values");
        sub->add_option("--format", config.format, "json or csv");
    }

    CLI11_PARSE(app, argc, argv);
    config.command = app.get_subcommands().front()->get_name();

    try {
        config.eps = orbitlab::parse_rational(eps_text);
        config.tail_fraction = orbitlab::parse_rational(tail_text);
        return orbitlab::run(config);
    } catch (const orbitlab::Error& e) {
        std::cout << error_body(e).dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

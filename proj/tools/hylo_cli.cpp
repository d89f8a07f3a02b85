// hylo: run one configuration file, or several concurrently with --sweep.

#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hylo/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Solitons of the fractional KdV and NLS families"};
    std::vector<std::string> configs;
    bool sweep = false;
    app.add_option("config", configs, "JSON run configuration")->required();
    app.add_flag("--sweep", sweep, "run several configurations concurrently (each needs its own output_dir)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hylo::exit_config_error;
    }
    if (configs.size() > 1 && !sweep) {
        std::cerr << "several configuration files given; pass --sweep to run them together\n";
        return hylo::exit_config_error;
    }
    if (configs.size() == 1) {
        return hylo::run_config_file(configs.front(), std::cerr);
    }

    std::vector<std::future<std::pair<int, std::string>>> jobs;
    for (const auto& path : configs) {
        jobs.push_back(std::async(std::launch::async, [path] {
            std::ostringstream log;
            const int code = hylo::run_config_file(path, log);
            return std::make_pair(code, log.str());
        }));
    }
    int worst = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto [code, text] = jobs[i].get();
        std::cerr << "[" << configs[i] << "] exit " << code << "\n" << text;
        worst = std::max(worst, code);
    }
    return worst;
}

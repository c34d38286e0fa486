#include "CLI11.hpp"

#include <iostream>

#include "orbsieve/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"orbsieve: sieve experiments on matrix-group orbits at desk scale"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, resume_path;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    app.add_option("--config", config_path, "config file (key = value lines)");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--resume", resume_path, "walk ensemble snapshot to resume from");

    for (const char* name : {"apollonian", "strongapprox", "spectral", "sieve", "saturation", "dt3m"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        orbsieve::cli::RunConfig cfg;
        if (!config_path.empty()) cfg = orbsieve::cli::parse_config_file(config_path);
        for (const auto* sub : app.get_subcommands()) {
            cfg.subcommand = sub->get_name();
            cfg.raw["subcommand"] = sub->get_name();
        }
        if (app.count("--seed")) {
            cfg.seed = seed;
            cfg.raw["seed"] = std::to_string(seed);
        }
        if (app.count("--out")) {
            cfg.out_dir = out_dir;
            cfg.raw["out"] = out_dir;
        }
        if (app.count("--workers")) {
            cfg.workers = workers;
            cfg.raw["workers"] = std::to_string(workers);
        }
        if (app.count("--resume")) {
            cfg.resume_path = resume_path;
            cfg.raw["resume"] = resume_path;
        }
        return orbsieve::cli::run(cfg);
    } catch (const orbsieve::cli::ConfigError& e) {
        std::cerr << "orbsieve: " << e.what() << "\n";
        return orbsieve::cli::kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "orbsieve: " << e.what() << "\n";
        return orbsieve::cli::kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "orbsieve: internal error: " << e.what() << "\n";
        return 1;
    }
}

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ','))
        values.push_back(std::stod(item));
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bousslab: pseudo-spectral lab for 2D Boussinesq convection with "
        "fractional dissipation"};
    app.require_subcommand(1);

    std::string config_path;
    bousslab::cli::CommonFlags flags;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")
            ->required();
        sub->add_option("--out", flags.out_dir, "output directory override");
        sub->add_option("--jobs", flags.jobs, "worker count for sweeps");
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t& v) {
                seed_flag = v;
                seed_set = true;
            },
            "seed override");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run one simulation");
    add_common(simulate);

    CLI::App* verify =
        app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "bernstein|semigroup|smoothing|apriori|transport|all")
        ->required();
    add_common(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
    std::string param = "alpha";
    std::string values_list;
    sweep->add_option("--param", param, "swept parameter (alpha)");
    sweep->add_option("--values", values_list, "comma-separated values")
        ->required();
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);
    if (seed_set)
        flags.seed = seed_flag;

    try {
        const bousslab::cli::RunConfig cfg =
            bousslab::cli::RunConfig::from_file(config_path);
        if (simulate->parsed())
            return bousslab::cli::cmd_simulate(cfg, flags);
        if (verify->parsed())
            return bousslab::cli::cmd_verify(suite, cfg, flags);
        if (sweep->parsed())
            return bousslab::cli::cmd_sweep(cfg, param, parse_values(values_list),
                                            flags);
    } catch (const bousslab::cli::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gpue_cli.hpp"

using namespace gpue::cli;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--sigma", cfg.sigma, "Ensemble width sigma")->capture_default_str();
    cmd->add_option("--samples", cfg.samples, "Number of draws (accepted draws for density)")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    cmd->add_option("--bins", cfg.bins, "Number of histogram bins")->capture_default_str();
    cmd->add_option("--smax", cfg.smax, "Upper edge of the spacing histogram");
    cmd->add_option("--out", cfg.out, "Output file (default: standard output)");
    cmd->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
    cmd->add_flag("--per-level", cfg.per_level, "Normalize the level density to 1 instead of 2");
    cmd->add_flag("--unit-mean", cfg.unit_mean, "Rescale spacings to unit mean");
    cmd->add_flag("--wigner", cfg.wigner, "Add Wigner surmise overlay columns");
    cmd->add_option("--workers", cfg.workers, "Worker threads (default: GPUE_WORKERS or hardware threads)");
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    cfg.workers = default_workers();

    CLI::App app{"Sampling and analysis tools for the 2x2 pseudo-Hermitian random matrix ensemble"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        Command command;
    };
    const Sub subs[] = {
        {"verify", "Run the invariant battery of every module", Command::verify},
        {"sample", "Dump raw draws (a, b, c) and their eigenvalues", Command::sample},
        {"spacing", "Monte Carlo spacing histogram against the analytic density", Command::spacing},
        {"density", "Level density by quadrature and Monte Carlo", Command::density},
        {"jpdf-check", "Compare the closed-form joint density with direct integration", Command::jpdf_check},
        {"bessel", "Evaluate K0(x)", Command::bessel},
    };
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, cfg);
        if (s.command == Command::bessel) {
            cmd->add_option("x", cfg.x, "Argument (x > 0)")->required();
        }
        cmd->callback([&cfg, c = s.command] { cfg.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }
    return execute(cfg, std::cout, std::cerr);
}

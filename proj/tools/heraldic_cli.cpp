/**
 * Copyright 2026 The heraldic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "heraldic/experiment.hpp"

namespace {

int default_workers() {
    if (const char* env = std::getenv("HERALDIC_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded entangled-state generation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = default_workers();
    bool quiet = false;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* copt = sub->add_option("--config", config_path, "experiment config file");
        if (need_config) copt->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "base random seed (overrides config)")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--workers", workers, "concurrent worker count");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    };

    auto* opt_cmd = app.add_subcommand("optimize", "optimize one configuration");
    auto* sweep_cmd = app.add_subcommand("sweep", "optimize a gadget/herald grid");
    auto* robust_cmd =
        app.add_subcommand("robustness", "perturbation study around an optimum");
    auto* validate_cmd =
        app.add_subcommand("validate", "run the numerical oracle suite");
    add_common(opt_cmd, true);
    add_common(sweep_cmd, true);
    add_common(robust_cmd, true);
    add_common(validate_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return heraldic::kConfigError;
    }

    heraldic::RunContext ctx;
    ctx.out_dir = out_dir;
    ctx.workers = workers;
    ctx.quiet = quiet;

    try {
        if (validate_cmd->parsed()) return heraldic::run_validate(ctx);

        heraldic::ExperimentConfig config = heraldic::load_config(config_path);
        if (seed_given) config.optimizer.seed = seed;

        if (opt_cmd->parsed()) return heraldic::run_optimize(config, ctx);
        if (sweep_cmd->parsed()) return heraldic::run_sweep(config, ctx);
        return heraldic::run_robustness(config, ctx);
    } catch (const heraldic::config_error& e) {
        std::cerr << e.what() << "\n";
        return heraldic::kConfigError;
    } catch (const heraldic::infeasible_error& e) {
        std::cerr << e.what() << "\n";
        return heraldic::kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

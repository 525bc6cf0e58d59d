// Copyright 2026 The catrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catrep_cli/commands.hpp"
#include "catrep_cli/config.hpp"

#include "catrep/error.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kUsage = 2;

void emit(const catrep::cli::Config& config, const std::string& text) {
    const std::string path = config.get_string("out");
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        throw catrep::cli::ConfigError("out", "cannot write " + path);
    }
}

} // namespace

int main(int argc, char** argv) {
    using catrep::cli::Config;

    CLI::App app{"Cat-state quantum repeater simulator"};
    app.require_subcommand(1);
    std::string config_path;
    std::string seed;
    std::string workers;
    std::string out;
    std::string trials;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "master seed (overrides config)");
    app.add_option("--workers", workers, "worker threads (overrides config)");
    app.add_option("--out", out, "output path (overrides config)");
    app.add_option("--trials", trials, "trial count (overrides config)");
    auto* fig2 = app.add_subcommand("fig2", "breeding fidelity/rate sweep (CSV)");
    auto* fig3 = app.add_subcommand("fig3", "optimised repeater rate versus distance (CSV)");
    auto* breed = app.add_subcommand("breed", "one breeding run (JSON)");
    auto* swap = app.add_subcommand("swap", "one cat swap (JSON)");
    auto* validate = app.add_subcommand("validate", "invariant suite (JSON)");
    auto* dump = app.add_subcommand("config", "print the effective configuration");
    for (auto* sub : {fig2, fig3, breed, swap, validate, dump}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        Config config = config_path.empty() ? Config() : Config::load(config_path);
        if (!seed.empty()) {
            config.set("seed", seed);
        }
        if (!workers.empty()) {
            config.set("workers", workers);
        }
        if (!out.empty()) {
            config.set("out", out);
        }
        if (!trials.empty()) {
            config.set(fig3->parsed() ? "repeater.trials" : "trials", trials);
        }

        if (fig2->parsed()) {
            emit(config, catrep::cli::fig2_csv(config));
        } else if (fig3->parsed()) {
            emit(config, catrep::cli::fig3_csv(config));
        } else if (breed->parsed()) {
            emit(config, catrep::cli::breed_json(config));
        } else if (swap->parsed()) {
            emit(config, catrep::cli::swap_json(config));
        } else if (validate->parsed()) {
            const auto checks = catrep::cli::run_validation(config);
            emit(config, catrep::cli::validation_json(checks));
            const bool ok = std::all_of(checks.begin(), checks.end(),
                                        [](const auto& c) { return c.passed; });
            return ok ? kOk : kValidationFailed;
        } else if (dump->parsed()) {
            emit(config, config.serialize());
        }
    } catch (const catrep::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const catrep::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailed;
    }
    return kOk;
}

// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The dmace authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Command-line front end: run, validate, sweep, selftest.

#include "dmace/campaign.hpp"
#include "dmace/config.hpp"
#include "dmace/error.hpp"
#include "dmace/receiver.hpp"
#include "dmace/selftest.hpp"
#include "dmace/signal.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace dmace;

namespace
{

int exit_code(ErrorCategory c)
{
    switch (c)
    {
    case ErrorCategory::config: return 2;
    case ErrorCategory::io: return 3;
    case ErrorCategory::numerical: return 4;
    default: return 5;
    }
}

struct GlobalOptions
{
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
    bool noiseless = false;
};

ExperimentConfig load_with_overrides(const std::string &path, const GlobalOptions &g)
{
    ExperimentConfig cfg = load_config(path);
    if (g.seed)
        cfg.seed = *g.seed;
    if (g.noiseless)
        cfg.noiseless = true;
    return cfg;
}

void write_file(const fs::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCategory::io, "cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw Error(ErrorCategory::io, "write failed for '" + path.string() + "'");
}

fs::path prepare_out_dir(const std::string &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCategory::io, "cannot create output directory '" + dir + "': " + ec.message());
    return fs::path(dir);
}

void print_warnings(const std::vector<std::string> &warnings)
{
    for (const auto &w : warnings)
        std::cerr << "warning: " << w << "\n";
}

int cmd_validate(const std::string &path, const GlobalOptions &g)
{
    const ExperimentConfig cfg = load_with_overrides(path, g);
    const auto warnings = cfg.validate();
    const IdentifiabilityReport r = identifiability_preflight(cfg.K, cfg.T, cfg.P, cfg.N);
    std::cout << "config: ok\n"
              << "dims: K=" << cfg.K << " T=" << cfg.T << " P=" << cfg.P << " N=" << cfg.N << "\n"
              << "kruskal_ok=" << (r.kruskal_ok ? "true" : "false") << " (" << r.kruskal_lhs
              << (r.kruskal_ok ? " >= " : " < ") << r.kruskal_rhs << ")\n"
              << "relaxed_ok=" << (r.relaxed_ok ? "true" : "false") << " (" << r.relaxed_lhs
              << (r.relaxed_ok ? " >= " : " < ") << r.relaxed_rhs << ")\n"
              << "p_ge_n=" << (r.p_ge_n ? "true" : "false") << "\n"
              << "bals_cost_per_iteration=" << flop_estimate(cfg.K, cfg.T, cfg.P, cfg.N) << "\n";
    print_warnings(warnings);
    if (!r.kruskal_ok)
        std::cerr << "warning: Kruskal's condition does not hold; proceeding on the relaxed uniqueness condition\n";
    if (!r.relaxed_ok)
        std::cerr << "warning: relaxed uniqueness condition does not hold; estimates may not be unique\n";
    return 0;
}

int cmd_run(const std::string &path, const GlobalOptions &g)
{
    const ExperimentConfig cfg = load_with_overrides(path, g);
    const CampaignResult result = run_campaign(cfg, g.threads);
    print_warnings(result.warnings);

    const fs::path dir = prepare_out_dir(g.out_dir);
    std::ostringstream csv;
    write_csv(csv, cfg, result.rows);
    write_file(dir / "metrics.csv", csv.str());
    write_file(dir / "summary.json", summary_json(cfg, result).dump(2) + "\n");
    std::cout << csv.str();
    if (!result.failures.empty())
        std::cerr << "warning: " << result.failures.size() << " trial(s) failed and were excluded\n";
    return 0;
}

std::vector<std::vector<std::string>> cartesian(const std::vector<SweepAxis> &axes)
{
    std::vector<std::vector<std::string>> combos{{}};
    for (const auto &axis : axes)
    {
        std::vector<std::vector<std::string>> next;
        for (const auto &prefix : combos)
            for (const auto &v : axis.values)
            {
                auto c = prefix;
                c.push_back(v);
                next.push_back(std::move(c));
            }
        combos = std::move(next);
    }
    return combos;
}

int cmd_sweep(const std::string &path, const std::vector<std::string> &vary, const GlobalOptions &g)
{
    ExperimentConfig base = load_with_overrides(path, g);
    for (const auto &spec : vary)
    {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::config, "--vary expects key=v1,v2,... (got '" + spec + "')");
        ExperimentConfig extra = parse_config("sweep." + spec.substr(0, eq) + " = " + spec.substr(eq + 1));
        base.sweep.insert(base.sweep.end(), extra.sweep.begin(), extra.sweep.end());
    }
    if (base.sweep.empty())
        throw Error(ErrorCategory::config, "sweep: no parameter ranges declared (use sweep.<key> or --vary)");

    std::ostringstream csv;
    csv << "# dmace-sweep v1\n";
    for (const auto &axis : base.sweep)
        csv << axis.key << ',';
    csv << kCsvHeader << "\n";

    std::size_t failed = 0;
    for (const auto &combo : cartesian(base.sweep))
    {
        ExperimentConfig cfg = base;
        for (std::size_t i = 0; i < combo.size(); ++i)
            apply_setting(cfg, base.sweep[i].key, combo[i]);
        const CampaignResult result = run_campaign(cfg, g.threads);
        print_warnings(result.warnings);
        failed += result.failures.size();

        std::ostringstream rows;
        write_csv(rows, cfg, result.rows);
        std::istringstream lines(rows.str());
        std::string line;
        std::getline(lines, line); // comment
        std::getline(lines, line); // header
        while (std::getline(lines, line))
        {
            for (const auto &v : combo)
                csv << v << ',';
            csv << line << "\n";
        }
    }
    const fs::path dir = prepare_out_dir(g.out_dir);
    write_file(dir / "sweep.csv", csv.str());
    std::cout << csv.str();
    if (failed > 0)
        std::cerr << "warning: " << failed << " trial(s) failed and were excluded\n";
    return 0;
}

int cmd_selftest(const GlobalOptions &g)
{
    const auto results = run_selftest(g.seed.value_or(7));
    bool all = true;
    std::size_t width = 0;
    for (const auto &r : results)
        width = std::max(width, r.name.size());
    for (const auto &r : results)
    {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ')
                  << r.detail << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Semi-blind PARAFAC channel estimation for DMA-based MISO-OFDM downlinks"};
    app.require_subcommand(1);

    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
    auto *seed_opt = app.add_option("--seed", seed_value, "Override the master seed");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--noiseless", g.noiseless, "Simulate without noise (single +inf SNR point)");

    std::string config_path;
    std::vector<std::string> vary;
    auto *run = app.add_subcommand("run", "Run a Monte Carlo campaign (CSV + JSON summary)");
    run->add_option("config", config_path, "Config file")->required();
    auto *validate = app.add_subcommand("validate", "Validate a config and report identifiability");
    validate->add_option("config", config_path, "Config file")->required();
    auto *sweep = app.add_subcommand("sweep", "Grid over declared parameter ranges");
    sweep->add_option("config", config_path, "Config file")->required();
    sweep->add_option("--vary", vary, "key=v1,v2,... (repeatable)");
    auto *selftest = app.add_subcommand("selftest", "Run the invariant suite");

    // Global flags may follow the subcommand too.
    for (auto *sub : {run, validate, sweep, selftest})
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    if (seed_opt->count() > 0)
        g.seed = seed_value;

    try
    {
        if (*run)
            return cmd_run(config_path, g);
        if (*validate)
            return cmd_validate(config_path, g);
        if (*sweep)
            return cmd_sweep(config_path, vary, g);
        if (*selftest)
            return cmd_selftest(g);
    }
    catch (const Error &e)
    {
        std::cerr << "error[" << category_name(e.category()) << "]: " << e.what() << "\n";
        return exit_code(e.category());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 6;
    }
    return 0;
}

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


#include "dmace/campaign.hpp"

#include "dmace/benchmarks.hpp"
#include "dmace/error.hpp"
#include "dmace/metrics.hpp"
#include "dmace/receiver.hpp"
#include "dmace/signal.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#ifndef DMACE_VERSION_STAMP
#define DMACE_VERSION_STAMP "dmace-unknown"
#endif

namespace dmace
{

namespace
{

enum Stream : std::uint64_t
{
    kStreamPhysical = 1,
    kStreamNoise = 2,
    kStreamInit = 3
};

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt(const char *spec, double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

} // namespace

const char *version_stamp() { return DMACE_VERSION_STAMP; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t a, std::uint64_t b)
{
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ a);
    return splitmix64(h ^ b);
}

TrialOutcome run_trial(const ExperimentConfig &cfg, double snr_db, std::size_t snr_index, std::uint64_t trial)
{
    TrialOutcome out;
    try
    {
        Rng physical(derive_seed(cfg.seed, kStreamPhysical, trial));
        Rng noise(derive_seed(cfg.seed, kStreamNoise, trial, snr_index));
        Rng init(derive_seed(cfg.seed, kStreamInit, trial, snr_index));

        const WirelessChannel wireless = gen_wireless(cfg.K, cfg.N, physical);
        const InnerChannel inner = cfg.inner_model == InnerModel::random_phase
                                       ? gen_inner_random_phase(cfg.N, physical)
                                       : gen_inner_physical(cfg.D, cfg.L, cfg.alpha, cfg.beta, cfg.spacing);
        const bool pilots = cfg.receiver == ReceiverKind::bench_pilot_aided;
        const SymbolBlock symbols = pilots ? gen_pilots(cfg.T) : gen_qam(cfg.T, cfg.qam_order, physical);
        const TrainingMatrix training = cfg.training == TrainingKind::lorentzian
                                            ? gen_lorentzian_training(cfg.P, cfg.N, physical)
                                            : gen_dft_training(cfg.P, cfg.N);

        const RankOneFactor X = build_rank_one(symbols.s, inner.m);
        const ReceivedTensor Y = add_noise(build_noiseless(wireless.H, X.X, training.F), snr_db, noise);

        BalsConfig bals_cfg;
        bals_cfg.tol = cfg.tol;
        bals_cfg.max_iters = cfg.max_iters;
        const AmbiguityAnchors anchors{symbols.s(0), std::nullopt};

        EstimateReport rep;
        switch (cfg.receiver)
        {
        case ReceiverKind::proposed: rep = estimate_semi_blind(Y, training, bals_cfg, anchors, init); break;
        case ReceiverKind::bench_data_aided: rep = data_aided_benchmark(Y, training, bals_cfg, anchors, init); break;
        case ReceiverKind::bench_pilot_aided: rep = pilot_aided_benchmark(Y, training, symbols.s, inner.m); break;
        }

        const ComplexVector delta = diagonal_fit(rep.H_hat, wireless.H);
        ComplexVector m_aligned(rep.m_hat.size());
        for (Eigen::Index n = 0; n < delta.size(); ++n)
        {
            if (delta(n) == cdouble{0.0, 0.0})
                throw Error(ErrorCategory::ambiguity, "channel estimate column " + std::to_string(n) + " is zero");
            m_aligned(n) = rep.m_hat(n) / delta(n);
        }

        out.nmse_H = nmse(rep.H_hat, wireless.H, FitClass::diagonal);
        out.nmse_m = nmse(m_aligned, inner.m, FitClass::none);
        out.ser = pilots ? nan() : ser(rep.s_hat, symbols, true);
        out.iterations = static_cast<double>(rep.iterations);
        out.runtime_s = cfg.record_runtime ? rep.runtime_s : 0.0;
        out.residual_trace = std::move(rep.residual_trace);
        if (!std::isfinite(out.nmse_H) || !std::isfinite(out.nmse_m))
            throw Error(ErrorCategory::numerical, "non-finite NMSE");
        out.ok = true;
    }
    catch (const Error &e)
    {
        out.ok = false;
        out.error = std::string(category_name(e.category())) + ": " + e.what();
    }
    return out;
}

CampaignResult run_campaign(const ExperimentConfig &cfg, std::size_t threads)
{
    CampaignResult result;
    result.warnings = cfg.validate();

    const std::vector<double> grid = cfg.effective_snr_grid();
    const std::size_t jobs = grid.size() * cfg.trials;
    std::vector<TrialOutcome> outcomes(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t job = next++; job < jobs; job = next++)
        {
            const std::size_t snr_index = job / cfg.trials;
            const std::size_t trial = job % cfg.trials;
            outcomes[job] = run_trial(cfg, grid[snr_index], snr_index, trial);
            outcomes[job].residual_trace.clear();
            outcomes[job].residual_trace.shrink_to_fit();
        }
    };
    threads = std::max<std::size_t>(threads, 1);
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    for (std::size_t si = 0; si < grid.size(); ++si)
    {
        MetricRow row;
        row.snr_db = grid[si];
        double sum_h = 0.0, sum_m = 0.0, sum_ser = 0.0, sum_it = 0.0, sum_rt = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t)
        {
            const TrialOutcome &o = outcomes[si * cfg.trials + t];
            if (!o.ok)
            {
                ++row.failed;
                result.failures.push_back("snr=" + fmt("%g", grid[si]) + " trial=" + std::to_string(t) + " " +
                                          o.error);
                continue;
            }
            ++row.trials;
            sum_h += o.nmse_H;
            sum_m += o.nmse_m;
            sum_ser += o.ser;
            sum_it += o.iterations;
            sum_rt += o.runtime_s;
        }
        if (row.trials > 0)
        {
            const auto n = static_cast<double>(row.trials);
            row.nmse_H_db = to_db(sum_h / n);
            row.nmse_m_db = to_db(sum_m / n);
            row.ser = sum_ser / n;
            row.mean_iters = sum_it / n;
            row.mean_runtime_s = sum_rt / n;
        }
        else
        {
            row.nmse_H_db = row.nmse_m_db = row.ser = row.mean_iters = row.mean_runtime_s = nan();
        }
        result.rows.push_back(row);
    }
    return result;
}

void write_csv(std::ostream &os, const ExperimentConfig &cfg, const std::vector<MetricRow> &rows)
{
    os << "# dmace-metrics v1; receiver=" << receiver_name(cfg.receiver) << "; training=" << training_name(cfg.training)
       << "; fit_H=diagonal; fit_m=propagated-diagonal\n";
    os << kCsvHeader << "\n";
    for (const auto &r : rows)
    {
        os << fmt("%.1f", r.snr_db) << ',' << fmt("%.6f", r.nmse_H_db) << ',' << fmt("%.6f", r.nmse_m_db) << ','
           << fmt("%.6e", r.ser) << ',' << fmt("%.4f", r.mean_iters) << ',' << fmt("%.6e", r.mean_runtime_s) << ','
           << r.trials << ',' << r.failed << '\n';
    }
}

nlohmann::json summary_json(const ExperimentConfig &cfg, const CampaignResult &result)
{
    using nlohmann::json;
    json j;
    j["version"] = version_stamp();
    j["seed"] = cfg.seed;
    j["config"] = {{"K", cfg.K},
                   {"T", cfg.T},
                   {"P", cfg.P},
                   {"N", cfg.N},
                   {"D", cfg.D},
                   {"L", cfg.L},
                   {"snr_grid_db", cfg.snr_grid_db},
                   {"trials", cfg.trials},
                   {"receiver", receiver_name(cfg.receiver)},
                   {"training", training_name(cfg.training)},
                   {"inner_model", inner_model_name(cfg.inner_model)},
                   {"alpha", cfg.alpha},
                   {"beta", cfg.beta},
                   {"spacing", cfg.spacing},
                   {"qam_order", cfg.qam_order},
                   {"tol", cfg.tol},
                   {"max_iters", cfg.max_iters},
                   {"noiseless", cfg.noiseless},
                   {"allow_p_lt_n", cfg.allow_p_lt_n},
                   {"record_runtime", cfg.record_runtime}};
    j["metrics"] = {{"nmse_H_fit", "diagonal least-squares fit against the true channel"},
                    {"nmse_m_fit", "m_hat divided by the per-element factors fitted on H"},
                    {"ser", "first symbol is the known reference and is excluded"}};
    switch (cfg.receiver)
    {
    case ReceiverKind::proposed:
        j["side_information"] = json::array({"reference symbol s_1"});
        break;
    case ReceiverKind::bench_data_aided:
        j["side_information"] = json::array({"reference symbol s_1", "semi-unitary training"});
        break;
    case ReceiverKind::bench_pilot_aided:
        j["side_information"] = json::array({"all symbols (pilots)", "true inner channel m (oracle)",
                                             "semi-unitary training"});
        break;
    }
    j["warnings"] = result.warnings;
    j["failed_trials"] = result.failures.size();
    json rows = json::array();
    for (const auto &r : result.rows)
    {
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
        rows.push_back({{"snr_db", num(r.snr_db)},
                        {"nmse_H_db", num(r.nmse_H_db)},
                        {"nmse_m_db", num(r.nmse_m_db)},
                        {"ser", num(r.ser)},
                        {"mean_iters", num(r.mean_iters)},
                        {"mean_runtime_s", num(r.mean_runtime_s)},
                        {"trials", r.trials},
                        {"failed", r.failed}});
    }
    j["rows"] = rows;
    return j;
}

} // namespace dmace

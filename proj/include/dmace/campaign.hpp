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


// Monte Carlo orchestration.
//
// Per-trial random streams are derived from (master seed, trial index) for
// the physical draws (H, m, s, F) and from (master seed, trial, SNR index) for
// the noise and the ALS initialization, so the same channel realizations are
// reused across the SNR grid and across receivers. Results are stored by trial
// index and reduced in index order; the thread count never changes an output
// value.

#pragma once

#include "dmace/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace dmace
{

struct TrialOutcome
{
    bool ok = false;
    double nmse_H = 0.0; // linear
    double nmse_m = 0.0; // linear
    double ser = 0.0;    // NaN when the receiver carries no data symbols
    double iterations = 0.0;
    double runtime_s = 0.0;
    std::vector<double> residual_trace;
    std::string error;
};

struct MetricRow
{
    double snr_db = 0.0;
    double nmse_H_db = 0.0;
    double nmse_m_db = 0.0;
    double ser = 0.0;
    double mean_iters = 0.0;
    double mean_runtime_s = 0.0;
    std::size_t trials = 0; // successful trials
    std::size_t failed = 0;
};

struct CampaignResult
{
    std::vector<MetricRow> rows;
    std::vector<std::string> warnings;
    std::vector<std::string> failures; // one message per failed trial
};

/// Deterministic 64-bit stream seed from a tuple of counters.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t a, std::uint64_t b = 0);

/// Runs one Monte Carlo trial. NMSE(H) uses a least-squares diagonal fit
/// against the true channel; the same per-element factors are divided out of
/// m_hat before NMSE(m) is taken without further fitting.
TrialOutcome run_trial(const ExperimentConfig &cfg, double snr_db, std::size_t snr_index, std::uint64_t trial);

CampaignResult run_campaign(const ExperimentConfig &cfg, std::size_t threads = 1);

inline constexpr const char *kCsvHeader = "snr_db,nmse_H_db,nmse_m_db,ser,mean_iters,mean_runtime_s,trials,failed";

void write_csv(std::ostream &os, const ExperimentConfig &cfg, const std::vector<MetricRow> &rows);

/// Config echo, version stamp, seed, side-information labels and rows.
nlohmann::json summary_json(const ExperimentConfig &cfg, const CampaignResult &result);

const char *version_stamp();

} // namespace dmace

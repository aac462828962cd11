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


// Experiment configuration and its flat key-value text format.
//
//   # comment
//   K = 8
//   snr_grid_db = 0:5:30        (start:step:stop, inclusive)  or  0, 10, 20
//   receiver = proposed
//   sweep.P = 16, 24, 32        (declares a range for the `sweep` command)
//
// Keys (defaults in parentheses):
//   K (8) T (10) P (32) N (16) D (2) L (8)
//   snr_grid_db (0:5:30)   trials (10000)
//   receiver   proposed | bench-data-aided | bench-pilot-aided   (proposed)
//   training   lorentzian | semi-unitary-dft                     (lorentzian)
//   inner_model random-phase | physical                          (random-phase)
//   alpha (1.0, Np/m)  beta (209.44, rad/m)  spacing (0.005, m)   physical model only
//   qam_order (64)  seed (1)  tol (1e-6)  max_iters (1000)
//   noiseless (false)  allow_p_lt_n (false)  record_runtime (true)

#pragma once

#include "dmace/channel.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dmace
{

enum class ReceiverKind
{
    proposed,
    bench_data_aided,
    bench_pilot_aided
};

const char *receiver_name(ReceiverKind r);
const char *training_name(TrainingKind t);
const char *inner_model_name(InnerModel m);

struct SweepAxis
{
    std::string key;
    std::vector<std::string> values;
};

struct ExperimentConfig
{
    std::size_t K = 8;
    std::size_t T = 10;
    std::size_t P = 32;
    std::size_t N = 16;
    std::size_t D = 2;
    std::size_t L = 8;
    std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    std::size_t trials = 10000;
    ReceiverKind receiver = ReceiverKind::proposed;
    TrainingKind training = TrainingKind::lorentzian;
    InnerModel inner_model = InnerModel::random_phase;
    double alpha = 1.0;
    double beta = 209.44;
    double spacing = 0.005;
    int qam_order = 64;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::size_t max_iters = 1000;
    bool noiseless = false;
    bool allow_p_lt_n = false;
    bool record_runtime = true;

    std::vector<SweepAxis> sweep;

    /// Throws Error(config) on an invalid configuration; returns warnings.
    std::vector<std::string> validate() const;

    /// SNR points actually simulated (a single +inf point when noiseless).
    std::vector<double> effective_snr_grid() const;
};

/// Sets one key; throws Error(config) for unknown keys or bad values.
void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value);

ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// Canonical key-value rendering (round-trips through parse_config).
std::string to_text(const ExperimentConfig &cfg);

} // namespace dmace

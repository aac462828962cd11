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


#include "dmace/config.hpp"

#include "dmace/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dmace
{

namespace
{

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const std::string &why)
{
    throw Error(ErrorCategory::config, "invalid value '" + value + "' for key '" + key + "': " + why);
}

double parse_double(const std::string &key, const std::string &value)
{
    std::size_t used = 0;
    double out = 0.0;
    try
    {
        out = std::stod(value, &used);
    }
    catch (const std::exception &)
    {
        bad_value(key, value, "expected a number");
    }
    if (used != value.size())
        bad_value(key, value, "expected a number");
    return out;
}

std::uint64_t parse_u64(const std::string &key, const std::string &value)
{
    std::uint64_t out = 0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        bad_value(key, value, "expected a nonnegative integer");
    return out;
}

std::size_t parse_count(const std::string &key, const std::string &value)
{
    return static_cast<std::size_t>(parse_u64(key, value));
}

bool parse_bool(const std::string &key, const std::string &value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    bad_value(key, value, "expected true or false");
}

std::vector<double> parse_grid(const std::string &key, const std::string &value)
{
    std::vector<double> grid;
    if (value.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(trim(item));
        if (parts.size() != 3)
            bad_value(key, value, "range form is start:step:stop");
        const double start = parse_double(key, parts[0]);
        const double step = parse_double(key, parts[1]);
        const double stop = parse_double(key, parts[2]);
        if (!(step > 0.0) || stop < start)
            bad_value(key, value, "range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
            grid.push_back(start + static_cast<double>(i) * step);
    }
    else
    {
        for (const auto &item : split_list(value))
            grid.push_back(parse_double(key, item));
    }
    if (grid.empty())
        bad_value(key, value, "empty SNR grid");
    return grid;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << v;
    return os.str();
}

} // namespace

const char *receiver_name(ReceiverKind r)
{
    switch (r)
    {
    case ReceiverKind::proposed: return "proposed";
    case ReceiverKind::bench_data_aided: return "bench-data-aided";
    case ReceiverKind::bench_pilot_aided: return "bench-pilot-aided";
    }
    return "unknown";
}

const char *training_name(TrainingKind t)
{
    return t == TrainingKind::lorentzian ? "lorentzian" : "semi-unitary-dft";
}

const char *inner_model_name(InnerModel m)
{
    return m == InnerModel::random_phase ? "random-phase" : "physical";
}

void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    if (key == "K")
        cfg.K = parse_count(key, value);
    else if (key == "T")
        cfg.T = parse_count(key, value);
    else if (key == "P")
        cfg.P = parse_count(key, value);
    else if (key == "N")
        cfg.N = parse_count(key, value);
    else if (key == "D")
        cfg.D = parse_count(key, value);
    else if (key == "L")
        cfg.L = parse_count(key, value);
    else if (key == "snr_grid_db")
        cfg.snr_grid_db = parse_grid(key, value);
    else if (key == "trials")
        cfg.trials = parse_count(key, value);
    else if (key == "receiver")
    {
        if (value == "proposed")
            cfg.receiver = ReceiverKind::proposed;
        else if (value == "bench-data-aided")
            cfg.receiver = ReceiverKind::bench_data_aided;
        else if (value == "bench-pilot-aided")
            cfg.receiver = ReceiverKind::bench_pilot_aided;
        else
            bad_value(key, value, "expected proposed, bench-data-aided or bench-pilot-aided");
    }
    else if (key == "training")
    {
        if (value == "lorentzian")
            cfg.training = TrainingKind::lorentzian;
        else if (value == "semi-unitary-dft")
            cfg.training = TrainingKind::semi_unitary_dft;
        else
            bad_value(key, value, "expected lorentzian or semi-unitary-dft");
    }
    else if (key == "inner_model")
    {
        if (value == "random-phase")
            cfg.inner_model = InnerModel::random_phase;
        else if (value == "physical")
            cfg.inner_model = InnerModel::physical;
        else
            bad_value(key, value, "expected random-phase or physical");
    }
    else if (key == "alpha")
        cfg.alpha = parse_double(key, value);
    else if (key == "beta")
        cfg.beta = parse_double(key, value);
    else if (key == "spacing")
        cfg.spacing = parse_double(key, value);
    else if (key == "qam_order")
        cfg.qam_order = static_cast<int>(parse_count(key, value));
    else if (key == "seed")
        cfg.seed = parse_u64(key, value);
    else if (key == "tol")
        cfg.tol = parse_double(key, value);
    else if (key == "max_iters")
        cfg.max_iters = parse_count(key, value);
    else if (key == "noiseless")
        cfg.noiseless = parse_bool(key, value);
    else if (key == "allow_p_lt_n")
        cfg.allow_p_lt_n = parse_bool(key, value);
    else if (key == "record_runtime")
        cfg.record_runtime = parse_bool(key, value);
    else
        throw Error(ErrorCategory::config, "unknown configuration key '" + key + "'");
}

ExperimentConfig parse_config(const std::string &text)
{
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::config, "line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw Error(ErrorCategory::config, "line " + std::to_string(lineno) + ": empty key or value");

        if (key.rfind("sweep.", 0) == 0)
        {
            SweepAxis axis{key.substr(6), split_list(value)};
            if (axis.values.empty())
                throw Error(ErrorCategory::config, "line " + std::to_string(lineno) + ": empty sweep range");
            // Validate every value eagerly against a scratch config.
            ExperimentConfig scratch;
            for (const auto &v : axis.values)
                apply_setting(scratch, axis.key, v);
            cfg.sweep.push_back(std::move(axis));
            continue;
        }
        try
        {
            apply_setting(cfg, key, value);
        }
        catch (const Error &e)
        {
            throw Error(ErrorCategory::config, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::vector<std::string> ExperimentConfig::validate() const
{
    std::vector<std::string> warnings;
    auto fail = [](const std::string &msg) { throw Error(ErrorCategory::config, msg); };

    if (K == 0 || T == 0 || P == 0 || N == 0 || D == 0 || L == 0)
        fail("K, T, P, N, D and L must all be positive");
    if (N != D * L)
        fail("N must equal D*L (N=" + std::to_string(N) + ", D*L=" + std::to_string(D * L) + ")");
    if (trials < 1)
        fail("trials must be at least 1");
    if (!valid_qam_order(qam_order))
        fail("qam_order must be one of 4, 16, 64, 256");
    if (!(tol > 0.0))
        fail("tol must be positive");
    if (max_iters < 1)
        fail("max_iters must be at least 1");
    if (!noiseless && snr_grid_db.empty())
        fail("snr_grid_db is empty");
    for (double snr : snr_grid_db)
        if (std::isnan(snr))
            fail("snr_grid_db contains NaN");
    if (inner_model == InnerModel::physical)
    {
        if (!(spacing > 0.0))
            fail("spacing must be positive for the physical inner-channel model");
        if (alpha < 0.0)
            fail("alpha must be nonnegative");
    }
    if (receiver != ReceiverKind::proposed && training != TrainingKind::semi_unitary_dft)
        fail(std::string("receiver ") + receiver_name(receiver) + " requires training = semi-unitary-dft");
    if (P < N)
    {
        if (training == TrainingKind::semi_unitary_dft)
            fail("semi-unitary training requires P >= N");
        if (!allow_p_lt_n)
            fail("P < N: the training matrix cannot have full column rank (set allow_p_lt_n = true to override)");
        warnings.push_back("P < N: training matrix is column-rank deficient; estimates may be non-identifiable");
    }
    return warnings;
}

std::vector<double> ExperimentConfig::effective_snr_grid() const
{
    if (noiseless)
        return {std::numeric_limits<double>::infinity()};
    return snr_grid_db;
}

std::string to_text(const ExperimentConfig &cfg)
{
    std::ostringstream os;
    os << "K = " << cfg.K << "\nT = " << cfg.T << "\nP = " << cfg.P << "\nN = " << cfg.N << "\nD = " << cfg.D
       << "\nL = " << cfg.L << "\nsnr_grid_db = ";
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i)
        os << (i ? ", " : "") << format_double(cfg.snr_grid_db[i]);
    os << "\ntrials = " << cfg.trials << "\nreceiver = " << receiver_name(cfg.receiver)
       << "\ntraining = " << training_name(cfg.training) << "\ninner_model = " << inner_model_name(cfg.inner_model)
       << "\nalpha = " << format_double(cfg.alpha) << "\nbeta = " << format_double(cfg.beta)
       << "\nspacing = " << format_double(cfg.spacing) << "\nqam_order = " << cfg.qam_order
       << "\nseed = " << cfg.seed << "\ntol = " << format_double(cfg.tol) << "\nmax_iters = " << cfg.max_iters
       << "\nnoiseless = " << (cfg.noiseless ? "true" : "false")
       << "\nallow_p_lt_n = " << (cfg.allow_p_lt_n ? "true" : "false")
       << "\nrecord_runtime = " << (cfg.record_runtime ? "true" : "false") << "\n";
    for (const auto &axis : cfg.sweep)
    {
        os << "sweep." << axis.key << " = ";
        for (std::size_t i = 0; i < axis.values.size(); ++i)
            os << (i ? ", " : "") << axis.values[i];
        os << "\n";
    }
    return os.str();
}

} // namespace dmace

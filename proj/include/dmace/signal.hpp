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


// Received-signal assembly: noiseless PARAFAC tensor, calibrated AWGN and the
// dimension-only identifiability checks.
//
// Conjugation convention: H is stored as the K x N matrix that multiplies
// D_p(F) X^T directly (Y_p = H D_p(F) X^T). The per-subcarrier physical
// channel vector h_k is the conjugate of row k.

#pragma once

#include "dmace/channel.hpp"
#include "dmace/tensor.hpp"

#include <optional>

namespace dmace
{

struct RankOneFactor
{
    ComplexMatrix X; // T x N, X = s m^T
};

struct ReceivedTensor
{
    Tensor3 Y;
    std::optional<double> snr_db; // empty when noiseless
    double noise_variance = 0.0;
};

struct IdentifiabilityReport
{
    bool kruskal_ok = false;
    bool relaxed_ok = false;
    bool p_ge_n = false;

    // Both sides of each inequality, for reporting.
    long long kruskal_lhs = 0;
    long long kruskal_rhs = 0;
    long long relaxed_lhs = 0;
    long long relaxed_rhs = 0;
};

RankOneFactor build_rank_one(const ComplexVector &s, const ComplexVector &m);

ReceivedTensor build_noiseless(const ComplexMatrix &H, const ComplexMatrix &X, const ComplexMatrix &F);

/// Adds i.i.d. CN(0, sigma^2) noise with
/// sigma^2 = ||Y||_F^2 / (K T P 10^(snr_db / 10)). An infinite snr_db leaves the
/// tensor unchanged.
ReceivedTensor add_noise(const ReceivedTensor &clean, double snr_db, Rng &rng);

/// Report-only checks; the receiver may run regardless of the outcome.
IdentifiabilityReport identifiability_preflight(std::size_t K, std::size_t T, std::size_t P, std::size_t N);

} // namespace dmace

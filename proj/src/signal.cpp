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


#include "dmace/signal.hpp"

#include "dmace/error.hpp"

#include <algorithm>
#include <cmath>

namespace dmace
{

RankOneFactor build_rank_one(const ComplexVector &s, const ComplexVector &m)
{
    return RankOneFactor{s * m.transpose()};
}

ReceivedTensor build_noiseless(const ComplexMatrix &H, const ComplexMatrix &X, const ComplexMatrix &F)
{
    return ReceivedTensor{parafac_build(H, X, F), std::nullopt, 0.0};
}

ReceivedTensor add_noise(const ReceivedTensor &clean, double snr_db, Rng &rng)
{
    if (std::isinf(snr_db) && snr_db > 0.0)
        return clean;
    if (std::isnan(snr_db))
        throw Error(ErrorCategory::invalid_input, "add_noise: SNR is NaN");

    ReceivedTensor out = clean;
    const auto count = static_cast<double>(clean.Y.size());
    const double variance = clean.Y.squared_norm() / (count * std::pow(10.0, snr_db / 10.0));
    const double sd = std::sqrt(variance);
    for (auto &z : out.Y.data())
        z += sd * complex_gaussian(rng);
    out.snr_db = snr_db;
    out.noise_variance = variance;
    return out;
}

IdentifiabilityReport identifiability_preflight(std::size_t K, std::size_t T, std::size_t P, std::size_t N)
{
    if (K == 0 || T == 0 || P == 0 || N == 0)
        throw Error(ErrorCategory::invalid_input, "identifiability_preflight: dimensions must be positive");
    const auto k = static_cast<long long>(K), t = static_cast<long long>(T), p = static_cast<long long>(P),
               n = static_cast<long long>(N);

    IdentifiabilityReport r;
    // Generic k-ranks: kappa_H = min(K, N), kappa_F = min(P, N), kappa_X = 1
    // (rank-one symbol/inner-channel factor).
    r.kruskal_lhs = std::min(k, n) + 1 + std::min(p, n);
    r.kruskal_rhs = 2 * n + 2;
    // A single component is always essentially unique; the inequality is only
    // meaningful for two or more components.
    r.kruskal_ok = n == 1 || r.kruskal_lhs >= r.kruskal_rhs;

    // J(J-1)I(I-1)/4 >= N(N-1)/2 with (I, J) = (K, T).
    r.relaxed_lhs = t * (t - 1) * k * (k - 1) / 4;
    r.relaxed_rhs = n * (n - 1) / 2;
    r.relaxed_ok = r.relaxed_lhs >= r.relaxed_rhs;

    r.p_ge_n = P >= N;
    return r;
}

} // namespace dmace

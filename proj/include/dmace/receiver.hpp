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


// Two-stage semi-blind receiver.
//
// Stage one alternates least-squares updates of the wireless channel H and
// the rank-one factor X = s m^T with the training matrix F known:
//     H <- Y(1) [(F (.) X)^T]^+,    X <- Y(2) [(F (.) H)^T]^+
// Stage two splits X into (s, m) through its dominant singular triplet.
//
// With F known the only factorization ambiguities left are a diagonal
// rescaling (H D, X D^-1) and the scalar split inside X = s m^T. The scalar
// is anchored by one known reference symbol; the diagonal is only removed
// when a reference inner channel is supplied (otherwise metrics fit it).

#pragma once

#include "dmace/channel.hpp"
#include "dmace/signal.hpp"
#include "dmace/tensor.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dmace
{

enum class InitKind
{
    random,
    provided
};

struct BalsConfig
{
    std::size_t max_iters = 1000;
    double tol = 1e-6;            // relative change of the normalized residual
    double rcond = kDefaultRcond; // pseudo-inverse cutoff
    double residual_floor = 1e-13; // stop once the normalized residual is this small
    InitKind init = InitKind::random;
    ComplexMatrix initial_X; // T x N, used when init == provided

    void validate() const;
};

struct BalsResult
{
    ComplexMatrix H;
    ComplexMatrix X;
    std::vector<double> residual_trace; // normalized residual after each iteration
    std::size_t iterations = 0;
    bool converged = false;
};

/// One factor update: (unfolding, F, other factor) -> new factor.
using FactorUpdate =
    std::function<ComplexMatrix(const ComplexMatrix &unfolding, const ComplexMatrix &F, const ComplexMatrix &other)>;

/// Generic alternation shared by the pseudo-inverse receiver and the
/// closed-form semi-unitary benchmark. The normalized residual
/// ||Y - Y_hat||_F / ||Y||_F is evaluated after every X update; convergence is
/// declared when its relative change drops to cfg.tol (or it falls below
/// cfg.residual_floor).
BalsResult alternating_solve(const ReceivedTensor &Y, const ComplexMatrix &F, const BalsConfig &cfg, Rng &rng,
                             const FactorUpdate &update_H, const FactorUpdate &update_X);

/// Bilinear ALS with pseudo-inverse updates.
BalsResult bals(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg, Rng &rng);

struct RankOneSplit
{
    ComplexVector s; // sqrt(sigma) u
    ComplexVector m; // sqrt(sigma) conj(v)
    double sigma = 0.0;
    bool degenerate = false; // sigma_1 - sigma_2 <= 1e-9 sigma_1
};

RankOneSplit rank1_factorize(const ComplexMatrix &X_hat);

struct AmbiguityAnchors
{
    cdouble s1_ref{1.0, 0.0};
    std::optional<ComplexVector> m_ref;
};

struct AnchoredEstimate
{
    ComplexMatrix H;
    ComplexVector s;
    ComplexVector m;
};

/// Scales (s, m) so that s_1 matches the reference symbol. When a reference
/// inner channel is given the per-element diagonal ambiguity between H and m
/// is removed as well.
AnchoredEstimate remove_ambiguity(const ComplexMatrix &H_hat, const ComplexVector &s_hat, const ComplexVector &m_hat,
                                  const AmbiguityAnchors &anchors);

/// Order-level cost of one BALS iteration, P N^2 (K + 1).
std::uint64_t flop_estimate(std::size_t K, std::size_t T, std::size_t P, std::size_t N);

struct EstimateReport
{
    ComplexMatrix H_hat;
    ComplexVector m_hat;
    ComplexVector s_hat;
    std::size_t iterations = 0;
    std::vector<double> residual_trace;
    double runtime_s = 0.0;
    bool converged = false;
    bool rank1_degenerate = false;
};

/// Full pipeline: BALS, rank-one split and scalar anchoring.
EstimateReport estimate_semi_blind(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg,
                                   const AmbiguityAnchors &anchors, Rng &rng);

} // namespace dmace

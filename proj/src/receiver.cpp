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


#include "dmace/receiver.hpp"

#include "dmace/error.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace dmace
{

void BalsConfig::validate() const
{
    if (max_iters < 1)
        throw Error(ErrorCategory::invalid_input, "BalsConfig: max_iters must be at least 1");
    if (!(tol > 0.0))
        throw Error(ErrorCategory::invalid_input, "BalsConfig: tol must be positive");
    if (!(rcond >= 0.0))
        throw Error(ErrorCategory::invalid_input, "BalsConfig: rcond must be nonnegative");
    if (!(residual_floor >= 0.0))
        throw Error(ErrorCategory::invalid_input, "BalsConfig: residual_floor must be nonnegative");
}

BalsResult alternating_solve(const ReceivedTensor &Y, const ComplexMatrix &F, const BalsConfig &cfg, Rng &rng,
                             const FactorUpdate &update_H, const FactorUpdate &update_X)
{
    cfg.validate();
    const auto [K, T, P] = Y.Y.dims();
    const Eigen::Index N = F.cols();
    if (static_cast<std::size_t>(F.rows()) != P)
        throw Error(ErrorCategory::dimension, "alternating_solve: training matrix has " + std::to_string(F.rows()) +
                                                  " rows, tensor has P=" + std::to_string(P));
    const double y_norm = Y.Y.frobenius_norm();
    if (!(y_norm > 0.0) || !std::isfinite(y_norm))
        throw Error(ErrorCategory::invalid_input, "alternating_solve: received tensor has zero or non-finite norm");

    const ComplexMatrix Y1 = unfold_mode1(Y.Y);
    const ComplexMatrix Y2 = unfold_mode2(Y.Y);

    BalsResult out;
    if (cfg.init == InitKind::provided)
    {
        if (static_cast<std::size_t>(cfg.initial_X.rows()) != T || cfg.initial_X.cols() != N)
            throw Error(ErrorCategory::dimension, "alternating_solve: provided initial X has the wrong shape");
        out.X = cfg.initial_X;
    }
    else
    {
        out.X.resize(static_cast<Eigen::Index>(T), N);
        for (Eigen::Index n = 0; n < N; ++n)
            for (Eigen::Index t = 0; t < out.X.rows(); ++t)
                out.X(t, n) = complex_gaussian(rng);
    }

    out.residual_trace.reserve(cfg.max_iters);
    for (std::size_t i = 1; i <= cfg.max_iters; ++i)
    {
        out.H = update_H(Y1, F, out.X);
        out.X = update_X(Y2, F, out.H);

        const double eps = (Y1 - out.H * khatri_rao(F, out.X).transpose()).norm() / y_norm;
        if (!std::isfinite(eps))
            throw Error(ErrorCategory::numerical, "alternating_solve: non-finite residual at iteration " +
                                                      std::to_string(i));
        out.residual_trace.push_back(eps);
        out.iterations = i;

        if (eps <= cfg.residual_floor)
        {
            out.converged = true;
            break;
        }
        if (i >= 2)
        {
            const double prev = out.residual_trace[i - 2];
            if (std::abs(eps - prev) / prev <= cfg.tol)
            {
                out.converged = true;
                break;
            }
        }
    }
    return out;
}

BalsResult bals(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg, Rng &rng)
{
    const double rcond = cfg.rcond;
    auto ls_update = [rcond](const ComplexMatrix &unfolding, const ComplexMatrix &train, const ComplexMatrix &other) {
        // unfolding * [(F (.) other)^T]^+  ==  unfolding * ((F (.) other)^+)^T
        return ComplexMatrix(unfolding * pinv(khatri_rao(train, other), rcond).transpose());
    };
    return alternating_solve(Y, F.F, cfg, rng, ls_update, ls_update);
}

RankOneSplit rank1_factorize(const ComplexMatrix &X_hat)
{
    const SvdTriplet trip = dominant_triplet(X_hat);
    const double root = std::sqrt(trip.sigma);
    RankOneSplit out;
    out.sigma = trip.sigma;
    out.s = root * trip.u;
    out.m = root * trip.v.conjugate();
    out.degenerate = trip.sigma - trip.second_sigma <= 1e-9 * trip.sigma;
    return out;
}

AnchoredEstimate remove_ambiguity(const ComplexMatrix &H_hat, const ComplexVector &s_hat, const ComplexVector &m_hat,
                                  const AmbiguityAnchors &anchors)
{
    if (s_hat.size() == 0)
        throw Error(ErrorCategory::invalid_input, "remove_ambiguity: empty symbol estimate");
    if (anchors.s1_ref == cdouble{0.0, 0.0})
        throw Error(ErrorCategory::ambiguity, "remove_ambiguity: reference symbol must be nonzero");
    if (std::abs(s_hat(0)) < 1e-12 * s_hat.norm() || s_hat(0) == cdouble{0.0, 0.0})
        throw Error(ErrorCategory::ambiguity, "remove_ambiguity: estimated reference symbol is numerically zero");

    const cdouble lambda = anchors.s1_ref / s_hat(0);
    AnchoredEstimate out{H_hat, lambda * s_hat, m_hat / lambda};

    if (anchors.m_ref)
    {
        const ComplexVector &ref = *anchors.m_ref;
        if (ref.size() != out.m.size() || H_hat.cols() != out.m.size())
            throw Error(ErrorCategory::dimension, "remove_ambiguity: reference inner channel has the wrong length");
        for (Eigen::Index n = 0; n < ref.size(); ++n)
        {
            if (std::abs(ref(n)) == 0.0)
                throw Error(ErrorCategory::ambiguity, "remove_ambiguity: reference inner channel has a zero entry");
            // m_hat = delta^-1 m  =>  H D with D = delta^-1 is undone by scaling the column by delta.
            const cdouble delta = out.m(n) / ref(n);
            out.H.col(n) *= delta;
            out.m(n) = ref(n);
        }
    }
    return out;
}

std::uint64_t flop_estimate(std::size_t K, std::size_t T, std::size_t P, std::size_t N)
{
    if (K == 0 || T == 0 || P == 0 || N == 0)
        throw Error(ErrorCategory::invalid_input, "flop_estimate: dimensions must be positive");
    return static_cast<std::uint64_t>(P) * N * N * (K + 1);
}

EstimateReport estimate_semi_blind(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg,
                                   const AmbiguityAnchors &anchors, Rng &rng)
{
    const auto start = std::chrono::steady_clock::now();
    BalsResult stage1 = bals(Y, F, cfg, rng);
    const RankOneSplit split = rank1_factorize(stage1.X);
    AnchoredEstimate anchored = remove_ambiguity(stage1.H, split.s, split.m, anchors);
    const auto stop = std::chrono::steady_clock::now();

    EstimateReport rep;
    rep.H_hat = std::move(anchored.H);
    rep.s_hat = std::move(anchored.s);
    rep.m_hat = std::move(anchored.m);
    rep.iterations = stage1.iterations;
    rep.residual_trace = std::move(stage1.residual_trace);
    rep.converged = stage1.converged;
    rep.rank1_degenerate = split.degenerate;
    rep.runtime_s = std::chrono::duration<double>(stop - start).count();
    return rep;
}

} // namespace dmace

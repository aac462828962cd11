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


#include "dmace/selftest.hpp"

#include "dmace/benchmarks.hpp"
#include "dmace/channel.hpp"
#include "dmace/metrics.hpp"
#include "dmace/receiver.hpp"
#include "dmace/signal.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace dmace
{

namespace
{

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    ComplexMatrix A(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            A(r, c) = complex_gaussian(rng);
    return A;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

SelftestResult check(const std::string &name, const std::function<std::pair<bool, std::string>()> &body)
{
    try
    {
        auto [ok, detail] = body();
        return {name, ok, detail};
    }
    catch (const std::exception &e)
    {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

} // namespace

std::vector<SelftestResult> run_selftest(unsigned long long seed)
{
    Rng rng(seed);
    std::vector<SelftestResult> out;

    out.push_back(check("unfolding factorizations", [&] {
        const ComplexMatrix H = random_matrix(5, 3, rng), X = random_matrix(4, 3, rng), F = random_matrix(6, 3, rng);
        const Tensor3 Y = parafac_build(H, X, F);
        const ComplexMatrix Y1 = H * khatri_rao(F, X).transpose();
        const ComplexMatrix Y2 = X * khatri_rao(F, H).transpose();
        const double e = std::max((unfold_mode1(Y) - Y1).norm() / Y1.norm(), (unfold_mode2(Y) - Y2).norm() / Y2.norm());
        return std::pair{e <= 1e-12, "rel err " + sci(e)};
    }));

    out.push_back(check("khatri-rao hadamard identity", [&] {
        const ComplexMatrix A = random_matrix(4, 3, rng), B = random_matrix(5, 3, rng);
        const ComplexMatrix KR = khatri_rao(A, B);
        const ComplexMatrix lhs = KR.transpose() * KR.conjugate();
        const ComplexMatrix rhs = (A.transpose() * A.conjugate()).cwiseProduct(B.transpose() * B.conjugate());
        const double e = (lhs - rhs).norm() / rhs.norm();
        return std::pair{e <= 1e-12, "rel err " + sci(e)};
    }));

    out.push_back(check("pinv reflexive", [&] {
        const ComplexMatrix A = random_matrix(7, 4, rng);
        const double e = (A * pinv(A) * A - A).norm() / A.norm();
        return std::pair{e <= 1e-10, "rel err " + sci(e)};
    }));

    out.push_back(check("lorentzian circle", [&] {
        const TrainingMatrix F = gen_lorentzian_training(32, 16, rng);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < F.F.size(); ++i)
            worst = std::max(worst, std::abs(std::abs(F.F.data()[i] - cdouble{0.0, 0.5}) - 0.5));
        return std::pair{worst <= 1e-12, "max deviation " + sci(worst)};
    }));

    out.push_back(check("dft semi-unitarity", [&] {
        const TrainingMatrix F = gen_dft_training(32, 16);
        const ComplexMatrix I = 32.0 * ComplexMatrix::Identity(16, 16);
        const double e = (F.F.transpose() * F.F.conjugate() - I).norm() / I.norm();
        return std::pair{e <= 1e-10, "rel err " + sci(e)};
    }));

    out.push_back(check("qam unit energy", [&] {
        double worst = 0.0;
        for (int M : {4, 16, 64, 256})
        {
            const QamConstellation q(M);
            double e = 0.0;
            for (const auto &p : q.points())
                e += std::norm(p);
            worst = std::max(worst, std::abs(e / M - 1.0));
        }
        return std::pair{worst <= 1e-12, "max deviation " + sci(worst)};
    }));

    out.push_back(check("pilot energy", [&] {
        double worst = 0.0;
        for (std::size_t T = 1; T <= 64; ++T)
            worst = std::max(worst, std::abs(gen_pilots(T).s.squaredNorm() - static_cast<double>(T)));
        return std::pair{worst <= 1e-12, "max deviation " + sci(worst)};
    }));

    out.push_back(check("noiseless recovery (8,16,32,10)", [&] {
        const WirelessChannel H = gen_wireless(8, 16, rng);
        const InnerChannel m = gen_inner_random_phase(16, rng);
        const SymbolBlock s = gen_qam(10, 64, rng);
        const TrainingMatrix F = gen_lorentzian_training(32, 16, rng);
        const ReceivedTensor Y = build_noiseless(H.H, build_rank_one(s.s, m.m).X, F.F);
        const EstimateReport rep = estimate_semi_blind(Y, F, BalsConfig{}, AmbiguityAnchors{s.s(0), std::nullopt}, rng);
        const double e = nmse(rep.H_hat, H.H, FitClass::diagonal);
        const double errs = ser(rep.s_hat, s);
        return std::pair{to_db(e) <= -80.0 && errs == 0.0, "NMSE(H) " + sci(e) + ", iterations " +
                                                               std::to_string(rep.iterations)};
    }));

    out.push_back(check("ALS monotone residual", [&] {
        const WirelessChannel H = gen_wireless(8, 16, rng);
        const InnerChannel m = gen_inner_random_phase(16, rng);
        const SymbolBlock s = gen_qam(10, 64, rng);
        const TrainingMatrix F = gen_lorentzian_training(32, 16, rng);
        const ReceivedTensor Y = add_noise(build_noiseless(H.H, build_rank_one(s.s, m.m).X, F.F), 10.0, rng);
        const BalsResult r = bals(Y, F, BalsConfig{}, rng);
        double worst = 0.0;
        for (std::size_t i = 1; i < r.residual_trace.size(); ++i)
            worst = std::max(worst, r.residual_trace[i] - r.residual_trace[i - 1]);
        return std::pair{worst <= 1e-9, "max increase " + sci(worst)};
    }));

    out.push_back(check("closed-form equals pseudo-inverse", [&] {
        const WirelessChannel H = gen_wireless(8, 16, rng);
        const InnerChannel m = gen_inner_random_phase(16, rng);
        const SymbolBlock s = gen_qam(10, 64, rng);
        const TrainingMatrix F = gen_dft_training(32, 16);
        const ComplexMatrix X = build_rank_one(s.s, m.m).X;
        const ReceivedTensor Y = add_noise(build_noiseless(H.H, X, F.F), 5.0, rng);
        const ComplexMatrix Y1 = unfold_mode1(Y.Y);
        const ComplexMatrix via_pinv = Y1 * pinv(khatri_rao(F.F, X)).transpose();
        const ComplexMatrix closed_form = semi_unitary_H(Y1, F.F, X, inverse_squared_moduli(m.m), s.s.squaredNorm());
        const double e = (closed_form - via_pinv).norm() / via_pinv.norm();
        return std::pair{e <= 1e-10, "rel err " + sci(e)};
    }));

    out.push_back(check("identifiability at (8,16,32,10)", [&] {
        const IdentifiabilityReport r = identifiability_preflight(8, 10, 32, 16);
        return std::pair{!r.kruskal_ok && r.relaxed_ok && r.p_ge_n,
                         "kruskal " + std::to_string(r.kruskal_lhs) + ">=" + std::to_string(r.kruskal_rhs) +
                             ", relaxed " + std::to_string(r.relaxed_lhs) + ">=" + std::to_string(r.relaxed_rhs)};
    }));

    return out;
}

} // namespace dmace

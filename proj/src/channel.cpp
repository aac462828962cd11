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


#include "dmace/channel.hpp"

#include "dmace/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dmace
{

namespace
{
constexpr int kMaxTrainingAttempts = 10;
}

cdouble complex_gaussian(Rng &rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

bool valid_qam_order(int order)
{
    return order == 4 || order == 16 || order == 64 || order == 256;
}

QamConstellation::QamConstellation(int order) : order_(order)
{
    if (!valid_qam_order(order))
        throw Error(ErrorCategory::invalid_input, "QAM order must be one of 4, 16, 64, 256 (got " +
                                                      std::to_string(order) + ")");
    side_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    bits_per_axis_ = 0;
    while ((1 << bits_per_axis_) < side_)
        ++bits_per_axis_;

    // Average energy of the unnormalized grid {+-1, +-3, ...}^2 is 2(M-1)/3.
    scale_ = std::sqrt(3.0 / (2.0 * (order - 1)));

    gray_of_level_.resize(static_cast<std::size_t>(side_));
    std::vector<int> level_of_gray(static_cast<std::size_t>(side_));
    for (int l = 0; l < side_; ++l)
    {
        gray_of_level_[static_cast<std::size_t>(l)] = l ^ (l >> 1);
        level_of_gray[static_cast<std::size_t>(l ^ (l >> 1))] = l;
    }

    points_.resize(static_cast<std::size_t>(order));
    for (int index = 0; index < order; ++index)
    {
        const int li = level_of_gray[static_cast<std::size_t>(index >> bits_per_axis_)];
        const int lq = level_of_gray[static_cast<std::size_t>(index & (side_ - 1))];
        const double re = 2.0 * li - (side_ - 1);
        const double im = 2.0 * lq - (side_ - 1);
        points_[static_cast<std::size_t>(index)] = scale_ * cdouble{re, im};
    }
}

int QamConstellation::slice_axis(double coordinate) const
{
    // Continuous level position; integer values sit on constellation levels.
    const double u = (coordinate / scale_ + (side_ - 1)) / 2.0;
    if (u <= 0.0)
        return 0;
    if (u >= side_ - 1)
        return side_ - 1;
    const double lower = std::floor(u);
    const double frac = u - lower;
    const int lo = static_cast<int>(lower);
    if (frac < 0.5)
        return lo;
    if (frac > 0.5)
        return lo + 1;
    // Equidistant: prefer the level whose Gray label (hence index) is smaller.
    return gray_of_level_[static_cast<std::size_t>(lo)] < gray_of_level_[static_cast<std::size_t>(lo + 1)] ? lo
                                                                                                           : lo + 1;
}

int QamConstellation::demap(cdouble z) const
{
    const int li = slice_axis(z.real());
    const int lq = slice_axis(z.imag());
    return (gray_of_level_[static_cast<std::size_t>(li)] << bits_per_axis_) |
           gray_of_level_[static_cast<std::size_t>(lq)];
}

WirelessChannel gen_wireless(std::size_t K, std::size_t N, Rng &rng)
{
    if (K == 0 || N == 0)
        throw Error(ErrorCategory::invalid_input, "gen_wireless: K and N must be positive");
    WirelessChannel ch{ComplexMatrix(K, N)};
    // Column-major fill keeps draws ordered by element, then subcarrier.
    for (Eigen::Index n = 0; n < ch.H.cols(); ++n)
        for (Eigen::Index k = 0; k < ch.H.rows(); ++k)
            ch.H(k, n) = complex_gaussian(rng);
    return ch;
}

InnerChannel gen_inner_physical(std::size_t D, std::size_t L, double alpha, double beta, double spacing)
{
    if (D == 0 || L == 0)
        throw Error(ErrorCategory::invalid_input, "gen_inner_physical: D and L must be positive");
    if (!(spacing > 0.0))
        throw Error(ErrorCategory::invalid_input, "gen_inner_physical: element spacing must be positive");
    if (alpha < 0.0)
        throw Error(ErrorCategory::invalid_input, "gen_inner_physical: attenuation must be nonnegative");

    InnerChannel ch;
    ch.mode = InnerModel::physical;
    ch.alpha = alpha;
    ch.beta = beta;
    ch.m.resize(static_cast<Eigen::Index>(D * L));
    ch.positions.reserve(D * L);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t l = 1; l <= L; ++l)
        {
            const double x = static_cast<double>(l) * spacing;
            ch.positions.push_back(x);
            ch.m(static_cast<Eigen::Index>(d * L + l - 1)) = std::exp(-cdouble{alpha, beta} * x);
        }
    return ch;
}

InnerChannel gen_inner_random_phase(std::size_t N, Rng &rng)
{
    if (N == 0)
        throw Error(ErrorCategory::invalid_input, "gen_inner_random_phase: N must be positive");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    InnerChannel ch;
    ch.mode = InnerModel::random_phase;
    ch.m.resize(static_cast<Eigen::Index>(N));
    for (Eigen::Index n = 0; n < ch.m.size(); ++n)
        ch.m(n) = std::polar(1.0, phase(rng));
    return ch;
}

cdouble lorentzian_weight(double phi)
{
    return (cdouble{0.0, 1.0} + std::polar(1.0, phi)) / 2.0;
}

Eigen::Index numerical_rank(const ComplexMatrix &A, double rcond)
{
    if (A.size() == 0)
        return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const RealVector &sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rcond * sv(0))
            ++rank;
    return rank;
}

TrainingMatrix gen_lorentzian_training(std::size_t P, std::size_t N, Rng &rng)
{
    if (P == 0 || N == 0)
        throw Error(ErrorCategory::invalid_input, "gen_lorentzian_training: P and N must be positive");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const auto full_rank = static_cast<Eigen::Index>(std::min(P, N));

    TrainingMatrix tm;
    tm.kind = TrainingKind::lorentzian;
    tm.F.resize(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(N));
    for (int attempt = 0; attempt < kMaxTrainingAttempts; ++attempt)
    {
        for (Eigen::Index n = 0; n < tm.F.cols(); ++n)
            for (Eigen::Index p = 0; p < tm.F.rows(); ++p)
                tm.F(p, n) = lorentzian_weight(phase(rng));
        if (numerical_rank(tm.F) == full_rank)
            return tm;
    }
    throw Error(ErrorCategory::generation, "gen_lorentzian_training: training matrix rank-deficient after " +
                                               std::to_string(kMaxTrainingAttempts) + " attempts");
}

TrainingMatrix gen_dft_training(std::size_t P, std::size_t N)
{
    if (N == 0 || P < N)
        throw Error(ErrorCategory::invalid_input, "gen_dft_training: requires P >= N >= 1 (P=" + std::to_string(P) +
                                                      ", N=" + std::to_string(N) + ")");
    TrainingMatrix tm;
    tm.kind = TrainingKind::semi_unitary_dft;
    tm.F.resize(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(N));
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t n = 0; n < N; ++n)
        {
            // Reduce the exponent modulo P so large products stay exact.
            const auto r = static_cast<double>((p * n) % P);
            tm.F(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n)) =
                std::polar(1.0, -2.0 * std::numbers::pi * r / static_cast<double>(P));
        }
    return tm;
}

SymbolBlock gen_qam(std::size_t T, int order, Rng &rng)
{
    const QamConstellation qam(order);
    std::uniform_int_distribution<int> pick(0, order - 1);
    SymbolBlock block;
    block.kind = SymbolKind::qam_data;
    block.order = order;
    block.s.resize(static_cast<Eigen::Index>(T));
    block.indices.resize(T);
    for (std::size_t t = 0; t < T; ++t)
    {
        block.indices[t] = pick(rng);
        block.s(static_cast<Eigen::Index>(t)) = qam.point(block.indices[t]);
    }
    return block;
}

SymbolBlock gen_pilots(std::size_t T)
{
    if (T == 0)
        throw Error(ErrorCategory::invalid_input, "gen_pilots: T must be positive");
    SymbolBlock block;
    block.kind = SymbolKind::vandermonde_pilot;
    block.s.resize(static_cast<Eigen::Index>(T));
    const double omega = 1.0 / static_cast<double>(T);
    for (std::size_t t = 0; t < T; ++t)
        block.s(static_cast<Eigen::Index>(t)) = std::polar(1.0, static_cast<double>(t) * omega);
    return block;
}

std::vector<int> qam_demap(const ComplexVector &s_hat, int order)
{
    const QamConstellation qam(order);
    std::vector<int> out(static_cast<std::size_t>(s_hat.size()));
    for (Eigen::Index t = 0; t < s_hat.size(); ++t)
        out[static_cast<std::size_t>(t)] = qam.demap(s_hat(t));
    return out;
}

} // namespace dmace

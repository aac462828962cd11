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


// Generators for every physical-layer quantity of the DMA downlink model:
// wireless channel, waveguide inner channel, training (beamforming state)
// matrices, QAM data and Vandermonde pilots.

#pragma once

#include "dmace/tensor.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace dmace
{

using Rng = std::mt19937_64;

/// Circularly-symmetric CN(0, 1) draw.
cdouble complex_gaussian(Rng &rng);

struct WirelessChannel
{
    ComplexMatrix H; // K subcarriers x N elements
};

enum class InnerModel
{
    physical,
    random_phase
};

struct InnerChannel
{
    ComplexVector m;
    InnerModel mode = InnerModel::random_phase;
    double alpha = 0.0;            // nepers / meter
    double beta = 0.0;             // radians / meter
    std::vector<double> positions; // meters, waveguide-major (empty for random-phase)
};

enum class TrainingKind
{
    lorentzian,
    semi_unitary_dft
};

struct TrainingMatrix
{
    ComplexMatrix F; // P states x N elements
    TrainingKind kind = TrainingKind::lorentzian;
};

enum class SymbolKind
{
    qam_data,
    vandermonde_pilot
};

struct SymbolBlock
{
    ComplexVector s;
    SymbolKind kind = SymbolKind::qam_data;
    int order = 0;            // constellation order M (QAM only)
    std::vector<int> indices; // constellation indices (QAM only)
};

/// Square M-QAM alphabet with unit average energy.
///
/// Index layout: for M = 4^b the index is (gi << b) | gq where gi and gq are
/// the Gray labels of the in-phase and quadrature amplitude levels. Level l
/// (0 = most negative) carries Gray label l ^ (l >> 1).
class QamConstellation
{
  public:
    explicit QamConstellation(int order);

    int order() const noexcept { return order_; }
    int side() const noexcept { return side_; }
    double scale() const noexcept { return scale_; }
    const std::vector<cdouble> &points() const noexcept { return points_; }
    cdouble point(int index) const { return points_.at(static_cast<std::size_t>(index)); }

    /// Nearest-neighbour decision by per-axis slicing. Exact ties resolve
    /// toward the smaller constellation index.
    int demap(cdouble z) const;

  private:
    int slice_axis(double coordinate) const;

    int order_;
    int side_;
    int bits_per_axis_;
    double scale_;
    std::vector<cdouble> points_;
    std::vector<int> gray_of_level_;
};

bool valid_qam_order(int order);

WirelessChannel gen_wireless(std::size_t K, std::size_t N, Rng &rng);

/// m_{d,l} = exp(-(alpha + j beta) x_{d,l}) with x_{d,l} = l * spacing,
/// l = 1..L, ordered waveguide-major.
InnerChannel gen_inner_physical(std::size_t D, std::size_t L, double alpha, double beta, double spacing);

/// m_n = exp(j theta_n), theta_n ~ U[0, 2 pi).
InnerChannel gen_inner_random_phase(std::size_t N, Rng &rng);

/// Lorentzian-constrained states f = (j + exp(j phi)) / 2 with i.i.d. uniform
/// phases. Redraws (up to 10 times) until the numerical rank is min(P, N).
TrainingMatrix gen_lorentzian_training(std::size_t P, std::size_t N, Rng &rng);

/// Single Lorentzian weight for a given phase.
cdouble lorentzian_weight(double phi);

/// Truncated DFT, f_{p,n} = exp(-j 2 pi p n / P); requires P >= N.
TrainingMatrix gen_dft_training(std::size_t P, std::size_t N);

SymbolBlock gen_qam(std::size_t T, int order, Rng &rng);

/// s_t = exp(j t / T), t = 0..T-1.
SymbolBlock gen_pilots(std::size_t T);

std::vector<int> qam_demap(const ComplexVector &s_hat, int order);

/// Numerical rank with the same relative cutoff as pinv.
Eigen::Index numerical_rank(const ComplexMatrix &A, double rcond = kDefaultRcond);

} // namespace dmace

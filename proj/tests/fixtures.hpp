// SPDX-License-Identifier: Apache-2.0
//
// Ground-truth model instances shared by the receiver-level tests.

#pragma once

#include "dmace/channel.hpp"
#include "dmace/signal.hpp"

namespace fixture
{

struct Instance
{
    dmace::WirelessChannel H;
    dmace::InnerChannel m;
    dmace::SymbolBlock s;
    dmace::TrainingMatrix F;
    dmace::ComplexMatrix X;
    dmace::ReceivedTensor clean;
};

/// Draws one instance of the downlink model. Data symbols are 64-QAM unless
/// pilots are requested; training is Lorentzian unless dft is set.
inline Instance draw(std::size_t K, std::size_t T, std::size_t P, std::size_t N, std::uint64_t seed, bool dft = false,
                     bool pilots = false)
{
    dmace::Rng rng(seed);
    Instance in;
    in.H = dmace::gen_wireless(K, N, rng);
    in.m = dmace::gen_inner_random_phase(N, rng);
    in.s = pilots ? dmace::gen_pilots(T) : dmace::gen_qam(T, 64, rng);
    in.F = dft ? dmace::gen_dft_training(P, N) : dmace::gen_lorentzian_training(P, N, rng);
    in.X = dmace::build_rank_one(in.s.s, in.m.m).X;
    in.clean = dmace::build_noiseless(in.H.H, in.X, in.F.F);
    return in;
}

/// Same as draw() but with the physical (lossy, non-unit-modulus) inner channel.
inline Instance draw_physical(std::size_t K, std::size_t T, std::size_t P, std::size_t D, std::size_t L,
                              std::uint64_t seed, bool dft = false)
{
    Instance in = draw(K, T, P, D * L, seed, dft);
    in.m = dmace::gen_inner_physical(D, L, 1.0, 209.44, 0.005);
    in.X = dmace::build_rank_one(in.s.s, in.m.m).X;
    in.clean = dmace::build_noiseless(in.H.H, in.X, in.F.F);
    return in;
}

/// Angle between the lines spanned by a and b.
inline double subspace_angle(const dmace::ComplexVector &a, const dmace::ComplexVector &b)
{
    const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
    return std::acos(std::min(1.0, c));
}

} // namespace fixture

// SPDX-License-Identifier: Apache-2.0

#include "dmace/benchmarks.hpp"
#include "dmace/error.hpp"
#include "dmace/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dmace;

namespace
{

// The general least-squares updates, written out independently.
ComplexMatrix ls_H(const ComplexMatrix &Y1, const ComplexMatrix &F, const ComplexMatrix &X)
{
    return Y1 * oracle::left_inverse(oracle::kron_columns(F, X)).transpose();
}

ComplexMatrix ls_X(const ComplexMatrix &Y2, const ComplexMatrix &F, const ComplexMatrix &H)
{
    return Y2 * oracle::left_inverse(oracle::kron_columns(F, H)).transpose();
}

} // namespace

TEST_CASE("weight vectors")
{
    ComplexVector m(3);
    m << 2.0, cdouble{0.0, 0.5}, cdouble{1.0, 1.0};
    const RealVector w = inverse_squared_moduli(m);
    CHECK(w(0) == doctest::Approx(0.25));
    CHECK(w(1) == doctest::Approx(4.0));
    CHECK(w(2) == doctest::Approx(0.5));
    m(1) = 0.0;
    CHECK_THROWS_AS(inverse_squared_moduli(m), Error);

    SUBCASE("dominant column gets the smallest weight")
    {
        Rng rng(3);
        ComplexMatrix H = oracle::random_matrix(8, 5, rng);
        H.col(2) *= 50.0;
        const RealVector h = inverse_column_energies(H);
        Eigen::Index idx = 0;
        h.minCoeff(&idx);
        CHECK(idx == 2);
        H.col(4).setZero();
        CHECK_THROWS_AS(inverse_column_energies(H), Error);
    }
}

TEST_CASE("semi-unitarity guard")
{
    CHECK_NOTHROW(require_semi_unitary(gen_dft_training(32, 16).F));
    Rng rng(4);
    const auto lor = gen_lorentzian_training(32, 16, rng);
    CHECK_THROWS_AS(require_semi_unitary(lor.F), Error);

    const auto in = fixture::draw(8, 10, 32, 16, 5);
    const ComplexMatrix Y1 = unfold_mode1(in.clean.Y);
    CHECK_THROWS_AS(semi_unitary_H(Y1, in.F.F, in.X, inverse_squared_moduli(in.m.m), in.s.s.squaredNorm()), Error);
}

TEST_CASE("data-aided closed forms")
{
    const auto in = fixture::draw_physical(8, 10, 32, 2, 8, 21, true);
    const ComplexMatrix &F = in.F.F;
    const RealVector m_tilde = inverse_squared_moduli(in.m.m);
    const RealVector h_tilde = inverse_column_energies(in.H.H);
    const double s_energy = in.s.s.squaredNorm();

    SUBCASE("noiseless exact")
    {
        const ComplexMatrix H = semi_unitary_H(unfold_mode1(in.clean.Y), F, in.X, m_tilde, s_energy);
        const ComplexMatrix X = semi_unitary_X(unfold_mode2(in.clean.Y), F, in.H.H, h_tilde);
        CHECK(oracle::rel_err(H, in.H.H) <= 1e-10);
        CHECK(oracle::rel_err(X, in.X) <= 1e-10);
    }
    SUBCASE("equal to the least-squares updates on noisy data")
    {
        Rng rng(8);
        for (double snr : {0.0, 10.0, 30.0})
        {
            const auto noisy = add_noise(in.clean, snr, rng);
            const ComplexMatrix Y1 = unfold_mode1(noisy.Y), Y2 = unfold_mode2(noisy.Y);
            const ComplexMatrix H_cf = semi_unitary_H(Y1, F, in.X, m_tilde, s_energy);
            CHECK(oracle::rel_err(H_cf, ls_H(Y1, F, in.X)) <= 1e-10);
            CHECK(oracle::rel_err(H_cf, Y1 * pinv(khatri_rao(F, in.X)).transpose()) <= 1e-10);
            const ComplexMatrix X_cf = semi_unitary_X(Y2, F, in.H.H, h_tilde);
            CHECK(oracle::rel_err(X_cf, ls_X(Y2, F, in.H.H)) <= 1e-10);
            CHECK(oracle::rel_err(X_cf, Y2 * pinv(khatri_rao(F, in.H.H)).transpose()) <= 1e-10);
        }
    }
    SUBCASE("unit-modulus inner channel drops the diagonal")
    {
        const auto rp = fixture::draw(8, 10, 32, 16, 22, true);
        const RealVector ones = inverse_squared_moduli(rp.m.m);
        CHECK((ones.array() - 1.0).abs().maxCoeff() <= 1e-14);
        const ComplexMatrix Y1 = unfold_mode1(rp.clean.Y);
        const ComplexMatrix plain =
            Y1 * khatri_rao(rp.F.F, rp.X).conjugate() / (32.0 * rp.s.s.squaredNorm());
        CHECK(oracle::rel_err(semi_unitary_H(Y1, rp.F.F, rp.X, ones, rp.s.s.squaredNorm()), plain) <= 1e-14);
    }
    SUBCASE("shape and weight errors")
    {
        const ComplexMatrix Y1 = unfold_mode1(in.clean.Y);
        CHECK_THROWS_AS(semi_unitary_H(Y1, F, in.X, RealVector::Ones(3), s_energy), Error);
        CHECK_THROWS_AS(semi_unitary_H(Y1, F, in.X, m_tilde, 0.0), Error);
        CHECK_THROWS_AS(semi_unitary_X(unfold_mode2(in.clean.Y), F, in.H.H, RealVector::Ones(2)), Error);
    }
}

TEST_CASE("pilot-aided closed forms")
{
    const auto in = fixture::draw(8, 10, 32, 16, 31, true, true);
    const ComplexMatrix &F = in.F.F;
    const ComplexVector &s = in.s.s;
    const RealVector m_tilde = inverse_squared_moduli(in.m.m);
    const RealVector h_tilde = inverse_column_energies(in.H.H);
    const ComplexMatrix Y1 = unfold_mode1(in.clean.Y), Y2 = unfold_mode2(in.clean.Y);

    SUBCASE("noiseless exact")
    {
        CHECK(oracle::rel_err(pilot_aided_H(Y1, F, s, in.m.m, m_tilde), in.H.H) <= 1e-10);
        CHECK(oracle::rel_err(pilot_aided_m(Y2, F, in.H.H, h_tilde, s), in.m.m) <= 1e-10);
    }
    SUBCASE("scaling at P = 32, T = 10")
    {
        const ComplexMatrix manual = (1.0 / (32.0 * 10.0)) * Y1 *
                                     oracle::kron_columns(F, s * in.m.m.transpose()).conjugate() *
                                     m_tilde.cast<cdouble>().asDiagonal();
        CHECK(oracle::rel_err(pilot_aided_H(Y1, F, s, in.m.m, m_tilde), manual) <= 1e-13);
    }
    SUBCASE("substitution and matched-filter identities on noisy data")
    {
        Rng rng(9);
        const auto noisy = add_noise(in.clean, 5.0, rng);
        const ComplexMatrix N1 = unfold_mode1(noisy.Y), N2 = unfold_mode2(noisy.Y);
        const ComplexMatrix H_pilot = pilot_aided_H(N1, F, s, in.m.m, m_tilde);
        CHECK(oracle::rel_err(H_pilot, semi_unitary_H(N1, F, s * in.m.m.transpose(), m_tilde, 10.0)) <= 1e-12);

        const ComplexMatrix X_hat = semi_unitary_X(N2, F, in.H.H, h_tilde);
        const ComplexVector filtered = X_hat.transpose() * s.conjugate() / 10.0;
        CHECK(oracle::rel_err(pilot_aided_m(N2, F, in.H.H, h_tilde, s), filtered) <= 1e-10);
    }
    SUBCASE("orthogonal pilot nulls the filter")
    {
        ComplexVector q = ComplexVector::Ones(10);
        q -= (s.dot(q) / s.squaredNorm()) * s; // remove the component along s
        REQUIRE(std::abs(s.dot(q)) <= 1e-12);
        q *= std::sqrt(10.0) / q.norm();
        const ComplexVector m0 = pilot_aided_m(Y2, F, in.H.H, h_tilde, q);
        CHECK(m0.norm() <= 1e-10 * in.m.m.norm());
    }
    SUBCASE("non-unit pilot energy rejected")
    {
        CHECK_THROWS_AS(pilot_aided_H(Y1, F, 2.0 * s, in.m.m, m_tilde), Error);
    }
}

TEST_CASE("benchmark receivers end to end")
{
    SUBCASE("data-aided on noiseless data")
    {
        const auto in = fixture::draw_physical(8, 10, 32, 2, 8, 41, true);
        Rng rng(3);
        const auto rep = data_aided_benchmark(in.clean, in.F, BalsConfig{}, {in.s.s(0), std::nullopt}, rng);
        const ComplexVector c = diagonal_fit(rep.H_hat, in.H.H);
        CHECK(nmse(rep.H_hat * c.asDiagonal(), in.H.H) <= 1e-8);
        CHECK(nmse(rep.m_hat.cwiseQuotient(c), in.m.m) <= 1e-8);
        CHECK(ser(rep.s_hat, in.s) == 0.0);
        CHECK(rep.converged);
    }
    SUBCASE("data-aided matches the pseudo-inverse alternation step for step")
    {
        const auto in = fixture::draw(8, 10, 32, 16, 42, true);
        Rng noise(5);
        const auto noisy = add_noise(in.clean, 10.0, noise);
        Rng r1(77), r2(77);
        const auto a = data_aided_benchmark(noisy, in.F, BalsConfig{}, {in.s.s(0), std::nullopt}, r1);
        const auto b = estimate_semi_blind(noisy, in.F, BalsConfig{}, {in.s.s(0), std::nullopt}, r2);
        REQUIRE(a.residual_trace.size() == b.residual_trace.size());
        for (std::size_t i = 0; i < a.residual_trace.size(); ++i)
            CHECK(std::abs(a.residual_trace[i] - b.residual_trace[i]) <= 1e-9);
        CHECK(oracle::rel_err(a.H_hat, b.H_hat) <= 1e-8);
    }
    SUBCASE("pilot-aided on noiseless data")
    {
        const auto in = fixture::draw(8, 10, 32, 16, 43, true, true);
        const auto rep = pilot_aided_benchmark(in.clean, in.F, in.s.s, in.m.m);
        CHECK(nmse(rep.H_hat, in.H.H) <= 1e-20);
        CHECK(nmse(rep.m_hat, in.m.m) <= 1e-20);
        CHECK(rep.iterations == 1u);
    }
    SUBCASE("Lorentzian training rejected")
    {
        const auto in = fixture::draw(8, 10, 32, 16, 44);
        Rng rng(1);
        CHECK_THROWS_AS(data_aided_benchmark(in.clean, in.F, BalsConfig{}, {in.s.s(0), std::nullopt}, rng), Error);
        CHECK_THROWS_AS(pilot_aided_benchmark(in.clean, in.F, gen_pilots(10).s, in.m.m), Error);
    }
}

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


#include "dmace/benchmarks.hpp"

#include "dmace/error.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace dmace
{

namespace
{

constexpr double kSemiUnitaryTol = 1e-10;

void require_positive_finite(const RealVector &w, const char *what)
{
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (!std::isfinite(w(i)) || !(w(i) > 0.0))
            throw Error(ErrorCategory::invalid_input, std::string(what) + ": weight " + std::to_string(i) +
                                                          " is not a positive finite number");
}

} // namespace

RealVector inverse_squared_moduli(const ComplexVector &m)
{
    RealVector out(m.size());
    for (Eigen::Index n = 0; n < m.size(); ++n)
    {
        const double e = std::norm(m(n));
        if (e == 0.0)
            throw Error(ErrorCategory::invalid_input, "inverse_squared_moduli: entry " + std::to_string(n) + " is zero");
        out(n) = 1.0 / e;
    }
    return out;
}

RealVector inverse_column_energies(const ComplexMatrix &H)
{
    RealVector out(H.cols());
    for (Eigen::Index n = 0; n < H.cols(); ++n)
    {
        const double e = H.col(n).squaredNorm();
        if (e == 0.0)
            throw Error(ErrorCategory::invalid_input, "inverse_column_energies: column " + std::to_string(n) +
                                                          " has zero norm");
        out(n) = 1.0 / e;
    }
    return out;
}

void require_semi_unitary(const ComplexMatrix &F)
{
    const auto P = static_cast<double>(F.rows());
    const ComplexMatrix gram = F.transpose() * F.conjugate();
    const ComplexMatrix target = P * ComplexMatrix::Identity(F.cols(), F.cols());
    if ((gram - target).norm() > kSemiUnitaryTol * target.norm())
        throw Error(ErrorCategory::invalid_input, "training matrix is not semi-unitary (F^T F^* != P I)");
}

ComplexMatrix semi_unitary_H(const ComplexMatrix &Y1, const ComplexMatrix &F, const ComplexMatrix &X,
                             const RealVector &m_tilde, double s_energy)
{
    if (m_tilde.size() != F.cols() || X.cols() != F.cols())
        throw Error(ErrorCategory::dimension, "semi_unitary_H: inconsistent column counts");
    if (Y1.cols() != F.rows() * X.rows())
        throw Error(ErrorCategory::dimension, "semi_unitary_H: Y(1) must have P*T columns");
    if (!(s_energy > 0.0))
        throw Error(ErrorCategory::invalid_input, "semi_unitary_H: symbol energy must be positive");
    require_positive_finite(m_tilde, "semi_unitary_H");
    require_semi_unitary(F);
    const double scale = 1.0 / (static_cast<double>(F.rows()) * s_energy);
    return scale * (Y1 * khatri_rao(F, X).conjugate()) * m_tilde.cast<cdouble>().asDiagonal();
}

ComplexMatrix semi_unitary_X(const ComplexMatrix &Y2, const ComplexMatrix &F, const ComplexMatrix &H,
                             const RealVector &h_tilde)
{
    if (h_tilde.size() != F.cols() || H.cols() != F.cols())
        throw Error(ErrorCategory::dimension, "semi_unitary_X: inconsistent column counts");
    if (Y2.cols() != F.rows() * H.rows())
        throw Error(ErrorCategory::dimension, "semi_unitary_X: Y(2) must have P*K columns");
    require_positive_finite(h_tilde, "semi_unitary_X");
    require_semi_unitary(F);
    const double scale = 1.0 / static_cast<double>(F.rows());
    return scale * (Y2 * khatri_rao(F, H).conjugate()) * h_tilde.cast<cdouble>().asDiagonal();
}

ComplexMatrix pilot_aided_H(const ComplexMatrix &Y1, const ComplexMatrix &F, const ComplexVector &s_check,
                            const ComplexVector &m, const RealVector &m_tilde)
{
    const auto T = static_cast<double>(s_check.size());
    if (std::abs(s_check.squaredNorm() - T) > 1e-9 * T)
        throw Error(ErrorCategory::invalid_input, "pilot_aided_H: pilot block must satisfy ||s||^2 = T");
    return semi_unitary_H(Y1, F, s_check * m.transpose(), m_tilde, T);
}

ComplexVector pilot_aided_m(const ComplexMatrix &Y2, const ComplexMatrix &F, const ComplexMatrix &H,
                            const RealVector &h_tilde, const ComplexVector &s_check)
{
    if (h_tilde.size() != F.cols() || H.cols() != F.cols())
        throw Error(ErrorCategory::dimension, "pilot_aided_m: inconsistent column counts");
    if (Y2.rows() != s_check.size() || Y2.cols() != F.rows() * H.rows())
        throw Error(ErrorCategory::dimension, "pilot_aided_m: Y(2) shape does not match pilots and channel");
    require_positive_finite(h_tilde, "pilot_aided_m");
    require_semi_unitary(F);
    const double scale = 1.0 / (static_cast<double>(F.rows()) * static_cast<double>(s_check.size()));
    return scale * (h_tilde.cast<cdouble>().asDiagonal() *
                    (khatri_rao(F, H).adjoint() * (Y2.transpose() * s_check.conjugate())));
}

EstimateReport data_aided_benchmark(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg,
                                    const AmbiguityAnchors &anchors, Rng &rng)
{
    require_semi_unitary(F.F);
    const auto start = std::chrono::steady_clock::now();

    // With X = s m^T, ||X_{:,n}||^2 = ||s||^2 |m_n|^2, so unit symbol energy
    // and m_tilde_n = 1 / ||X_{:,n}||^2 reproduce the oracle weighting.
    auto update_H = [](const ComplexMatrix &Y1, const ComplexMatrix &train, const ComplexMatrix &X) {
        return semi_unitary_H(Y1, train, X, inverse_column_energies(X), 1.0);
    };
    auto update_X = [](const ComplexMatrix &Y2, const ComplexMatrix &train, const ComplexMatrix &H) {
        return semi_unitary_X(Y2, train, H, inverse_column_energies(H));
    };
    BalsResult stage1 = alternating_solve(Y, F.F, cfg, rng, update_H, update_X);
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

EstimateReport pilot_aided_benchmark(const ReceivedTensor &Y, const TrainingMatrix &F, const ComplexVector &s_check,
                                     const ComplexVector &m_oracle)
{
    require_semi_unitary(F.F);
    const auto start = std::chrono::steady_clock::now();
    const ComplexMatrix Y1 = unfold_mode1(Y.Y);
    const ComplexMatrix Y2 = unfold_mode2(Y.Y);

    EstimateReport rep;
    rep.H_hat = pilot_aided_H(Y1, F.F, s_check, m_oracle, inverse_squared_moduli(m_oracle));
    rep.m_hat = pilot_aided_m(Y2, F.F, rep.H_hat, inverse_column_energies(rep.H_hat), s_check);
    rep.s_hat = s_check;
    const auto stop = std::chrono::steady_clock::now();

    const double y_norm = Y.Y.frobenius_norm();
    const ComplexMatrix X_hat = s_check * rep.m_hat.transpose();
    rep.residual_trace = {(Y1 - rep.H_hat * khatri_rao(F.F, X_hat).transpose()).norm() / y_norm};
    rep.iterations = 1;
    rep.converged = true;
    rep.runtime_s = std::chrono::duration<double>(stop - start).count();
    return rep;
}

} // namespace dmace

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


// Closed-form benchmark receivers for a semi-unitary (truncated DFT) training
// matrix F with F^T F^* = P I_N. The Khatri-Rao Gram of the LS updates then
// collapses to a diagonal, so every pseudo-inverse becomes a matched filter
// followed by a per-column rescaling.

#pragma once

#include "dmace/channel.hpp"
#include "dmace/receiver.hpp"
#include "dmace/tensor.hpp"

namespace dmace
{

/// Returns 1 / |m_n|^2; throws when any entry is zero.
RealVector inverse_squared_moduli(const ComplexVector &m);

/// Returns 1 / ||H_{:,n}||^2; throws when any column is zero.
RealVector inverse_column_energies(const ComplexMatrix &H);

/// Throws unless ||F^T F^* - P I||_F / ||P I||_F <= 1e-10. The closed forms
/// below all check this.
void require_semi_unitary(const ComplexMatrix &F);

/// H = 1 / (P s_energy) * Y(1) (F (.) X)^* diag(m_tilde), where s_energy is
/// ||s||^2 and m_tilde_n = 1 / |m_n|^2 for X = s m^T.
ComplexMatrix semi_unitary_H(const ComplexMatrix &Y1, const ComplexMatrix &F, const ComplexMatrix &X,
                             const RealVector &m_tilde, double s_energy);

/// X = 1 / P * Y(2) (F (.) H)^* diag(h_tilde), h_tilde_n = 1 / ||H_{:,n}||^2.
ComplexMatrix semi_unitary_X(const ComplexMatrix &Y2, const ComplexMatrix &F, const ComplexMatrix &H,
                             const RealVector &h_tilde);

/// Pilot specialization of semi_unitary_H with X = s_check m^T and
/// ||s_check||^2 = T. The weighting vector is m_tilde.
ComplexMatrix pilot_aided_H(const ComplexMatrix &Y1, const ComplexMatrix &F, const ComplexVector &s_check,
                            const ComplexVector &m, const RealVector &m_tilde);

/// m = 1 / (P T) * diag(h_tilde) (F (.) H)^H Y(2)^T conj(s_check).
ComplexVector pilot_aided_m(const ComplexMatrix &Y2, const ComplexMatrix &F, const ComplexMatrix &H,
                            const RealVector &h_tilde, const ComplexVector &s_check);

/// Data-aided benchmark: the alternation of the proposed receiver with the
/// closed-form updates in place of the pseudo-inverses. The diagonal weights
/// come from the current iterate (column energies of X and H), which equals
/// the oracle weighting whenever the iterate is exact.
EstimateReport data_aided_benchmark(const ReceivedTensor &Y, const TrainingMatrix &F, const BalsConfig &cfg,
                                    const AmbiguityAnchors &anchors, Rng &rng);

/// Pilot-aided benchmark: one pass. H comes from pilot_aided_H using the
/// oracle inner channel m_oracle; m then comes from pilot_aided_m using that
/// H estimate.
EstimateReport pilot_aided_benchmark(const ReceivedTensor &Y, const TrainingMatrix &F, const ComplexVector &s_check,
                                     const ComplexVector &m_oracle);

} // namespace dmace

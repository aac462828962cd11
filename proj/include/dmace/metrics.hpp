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


// Ambiguity-aware error metrics.

#pragma once

#include "dmace/channel.hpp"
#include "dmace/tensor.hpp"

namespace dmace
{

enum class FitClass
{
    none,
    scalar,   // est' = c est
    diagonal  // est' = est diag(c), one coefficient per column
};

const char *fit_class_name(FitClass fit);

/// Least-squares coefficients c_n = est_n^H truth_n / ||est_n||^2, one per
/// column (0 for an all-zero estimate column).
ComplexVector diagonal_fit(const ComplexMatrix &est, const ComplexMatrix &truth);

/// Least-squares scalar c = <est, truth> / ||est||^2.
cdouble scalar_fit(const ComplexMatrix &est, const ComplexMatrix &truth);

/// ||est' - truth||_F^2 / ||truth||_F^2 after the declared fit. Vectors are
/// single-column matrices, so a diagonal fit on a vector equals a scalar fit.
double nmse(const ComplexMatrix &est, const ComplexMatrix &truth, FitClass fit = FitClass::none);

/// Fraction of symbol positions whose hard decision differs from the
/// transmitted index. The first position is the reference symbol and is not
/// counted when exclude_anchor is set.
double ser(const ComplexVector &s_hat, const SymbolBlock &truth, bool exclude_anchor = true);

double to_db(double linear);

} // namespace dmace

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


#include "dmace/metrics.hpp"

#include "dmace/error.hpp"

#include <cmath>

namespace dmace
{

const char *fit_class_name(FitClass fit)
{
    switch (fit)
    {
    case FitClass::none: return "none";
    case FitClass::scalar: return "scalar";
    case FitClass::diagonal: return "diagonal";
    }
    return "unknown";
}

ComplexVector diagonal_fit(const ComplexMatrix &est, const ComplexMatrix &truth)
{
    if (est.rows() != truth.rows() || est.cols() != truth.cols())
        throw Error(ErrorCategory::dimension, "diagonal_fit: shape mismatch");
    ComplexVector c(est.cols());
    for (Eigen::Index n = 0; n < est.cols(); ++n)
    {
        const double e = est.col(n).squaredNorm();
        c(n) = e > 0.0 ? est.col(n).dot(truth.col(n)) / e : cdouble{0.0, 0.0};
    }
    return c;
}

cdouble scalar_fit(const ComplexMatrix &est, const ComplexMatrix &truth)
{
    if (est.rows() != truth.rows() || est.cols() != truth.cols())
        throw Error(ErrorCategory::dimension, "scalar_fit: shape mismatch");
    const double e = est.squaredNorm();
    if (e == 0.0)
        return {0.0, 0.0};
    // Eigen's dot conjugates the left operand.
    const cdouble inner = Eigen::Map<const ComplexVector>(est.data(), est.size())
                              .dot(Eigen::Map<const ComplexVector>(truth.data(), truth.size()));
    return inner / e;
}

double nmse(const ComplexMatrix &est, const ComplexMatrix &truth, FitClass fit)
{
    if (est.rows() != truth.rows() || est.cols() != truth.cols())
        throw Error(ErrorCategory::dimension, "nmse: shape mismatch");
    const double ref = truth.squaredNorm();
    if (ref == 0.0)
        throw Error(ErrorCategory::invalid_input, "nmse: reference has zero norm");

    switch (fit)
    {
    case FitClass::none: return (est - truth).squaredNorm() / ref;
    case FitClass::scalar: return (scalar_fit(est, truth) * est - truth).squaredNorm() / ref;
    case FitClass::diagonal:
        return (est * diagonal_fit(est, truth).asDiagonal() - truth).squaredNorm() / ref;
    }
    return std::nan("");
}

double ser(const ComplexVector &s_hat, const SymbolBlock &truth, bool exclude_anchor)
{
    if (truth.kind != SymbolKind::qam_data)
        throw Error(ErrorCategory::invalid_input, "ser: reference block carries no QAM data");
    if (s_hat.size() != truth.s.size())
        throw Error(ErrorCategory::dimension, "ser: length mismatch");
    const std::vector<int> decided = qam_demap(s_hat, truth.order);
    const std::size_t first = exclude_anchor ? 1 : 0;
    if (decided.size() <= first)
        return 0.0;
    std::size_t errors = 0;
    for (std::size_t t = first; t < decided.size(); ++t)
        errors += decided[t] != truth.indices[t];
    return static_cast<double>(errors) / static_cast<double>(decided.size() - first);
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace dmace

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


// Dense complex tensor algebra used by the PARAFAC receiver.
//
// Index conventions (fixed for the whole library):
//   * Matrices are Eigen column-major, entry (r, c).
//   * Tensor3 stores entry (k, t, p) at k + K * (t + T * p), so every frontal
//     slice Y_p is a contiguous K x T column-major block.
//   * khatri_rao(A, B) places a_{i,n} * b_{j,n} in row i * J + j (the row
//     index of A varies slowest).
//   * unfold_mode1(Y) = [Y_1, ..., Y_P]          (K x PT, column p*T + t)
//     unfold_mode2(Y) = [Y_1^T, ..., Y_P^T]      (T x PK, column p*K + k)
//   With these choices the noiseless unfoldings factor as
//     Y(1) = H * khatri_rao(F, X)^T,  Y(2) = X * khatri_rao(F, H)^T.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace dmace
{

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct TensorDims
{
    std::size_t K = 0;
    std::size_t T = 0;
    std::size_t P = 0;

    bool operator==(const TensorDims &) const = default;
};

/// Dense complex third-order array indexed (k, t, p).
class Tensor3
{
  public:
    using SliceMap = Eigen::Map<ComplexMatrix>;
    using ConstSliceMap = Eigen::Map<const ComplexMatrix>;

    Tensor3() = default;
    explicit Tensor3(TensorDims dims);
    Tensor3(std::size_t K, std::size_t T, std::size_t P) : Tensor3(TensorDims{K, T, P}) {}

    /// Stacks P frontal slices, each K x T.
    static Tensor3 from_slices(const std::vector<ComplexMatrix> &slices);

    const TensorDims &dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return data_.size(); }

    cdouble &operator()(std::size_t k, std::size_t t, std::size_t p)
    {
        return data_[k + dims_.K * (t + dims_.T * p)];
    }
    const cdouble &operator()(std::size_t k, std::size_t t, std::size_t p) const
    {
        return data_[k + dims_.K * (t + dims_.T * p)];
    }

    SliceMap slice(std::size_t p);
    ConstSliceMap slice(std::size_t p) const;

    double frobenius_norm() const;
    double squared_norm() const;

    std::vector<cdouble> &data() noexcept { return data_; }
    const std::vector<cdouble> &data() const noexcept { return data_; }

    Tensor3 &operator+=(const Tensor3 &other);
    Tensor3 &operator-=(const Tensor3 &other);

  private:
    TensorDims dims_{};
    std::vector<cdouble> data_;
};

Tensor3 operator-(Tensor3 lhs, const Tensor3 &rhs);

/// Leading singular triplet of a matrix. second_sigma is the next singular
/// value (0 for rank-one shapes) and lets callers detect ties.
struct SvdTriplet
{
    double sigma = 0.0;
    double second_sigma = 0.0;
    ComplexVector u;
    ComplexVector v;
};

ComplexMatrix unfold_mode1(const Tensor3 &Y);
ComplexMatrix unfold_mode2(const Tensor3 &Y);

/// Column-wise Kronecker product; throws on column-count mismatch.
ComplexMatrix khatri_rao(const ComplexMatrix &A, const ComplexMatrix &B);

/// x_{k,t,p} = sum_n h_{k,n} x_{t,n} f_{p,n}; slice p equals H D_p(F) X^T.
Tensor3 parafac_build(const ComplexMatrix &H, const ComplexMatrix &X, const ComplexMatrix &F);

inline constexpr double kDefaultRcond = 1e-12;

/// Moore-Penrose pseudo-inverse. Singular values below rcond * sigma_max
/// are treated as zero.
ComplexMatrix pinv(const ComplexMatrix &A, double rcond = kDefaultRcond);

/// Leading singular triplet from a full SVD. Throws on an all-zero input.
SvdTriplet dominant_triplet(const ComplexMatrix &A);

bool all_finite(const ComplexMatrix &A);

} // namespace dmace

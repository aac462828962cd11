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


#include "dmace/tensor.hpp"

#include "dmace/error.hpp"

#include <cmath>
#include <string>

namespace dmace
{

Tensor3::Tensor3(TensorDims dims) : dims_(dims), data_(dims.K * dims.T * dims.P, cdouble{0.0, 0.0}) {}

Tensor3 Tensor3::from_slices(const std::vector<ComplexMatrix> &slices)
{
    if (slices.empty())
        throw Error(ErrorCategory::dimension, "from_slices: no slices given");
    const auto K = static_cast<std::size_t>(slices.front().rows());
    const auto T = static_cast<std::size_t>(slices.front().cols());
    Tensor3 out(K, T, slices.size());
    for (std::size_t p = 0; p < slices.size(); ++p)
    {
        if (static_cast<std::size_t>(slices[p].rows()) != K || static_cast<std::size_t>(slices[p].cols()) != T)
            throw Error(ErrorCategory::dimension, "from_slices: slice " + std::to_string(p) + " has mismatched shape");
        out.slice(p) = slices[p];
    }
    return out;
}

Tensor3::SliceMap Tensor3::slice(std::size_t p)
{
    return SliceMap(data_.data() + dims_.K * dims_.T * p, static_cast<Eigen::Index>(dims_.K),
                    static_cast<Eigen::Index>(dims_.T));
}

Tensor3::ConstSliceMap Tensor3::slice(std::size_t p) const
{
    return ConstSliceMap(data_.data() + dims_.K * dims_.T * p, static_cast<Eigen::Index>(dims_.K),
                         static_cast<Eigen::Index>(dims_.T));
}

double Tensor3::squared_norm() const
{
    double acc = 0.0;
    for (const auto &z : data_)
        acc += std::norm(z);
    return acc;
}

double Tensor3::frobenius_norm() const { return std::sqrt(squared_norm()); }

Tensor3 &Tensor3::operator+=(const Tensor3 &other)
{
    if (other.dims_ != dims_)
        throw Error(ErrorCategory::dimension, "Tensor3 +=: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

Tensor3 &Tensor3::operator-=(const Tensor3 &other)
{
    if (other.dims_ != dims_)
        throw Error(ErrorCategory::dimension, "Tensor3 -=: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

Tensor3 operator-(Tensor3 lhs, const Tensor3 &rhs)
{
    lhs -= rhs;
    return lhs;
}

ComplexMatrix unfold_mode1(const Tensor3 &Y)
{
    const auto [K, T, P] = Y.dims();
    ComplexMatrix out(K, P * T);
    for (std::size_t p = 0; p < P; ++p)
        out.middleCols(static_cast<Eigen::Index>(p * T), static_cast<Eigen::Index>(T)) = Y.slice(p);
    return out;
}

ComplexMatrix unfold_mode2(const Tensor3 &Y)
{
    const auto [K, T, P] = Y.dims();
    ComplexMatrix out(T, P * K);
    for (std::size_t p = 0; p < P; ++p)
        out.middleCols(static_cast<Eigen::Index>(p * K), static_cast<Eigen::Index>(K)) = Y.slice(p).transpose();
    return out;
}

ComplexMatrix khatri_rao(const ComplexMatrix &A, const ComplexMatrix &B)
{
    if (A.cols() != B.cols())
        throw Error(ErrorCategory::dimension, "khatri_rao: column counts differ (" + std::to_string(A.cols()) +
                                                   " vs " + std::to_string(B.cols()) + ")");
    const Eigen::Index I = A.rows(), J = B.rows();
    ComplexMatrix out(I * J, A.cols());
    for (Eigen::Index n = 0; n < A.cols(); ++n)
        for (Eigen::Index i = 0; i < I; ++i)
            out.col(n).segment(i * J, J) = A(i, n) * B.col(n);
    return out;
}

Tensor3 parafac_build(const ComplexMatrix &H, const ComplexMatrix &X, const ComplexMatrix &F)
{
    if (H.cols() != X.cols() || H.cols() != F.cols())
        throw Error(ErrorCategory::dimension, "parafac_build: factor matrices must share the same column count");
    const auto K = static_cast<std::size_t>(H.rows());
    const auto T = static_cast<std::size_t>(X.rows());
    const auto P = static_cast<std::size_t>(F.rows());
    Tensor3 Y(K, T, P);
    const ComplexMatrix Xt = X.transpose();
    for (std::size_t p = 0; p < P; ++p)
        Y.slice(p).noalias() = H * F.row(static_cast<Eigen::Index>(p)).asDiagonal() * Xt;
    return Y;
}

bool all_finite(const ComplexMatrix &A)
{
    for (Eigen::Index i = 0; i < A.size(); ++i)
    {
        const cdouble z = A.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return false;
    }
    return true;
}

namespace
{

// SVD of a tall (or square) matrix through an economy QR: A = Q R, R = U S V^H,
// hence A = (Q U) S V^H. Only the small n x n factor goes through Jacobi.
struct ThinSvd
{
    ComplexMatrix U;
    RealVector sigma;
    ComplexMatrix V;
};

ThinSvd thin_svd_tall(const ComplexMatrix &A)
{
    const Eigen::Index n = A.cols();
    Eigen::HouseholderQR<ComplexMatrix> qr(A);
    const ComplexMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<ComplexMatrix> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);

    ThinSvd out;
    out.U = ComplexMatrix::Zero(A.rows(), n);
    out.U.topRows(n) = svd.matrixU();
    out.U.applyOnTheLeft(qr.householderQ());
    out.sigma = svd.singularValues();
    out.V = svd.matrixV();
    return out;
}

} // namespace

ComplexMatrix pinv(const ComplexMatrix &A, double rcond)
{
    if (A.size() == 0)
        throw Error(ErrorCategory::invalid_input, "pinv: empty matrix");
    if (!all_finite(A))
        throw Error(ErrorCategory::numerical, "pinv: input contains non-finite entries");
    if (A.rows() < A.cols())
        return pinv(ComplexMatrix(A.adjoint()), rcond).adjoint();

    const ThinSvd svd = thin_svd_tall(A);
    const double cutoff = rcond * svd.sigma(0);
    RealVector inv_sv = RealVector::Zero(svd.sigma.size());
    for (Eigen::Index i = 0; i < svd.sigma.size(); ++i)
        if (svd.sigma(i) > cutoff)
            inv_sv(i) = 1.0 / svd.sigma(i);

    ComplexMatrix out = svd.V * inv_sv.cast<cdouble>().asDiagonal() * svd.U.adjoint();
    if (!all_finite(out))
        throw Error(ErrorCategory::numerical, "pinv: SVD produced non-finite values");
    return out;
}

SvdTriplet dominant_triplet(const ComplexMatrix &A)
{
    if (A.size() == 0)
        throw Error(ErrorCategory::invalid_input, "dominant_triplet: empty matrix");
    if (!all_finite(A))
        throw Error(ErrorCategory::numerical, "dominant_triplet: input contains non-finite entries");
    if (A.squaredNorm() == 0.0)
        throw Error(ErrorCategory::invalid_input, "dominant_triplet: all-zero matrix");

    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTriplet out;
    out.sigma = svd.singularValues()(0);
    out.second_sigma = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
    out.u = svd.matrixU().col(0);
    out.v = svd.matrixV().col(0);
    return out;
}

} // namespace dmace

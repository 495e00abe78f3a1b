/*
   Copyright 2026 The formiso Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#ifndef FORMISO_TENSOR3_HPP
#define FORMISO_TENSOR3_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "formiso/linalg.hpp"

namespace formiso {

/// Dense n1 x n2 x n3 array over F_q. Indices are 0-based; entry (i, j, k)
/// sits in frontal slice k at row i, column j.
class Tensor3 {
   public:
    Tensor3() = default;
    Tensor3(const Field& F, std::size_t n1, std::size_t n2, std::size_t n3);
    /// Stacks equally sized matrices as frontal slices.
    static Tensor3 from_frontal_slices(const std::vector<Matrix>& slices);

    const Field& field() const noexcept { return *field_; }
    const Field* field_ptr() const noexcept { return field_; }
    std::array<std::size_t, 3> dims() const noexcept { return {n1_, n2_, n3_}; }
    std::size_t dim(int axis) const noexcept { return axis == 0 ? n1_ : axis == 1 ? n2_ : n3_; }
    bool is_cubical() const noexcept { return n1_ == n2_ && n2_ == n3_; }
    bool is_zero() const noexcept;

    Scalar operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return data_[(k * n1_ + i) * n2_ + j];
    }
    Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[(k * n1_ + i) * n2_ + j]; }
    const std::vector<Scalar>& entries() const noexcept { return data_; }

    /// (a_{i,j,k})_{i,j}, an n1 x n2 matrix.
    Matrix frontal_slice(std::size_t k) const;
    /// (a_{i,j,k})_{i,k}, an n1 x n3 matrix.
    Matrix vertical_slice(std::size_t j) const;
    /// (a_{i,j,k})_{j,k}, an n2 x n3 matrix.
    Matrix horizontal_slice(std::size_t i) const;

    friend bool operator==(const Tensor3& a, const Tensor3& b) noexcept {
        return a.field_ == b.field_ && a.dims() == b.dims() && a.data_ == b.data_;
    }

   private:
    const Field* field_ = nullptr;
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<Scalar> data_;
};

/// Permutation of the three axes as 0-based images {s0, s1, s2}:
///   (t^sigma)_{i_0,i_1,i_2} = t_{i_{s0}, i_{s1}, i_{s2}},
/// so axis a of t becomes axis s_a of the result.
using AxisPerm = std::array<int, 3>;

Tensor3 sigma_transpose(const Tensor3& t, const AxisPerm& sigma);
AxisPerm inverse_perm(const AxisPerm& sigma);

/// t'_{a,b,k} = sum P_{i,a} Q_{j,b} R_{k,l} t_{i,j,l}; frontal slices
/// T_k -> P^T (sum_l R_{k,l} T_l) Q.
/// Composition: act(P2,Q2,R2, act(P1,Q1,R1,t)) = act(P1 P2, Q1 Q2, R2 R1, t).
Tensor3 act(const Matrix& P, const Matrix& Q, const Matrix& R, const Tensor3& t);

/// Zero whenever two indices coincide and sign-alternating under all of S_3.
/// Throws std::invalid_argument for non-cubical input.
bool is_alternating(const Tensor3& t);
/// Invariant under all of S_3. Throws std::invalid_argument for non-cubical input.
bool is_symmetric(const Tensor3& t);

Tensor3 random_tensor(const Field& F, std::size_t n1, std::size_t n2, std::size_t n3, Rng& rng);

}  // namespace formiso

#endif

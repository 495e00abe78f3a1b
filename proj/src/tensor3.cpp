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
#include "formiso/tensor3.hpp"

#include <algorithm>
#include <stdexcept>

namespace formiso {

Tensor3::Tensor3(const Field& F, std::size_t n1, std::size_t n2, std::size_t n3)
    : field_(&F), n1_(n1), n2_(n2), n3_(n3), data_(n1 * n2 * n3, 0) {}

Tensor3 Tensor3::from_frontal_slices(const std::vector<Matrix>& slices) {
    if (slices.empty()) throw std::invalid_argument("no frontal slices given");
    const Matrix& s0 = slices.front();
    Tensor3 t(s0.field(), s0.rows(), s0.cols(), slices.size());
    for (std::size_t k = 0; k < slices.size(); ++k) {
        const Matrix& s = slices[k];
        if (s.field_ptr() != s0.field_ptr() || s.rows() != s0.rows() || s.cols() != s0.cols())
            throw std::invalid_argument("frontal slices differ in shape or field");
        for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t j = 0; j < s.cols(); ++j) t(i, j, k) = s(i, j);
    }
    return t;
}

bool Tensor3::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

Matrix Tensor3::frontal_slice(std::size_t k) const {
    if (k >= n3_) throw std::out_of_range("frontal slice index out of range");
    Matrix m(*field_, n1_, n2_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n2_; ++j) m(i, j) = (*this)(i, j, k);
    return m;
}

Matrix Tensor3::vertical_slice(std::size_t j) const {
    if (j >= n2_) throw std::out_of_range("vertical slice index out of range");
    Matrix m(*field_, n1_, n3_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t k = 0; k < n3_; ++k) m(i, k) = (*this)(i, j, k);
    return m;
}

Matrix Tensor3::horizontal_slice(std::size_t i) const {
    if (i >= n1_) throw std::out_of_range("horizontal slice index out of range");
    Matrix m(*field_, n2_, n3_);
    for (std::size_t j = 0; j < n2_; ++j)
        for (std::size_t k = 0; k < n3_; ++k) m(j, k) = (*this)(i, j, k);
    return m;
}

namespace {

void check_perm(const AxisPerm& s) {
    std::array<int, 3> seen{0, 0, 0};
    for (int v : s) {
        if (v < 0 || v > 2 || seen[v]++) throw std::invalid_argument("not a permutation of three axes");
    }
}

}  // namespace

AxisPerm inverse_perm(const AxisPerm& s) {
    check_perm(s);
    AxisPerm inv{};
    for (int a = 0; a < 3; ++a) inv[s[a]] = a;
    return inv;
}

Tensor3 sigma_transpose(const Tensor3& t, const AxisPerm& s) {
    check_perm(s);
    const auto n = t.dims();
    std::array<std::size_t, 3> m{};
    for (int a = 0; a < 3; ++a) m[s[a]] = n[a];
    Tensor3 out(t.field(), m[0], m[1], m[2]);
    std::array<std::size_t, 3> idx{};
    for (idx[0] = 0; idx[0] < m[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < m[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < m[2]; ++idx[2]) out(idx[0], idx[1], idx[2]) = t(idx[s[0]], idx[s[1]], idx[s[2]]);
    return out;
}

Tensor3 act(const Matrix& P, const Matrix& Q, const Matrix& R, const Tensor3& t) {
    const auto [n1, n2, n3] = t.dims();
    if (P.rows() != n1 || !P.is_square() || Q.rows() != n2 || !Q.is_square() || R.rows() != n3 || !R.is_square())
        throw std::invalid_argument("act: dimension mismatch");
    if (P.field_ptr() != t.field_ptr() || Q.field_ptr() != t.field_ptr() || R.field_ptr() != t.field_ptr())
        throw std::invalid_argument("act: operands over different fields");
    const Field& F = t.field();

    Tensor3 u(F, n1, n2, n3);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t l = 0; l < n3; ++l) {
            const Scalar r = R(k, l);
            if (r == 0) continue;
            const Scalar* mr = F.mul_row(r);
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) u(i, j, k) = F.add(u(i, j, k), mr[t(i, j, l)]);
        }
    Tensor3 out(F, n1, n2, n3);
    for (std::size_t k = 0; k < n3; ++k) {
        Matrix s = P.transpose() * u.frontal_slice(k) * Q;
        for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b) out(a, b, k) = s(a, b);
    }
    return out;
}

bool is_alternating(const Tensor3& t) {
    if (!t.is_cubical()) throw std::invalid_argument("is_alternating: tensor is not cubical");
    const Field& F = t.field();
    const std::size_t n = t.dim(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar v = t(i, j, k);
                if (i == j || i == k || j == k) {
                    if (v != 0) return false;
                    continue;
                }
                // the two adjacent transpositions generate S_3
                if (t(j, i, k) != F.neg(v) || t(i, k, j) != F.neg(v)) return false;
            }
    return true;
}

bool is_symmetric(const Tensor3& t) {
    if (!t.is_cubical()) throw std::invalid_argument("is_symmetric: tensor is not cubical");
    const std::size_t n = t.dim(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (t(j, i, k) != t(i, j, k) || t(i, k, j) != t(i, j, k)) return false;
    return true;
}

Tensor3 random_tensor(const Field& F, std::size_t n1, std::size_t n2, std::size_t n3, Rng& rng) {
    Tensor3 t(F, n1, n2, n3);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) t(i, j, k) = rng.element(F);
    return t;
}

}  // namespace formiso

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
#include "formiso/reduction.hpp"

#include <stdexcept>

#include "formiso/forms.hpp"

namespace formiso {

namespace {

void check_input(const MatrixTuple& a) {
    if (a.empty() || a.dim() == 0) throw std::invalid_argument("gadget needs n >= 1 and m >= 1");
    for (const Matrix& x : a)
        if (!x.is_alternating()) throw std::invalid_argument("gadget input must be alternating");
}

}  // namespace

Tensor3 build_tilde(const MatrixTuple& a) {
    check_input(a);
    const Field& F = a.field();
    const std::size_t n = a.dim(), m = a.size();
    Tensor3 t(F, n + m, n + m, n + m);
    for (std::size_t c = 0; c < m; ++c) {
        const Matrix& A = a[c];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar v = A(i, j);
                if (!v) continue;
                t(i, n + c, j) = F.add(t(i, n + c, j), v);
                t(n + c, j, i) = F.add(t(n + c, j, i), v);
                t(i, j, n + c) = F.sub(t(i, j, n + c), v);
            }
    }
    return t;
}

Tensor3 build_gadget(const Field& F, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw std::invalid_argument("gadget needs n >= 1 and m >= 1");
    const std::size_t b = n + 1, side = b * b;
    Tensor3 g(F, side, side, n + m);
    const Scalar minus_one = F.neg(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < b; ++s) {
            g(s, (i + 1) * b + s, i) = 1;
            g((i + 1) * b + s, s, i) = minus_one;
        }
    return g;
}

ReductionArtifacts build_hat(const MatrixTuple& a) {
    ReductionArtifacts out;
    out.tilde = build_tilde(a);
    out.input = a;
    out.n = a.dim();
    out.m = a.size();
    const Field& F = a.field();
    const std::size_t n = out.n, m = out.m, nm = n + m, side = out.side();
    out.gadget = build_gadget(F, n, m);
    const Tensor3& g = out.gadget;
    const Tensor3 g13 = sigma_transpose(g, {2, 1, 0});  // (n+m) x (n+1)^2 x (n+1)^2
    const Tensor3 g23 = sigma_transpose(g, {0, 2, 1});  // (n+1)^2 x (n+m) x (n+1)^2
    const std::size_t gs = side - nm;

    Tensor3 h(F, side, side, side);
    for (std::size_t k = 0; k < nm; ++k) {
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t j = 0; j < nm; ++j) h(i, j, k) = out.tilde(i, j, k);
        for (std::size_t i = 0; i < gs; ++i)
            for (std::size_t j = 0; j < gs; ++j) h(nm + i, nm + j, k) = F.neg(g(i, j, k));
    }
    for (std::size_t c = 0; c < gs; ++c) {
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t j = 0; j < gs; ++j) h(i, nm + j, nm + c) = g13(i, j, c);
        for (std::size_t i = 0; i < gs; ++i)
            for (std::size_t j = 0; j < nm; ++j) h(nm + i, j, nm + c) = g23(i, j, c);
    }
    out.hat = std::move(h);
    return out;
}

Matrix witness_from_pseudo_isometry(const Matrix& P, const Matrix& D) {
    if (!P.is_square() || !D.is_square() || P.field_ptr() != D.field_ptr())
        throw std::invalid_argument("witness needs square matrices over one field");
    const Field& F = P.field();
    const std::size_t n = P.rows();
    if (!try_inverse(D)) throw std::domain_error("coefficient matrix is singular");
    const Matrix pit = inverse(P).transpose();
    const Matrix id = Matrix::identity(F, n + 1);
    const Matrix tail = kron(pit, id);
    const Matrix dt = D.transpose();
    return block_diag({&P, &dt, &id, &tail});
}

bool verify_equivalence(const Tensor3& t1, const Tensor3& t2, const Matrix& S) {
    if (!t1.is_cubical() || !t2.is_cubical() || t1.dims() != t2.dims() || S.rows() != t1.dim(0) ||
        S.cols() != t1.dim(0))
        throw std::invalid_argument("dimension mismatch");
    if (!try_inverse(S)) return false;
    return trilinear_act(TrilinearForm(t1), S).tensor() == t2;
}

RankProfile rank_profile(const Tensor3& hat, std::size_t n, std::size_t m) {
    const std::size_t nm = n + m, side = nm + (n + 1) * (n + 1);
    if (!hat.is_cubical() || hat.dim(0) != side) throw std::invalid_argument("tensor side does not match n and m");
    RankProfile p;
    p.leading_in_range = p.middle_in_range = p.trailing_in_range = true;
    for (std::size_t k = 0; k < side; ++k) {
        const std::size_t rk = rank(hat.frontal_slice(k));
        p.ranks.push_back(rk);
        if (k < n) p.leading_in_range = p.leading_in_range && rk >= 2 * (n + 1) && rk <= 4 * n;
        else if (k < nm) p.middle_in_range = p.middle_in_range && rk <= n;
        else p.trailing_in_range = p.trailing_in_range && rk <= 2 * n;
    }
    return p;
}

}  // namespace formiso

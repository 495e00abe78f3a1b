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
#ifndef FORMISO_REDUCTION_HPP
#define FORMISO_REDUCTION_HPP

#include <cstddef>
#include <vector>

#include "formiso/linalg.hpp"
#include "formiso/tensor3.hpp"

namespace formiso {

// Gadget turning an alternating matrix tuple A in Lambda(n, q)^m into one
// alternating trilinear form of side N = n + m + (n+1)^2, such that tuples are
// pseudo-isometric exactly when their forms are equivalent.
//
// Index blocks of the big form: [0, n) the tuple's vector space, [n, n+m) the
// tuple index, [n+m, N) the gadget.

/// The (n+m)-cubical alternating tensor
///   t(x, y, z) = A(x1, z1, y2) + A(z1, y1, x2) - A(x1, y1, z2),
/// where v = (v1, v2) splits F^(n+m) as F^n + F^m and A(u, v, w) = sum_c w_c u^T A_c v.
Tensor3 build_tilde(const MatrixTuple& a);

/// (n+1)^2 x (n+1)^2 x (n+m) tensor. Frontal slice i < n is the block matrix
/// with I_{n+1} at block (0, i+1) and -I_{n+1} at block (i+1, 0); the rest are
/// zero.
Tensor3 build_gadget(const Field& F, std::size_t n, std::size_t m);

struct ReductionArtifacts {
    MatrixTuple input;
    Tensor3 tilde;
    Tensor3 gadget;
    Tensor3 hat;
    std::size_t n = 0, m = 0;
    std::size_t side() const noexcept { return n + m + (n + 1) * (n + 1); }
};

/// Frontal slices k < n+m are diag(tilde_k, -gadget_k). Slice n+m+c has the
/// (13)-transpose of the gadget in the top-right block and its (23)-transpose
/// in the bottom-left block. Throws std::invalid_argument unless `a` is a
/// non-empty alternating tuple.
ReductionArtifacts build_hat(const MatrixTuple& a);

/// S = diag(P, D^T, I_{n+1}, P^-T (x) I_{n+1}). When (P, D) is a
/// pseudo-isometry from A to B, i.e. P^T (sum_k D_{l,k} A_k) P = B_l, then
/// trilinear_act(hat(A), S) = hat(B). Throws std::domain_error for singular
/// input.
Matrix witness_from_pseudo_isometry(const Matrix& P, const Matrix& D);

/// True iff t2(u, v, w) = t1(S u, S v, S w) for all u, v, w.
bool verify_equivalence(const Tensor3& t1, const Tensor3& t2, const Matrix& S);

struct RankProfile {
    std::vector<std::size_t> ranks;  ///< every frontal slice, in order
    bool leading_in_range = false;   ///< first n in [2(n+1), 4n]
    bool middle_in_range = false;    ///< next m in [0, n]
    bool trailing_in_range = false;  ///< last (n+1)^2 in [0, 2n]
    bool ok() const noexcept { return leading_in_range && middle_in_range && trailing_in_range; }
};

RankProfile rank_profile(const Tensor3& hat, std::size_t n, std::size_t m);

}  // namespace formiso

#endif

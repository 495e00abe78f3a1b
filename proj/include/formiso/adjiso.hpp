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
#ifndef FORMISO_ADJISO_HPP
#define FORMISO_ADJISO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "formiso/forms.hpp"
#include "formiso/linalg.hpp"

namespace formiso {

/// Basis of Adj(C, D) = {(A, E) : A^T C_i = D_i E for all i}.
struct AdjSpace {
    std::size_t dim = 0;  ///< matrix size l
    std::vector<std::pair<Matrix, Matrix>> basis;
    std::size_t dimension() const noexcept { return basis.size(); }
};

/// Solves the 2 l^2-unknown linear system. adj_space(C, C) is Adj(C).
AdjSpace adj_space(const MatrixTuple& C, const MatrixTuple& D);
/// Dimension only; cheaper than building the basis matrices.
std::size_t adj_dimension(const MatrixTuple& C, const MatrixTuple& D);

enum class IsoVerdict { Equivalent, NotEquivalent, GenericityFailed };
const char* to_string(IsoVerdict v) noexcept;

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::NotEquivalent;
    /// Every witness found, in enumeration order. For isometries each R
    /// satisfies C_i = R^T D_i R.
    std::vector<Matrix> witnesses;
    std::size_t adj_dim = 0;
    std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kDefaultAdjBudget = std::uint64_t{1} << 20;

/// Iso(C, D) through Adj(C, D): enumerates all q^dim elements (lexicographic in
/// basis coordinates), keeps (A, E) with A E = I, and reports R = E after
/// re-checking C_i = R^T D_i R. GenericityFailed when q^dim > budget.
IsoResult iso_set(const MatrixTuple& C, const MatrixTuple& D, std::uint64_t budget = kDefaultAdjBudget);

// --- Brute-force oracles (tiny sizes only) -------------------------------------
//
// Each oracle walks GL(n, q) in the order of GlEnumerator and throws
// std::length_error if the enumeration exceeds `gl_budget`. Witnesses follow
// the solver conventions: the first argument equals the second one acted on
// by the witness.

/// All R with C_i = R^T D_i R.
IsoResult brute_isometry(const MatrixTuple& C, const MatrixTuple& D, std::uint64_t gl_budget = kDefaultGlBudget);
/// First T with f = g o T.
std::optional<Matrix> brute_poly_iso(const Poly& f, const Poly& g, std::uint64_t gl_budget = kDefaultGlBudget);
/// First T with phi = trilinear_act(psi, T).
std::optional<Matrix> brute_trilinear(const TrilinearForm& phi, const TrilinearForm& psi,
                                      std::uint64_t gl_budget = kDefaultGlBudget);
/// First T with a = algebra_act(b, T).
std::optional<Matrix> brute_algebra(const AlgebraSC& a, const AlgebraSC& b, std::uint64_t gl_budget = kDefaultGlBudget);

/// Pseudo-isometry from A to B: P in GL(n), D in GL(m) with
/// P^T (sum_k D_{l,k} A_k) P = B_l for every l.
struct PseudoIsometry {
    Matrix P, D;
};
/// Applies (P, D) to A.
MatrixTuple pseudo_isometry_image(const MatrixTuple& A, const Matrix& P, const Matrix& D);
std::optional<PseudoIsometry> brute_pseudo_isometry(const MatrixTuple& A, const MatrixTuple& B,
                                                    std::uint64_t gl_budget = kDefaultGlBudget);

}  // namespace formiso

#endif

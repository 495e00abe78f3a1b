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
#ifndef FORMISO_SOLVER_HPP
#define FORMISO_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "formiso/adjiso.hpp"
#include "formiso/forms.hpp"
#include "formiso/linalg.hpp"

namespace formiso {

enum class Verdict { Isomorphic, NotIsomorphic, GenericityFailed, BudgetExceeded };
const char* to_string(Verdict v) noexcept;

enum class ProblemKind { cubic, degree_d, inhomogeneous, trilinear, algebra };

/// Slice counts behind the asymptotic guarantees: 8 for odd-q forms, 20 in
/// characteristic 2, 4 for trilinear forms and algebras.
std::size_t default_r(ProblemKind kind, const Field& F) noexcept;

struct SolveConfig {
    std::size_t r = 2;
    std::uint64_t budget = kDefaultAdjBudget;  ///< cap on q^dim Adj per branch
    std::uint64_t t1_limit = 0;                ///< 0 means no limit
    std::uint64_t seed = 0;                    ///< cyclic start offset in the U-tuple stream
    unsigned jobs = 1;
};

struct SolveCounters {
    std::uint64_t t1_tried = 0;
    std::uint64_t u_tuples = 0;
    std::uint64_t probe_rejected = 0;     ///< pencil invariants differ
    std::uint64_t adj_dim_rejected = 0;   ///< dim Adj(C, D) != dim Adj(C)
    std::uint64_t iso_solves = 0;
    std::uint64_t genericity_branches = 0;
    std::uint64_t candidates_checked = 0; ///< T2 candidates tested against the inputs
    std::size_t adj_dim = 0;              ///< dim Adj(C) of the first input
    std::size_t max_adj_dim = 0;

    SolveCounters& operator+=(const SolveCounters& o) noexcept;
};

struct SolveReport {
    Verdict verdict = Verdict::NotIsomorphic;
    /// Present iff verdict == Isomorphic; satisfies the defining equation
    /// (f = g o T, phi = trilinear_act(psi, T), a = algebra_act(b, T)).
    std::optional<Matrix> witness;
    SolveCounters counters;
    double seconds = 0;
};

/// Every T1 = [U | V + U A] for U running over independent r-tuples (as
/// columns, lexicographic) and A over M(r x (n - r), q) (row-major
/// lexicographic). Together with T2 = diag(I_r, R) these cover GL(n, q).
class T1Enumerator {
   public:
    T1Enumerator(const Field& F, std::size_t n, std::size_t r);
    bool next(Matrix& out);
    /// Number of matrices the stream yields; throws std::overflow_error.
    std::uint64_t count() const;

   private:
    const Field* F_;
    std::size_t n_, r_;
    IndependentTuples tuples_;
    std::optional<ComplementEnumerator> comps_;
    Matrix u_;
};

/// Slices of the second input transformed by T1 = T0 [[I, A], [0, I]] with
/// T0 = [U | V]. Exposed so the fast path can be tested against the
/// reference slice operations.
class SliceEngine {
   public:
    virtual ~SliceEngine() = default;

    /// Fixes U (n x r, independent columns); V is its standard complement.
    void set_frame(const Matrix& u);
    /// Must be called once per A before slice().
    virtual void prepare(const Scalar* a) { (void)a; }
    /// Writes D_i (l x l, row-major) for the A given to prepare().
    void slice(std::size_t i, const Scalar* a, Scalar* out) const;
    /// All r slices for A (r x l, row-major) as a tuple.
    MatrixTuple slices(const Matrix& a);

    const Field& field() const noexcept { return *F_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t l() const noexcept { return n_ - r_; }
    const Matrix& frame() const noexcept { return t0_; }

   protected:
    SliceEngine(const Field& F, std::size_t n, std::size_t r, TupleShape out_shape);
    /// Compute the n x n bilinear matrices (standard coordinates) whose
    /// congruence by T1 gives the slices; called from set_frame.
    virtual void build_frame(const Matrix& t0, const Matrix& t0_inv) = 0;
    /// Stores frames_[i] = t0^T M t0.
    void store_frame(std::size_t i, const Matrix& m);

    const Field* F_;
    std::size_t n_, r_;
    TupleShape shape_;
    Matrix t0_;
    std::vector<std::vector<Scalar>> frames_;  // r matrices, n x n
};

std::unique_ptr<SliceEngine> make_poly_engine(const Poly& g, std::size_t r);
std::unique_ptr<SliceEngine> make_trilinear_engine(const TrilinearForm& psi, std::size_t r);
std::unique_ptr<SliceEngine> make_algebra_engine(const AlgebraSC& b, std::size_t r);

/// Homogeneous cubic forms; f = g o T on success.
SolveReport solve_cubic(const Poly& f, const Poly& g, const SolveConfig& cfg);
/// Homogeneous forms of degree d in {3, 4, 5}.
SolveReport solve_degree_d(const Poly& f, const Poly& g, unsigned d, const SolveConfig& cfg);
/// Polynomials of degree <= d; candidates from the degree-d pieces, checked on
/// every monomial.
SolveReport solve_inhomogeneous(const Poly& f, const Poly& g, unsigned d, const SolveConfig& cfg);
/// phi = trilinear_act(psi, T) on success.
SolveReport solve_trilinear(const TrilinearForm& phi, const TrilinearForm& psi, const SolveConfig& cfg);
/// a = algebra_act(b, T) on success.
SolveReport solve_algebra(const AlgebraSC& a, const AlgebraSC& b, const SolveConfig& cfg);

}  // namespace formiso

#endif

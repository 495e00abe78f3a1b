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
#ifndef FORMISO_LINALG_HPP
#define FORMISO_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "formiso/gfq.hpp"
#include "formiso/rng.hpp"

namespace formiso {

/// Dense row-major matrix over a finite field.
class Matrix {
   public:
    Matrix() = default;
    Matrix(const Field& F, std::size_t rows, std::size_t cols);
    Matrix(const Field& F, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
    /// Row-wise literal of field codes; every code must be < q.
    Matrix(const Field& F, std::initializer_list<std::initializer_list<unsigned>> rows);

    static Matrix identity(const Field& F, std::size_t n);

    const Field& field() const noexcept { return *field_; }
    const Field* field_ptr() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    std::span<const Scalar> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    const std::vector<Scalar>& entries() const noexcept { return data_; }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_zero() const noexcept;
    bool is_identity() const noexcept;
    bool is_symmetric() const noexcept;
    /// v^T A v = 0 for all v: zero diagonal and A^T = -A.
    bool is_alternating() const noexcept;

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

   private:
    const Field* field_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix scale(const Matrix& a, Scalar c);
/// A v for a vector of length a.cols().
std::vector<Scalar> mul_vec(const Matrix& a, std::span<const Scalar> v);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(std::initializer_list<const Matrix*> blocks);
/// Horizontal concatenation [a | b].
Matrix hcat(const Matrix& a, const Matrix& b);

struct Echelon {
    Matrix rref;
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

Echelon row_reduce(Matrix a);
std::size_t rank(const Matrix& a);
/// Columns form a basis of {x : a x = 0}; shape a.cols() x (a.cols() - rank).
Matrix kernel(const Matrix& a);
Scalar determinant(const Matrix& a);
/// Throws std::domain_error for singular or non-square input.
Matrix inverse(const Matrix& a);
std::optional<Matrix> try_inverse(const Matrix& a);

/// One solution of a x = b plus a kernel basis describing all solutions.
struct Solution {
    Matrix particular;  ///< a.cols() x 1
    Matrix kernel;      ///< a.cols() x k
};
/// b is a column vector; returns nullopt when the system is inconsistent.
std::optional<Solution> solve(const Matrix& a, const Matrix& b);

/// Unpacked Gaussian elimination paths; `rank` and `kernel` switch to the
/// bit-packed routines for q = 2. Both paths are exposed so they can be
/// compared.
std::size_t rank_dense(const Matrix& a);
Matrix kernel_dense(const Matrix& a);

namespace gf2 {
/// Bit-packed (64 columns per word) rank and kernel over F_2.
std::size_t rank(const Matrix& a);
Matrix kernel(const Matrix& a);
}  // namespace gf2

enum class TupleShape { general, symmetric, alternating };
const char* to_string(TupleShape s) noexcept;

/// m square matrices of a common size, tagged with a shape that every member
/// satisfies (checked on construction).
class MatrixTuple {
   public:
    MatrixTuple() = default;
    MatrixTuple(const Field& F, TupleShape shape, std::size_t dim, std::vector<Matrix> mats);
    /// Infers dim from the first matrix; `mats` must be non-empty.
    MatrixTuple(TupleShape shape, std::vector<Matrix> mats);

    const Field& field() const noexcept { return *field_; }
    TupleShape shape() const noexcept { return shape_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return mats_.size(); }
    bool empty() const noexcept { return mats_.empty(); }
    const Matrix& operator[](std::size_t i) const noexcept { return mats_[i]; }
    const std::vector<Matrix>& matrices() const noexcept { return mats_; }
    auto begin() const noexcept { return mats_.begin(); }
    auto end() const noexcept { return mats_.end(); }

    friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) noexcept {
        return a.field_ == b.field_ && a.dim_ == b.dim_ && a.mats_ == b.mats_;
    }

   private:
    const Field* field_ = nullptr;
    TupleShape shape_ = TupleShape::general;
    std::size_t dim_ = 0;
    std::vector<Matrix> mats_;
};

/// (R^T D_1 R, ..., R^T D_m R), keeping the shape tag.
MatrixTuple congruence(const MatrixTuple& d, const Matrix& r);

Matrix random_matrix(const Field& F, std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_invertible(const Field& F, std::size_t n, Rng& rng);
Matrix random_symmetric(const Field& F, std::size_t n, Rng& rng);
Matrix random_alternating(const Field& F, std::size_t n, Rng& rng);
MatrixTuple random_tuple(const Field& F, TupleShape shape, std::size_t dim, std::size_t m, Rng& rng);

// --- Enumerations ------------------------------------------------------------
//
// Vectors of F_q^n are indexed by integer codes sum_a v_a q^(n-1-a), so code
// order is lexicographic order of the entries. All streams below are
// deterministic.

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);
void decode_vector(const Field& F, std::uint64_t code, std::span<Scalar> out);
std::uint64_t encode_vector(const Field& F, std::span<const Scalar> v);

/// Ordered tuples (v_1, ..., v_k) of linearly independent vectors of F_q^n,
/// lexicographic in (code v_1, ..., code v_k).
class IndependentTuples {
   public:
    IndependentTuples(const Field& F, std::size_t n, std::size_t k);
    /// Advances to the next tuple; false once exhausted.
    bool next();
    /// Current tuple as the columns of an n x k matrix.
    Matrix as_columns() const;
    /// Current tuple as the rows of a k x n matrix.
    Matrix as_rows() const;
    std::uint64_t index() const noexcept { return index_; }

   private:
    bool advance(std::size_t depth);
    void extend_span(std::size_t depth);

    const Field* F_;
    std::size_t n_, k_;
    std::uint64_t qn_;
    std::vector<std::int64_t> codes_;
    std::vector<std::vector<std::uint64_t>> span_list_;  // span of the first d vectors
    std::vector<std::vector<char>> span_mask_;
    std::vector<Scalar> tmp_a_, tmp_b_;
    bool started_ = false, done_ = false;
    std::uint64_t index_ = 0;
};

inline constexpr std::uint64_t kDefaultGlBudget = std::uint64_t{1} << 24;

/// Every element of GL(n, q) exactly once, row-major lexicographic. Throws
/// std::length_error when q^(n^2) exceeds `budget`.
class GlEnumerator {
   public:
    GlEnumerator(const Field& F, std::size_t n, std::uint64_t budget = kDefaultGlBudget);
    bool next(Matrix& out);

   private:
    IndependentTuples rows_;
};

/// All complements of U = <columns of u> in F_q^n, as bases V + U A for a fixed
/// complement V and A running over M(r x (n-r), q) lexicographically.
/// Throws std::invalid_argument if the columns of u are dependent.
class ComplementEnumerator {
   public:
    explicit ComplementEnumerator(const Matrix& u);
    /// Writes the next basis (n x (n-r)) to `out`.
    bool next(Matrix& out);
    /// The fixed complement: standard basis vectors off the pivot rows of U.
    const Matrix& base_complement() const noexcept { return v_; }
    /// Coefficient matrix A of the most recent basis.
    const Matrix& coefficients() const noexcept { return a_; }
    std::uint64_t count() const noexcept { return total_; }

   private:
    Matrix u_, v_, a_;
    std::uint64_t next_index_ = 0, total_ = 0;
};

/// Standard complement of the column span of u (u must have independent
/// columns): e_j for every j that is not a pivot of u^T.
Matrix standard_complement(const Matrix& u);

/// Every d-dimensional subspace of F_q^n exactly once, as a d x n matrix in
/// reduced row echelon form.
class SubspaceEnumerator {
   public:
    SubspaceEnumerator(const Field& F, std::size_t n, std::size_t d);
    bool next(Matrix& out);

   private:
    bool next_pivots();
    void reset_free();

    const Field* F_;
    std::size_t n_, d_;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_;
    std::vector<Scalar> free_vals_;
    bool started_ = false, done_ = false;
};

/// Number of d-dimensional subspaces of F_q^n. Throws std::overflow_error if
/// the count does not fit 64 bits.
std::uint64_t gaussian_binomial(unsigned n, unsigned d, unsigned q);

/// |GL(n, q)| = prod_{i<n} (q^n - q^i).
std::uint64_t gl_order(unsigned n, unsigned q);

}  // namespace formiso

#endif

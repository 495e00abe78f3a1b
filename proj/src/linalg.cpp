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
#include "formiso/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace formiso {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
    if (a.field_ptr() != b.field_ptr()) throw std::invalid_argument(std::string(op) + ": operands over different fields");
}

}  // namespace

// --- Matrix -------------------------------------------------------------------

Matrix::Matrix(const Field& F, std::size_t rows, std::size_t cols)
    : field_(&F), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(const Field& F, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(&F), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match shape");
    for (Scalar s : data_)
        if (!F.contains(s)) throw std::invalid_argument("matrix entry outside the field");
}

Matrix::Matrix(const Field& F, std::initializer_list<std::initializer_list<unsigned>> rows)
    : field_(&F), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (unsigned c : r) {
            if (!F.contains(c)) throw std::invalid_argument("matrix entry outside the field");
            data_.push_back(static_cast<Scalar>(c));
        }
    }
}

Matrix Matrix::identity(const Field& F, std::size_t n) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(*field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix b(*field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require_same_field(*this, b, "set_block");
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("matrix block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

bool Matrix::is_identity() const noexcept {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool Matrix::is_symmetric() const noexcept {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool Matrix::is_alternating() const noexcept {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, i) != 0) return false;
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != field_->neg((*this)(j, i))) return false;
    }
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "multiply");
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    const Field& F = a.field();
    Matrix c(F, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Scalar s = a(i, k);
            if (s == 0) continue;
            const Scalar* ms = F.mul_row(s);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), ms[b(k, j)]);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    Matrix c(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "subtract");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("subtract: shape mismatch");
    Matrix c(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
    return c;
}

Matrix operator-(const Matrix& a) {
    Matrix c(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().neg(a(i, j));
    return c;
}

Matrix scale(const Matrix& a, Scalar s) {
    Matrix c(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(s, a(i, j));
    return c;
}

std::vector<Scalar> mul_vec(const Matrix& a, std::span<const Scalar> v) {
    if (v.size() != a.cols()) throw std::invalid_argument("mul_vec: length mismatch");
    const Field& F = a.field();
    std::vector<Scalar> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s = F.add(s, F.mul(a(i, j), v[j]));
        out[i] = s;
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "kron");
    const Field& F = a.field();
    Matrix c(F, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = F.mul(a(i, j), b(k, l));
    return c;
}

Matrix block_diag(std::initializer_list<const Matrix*> blocks) {
    if (blocks.size() == 0) throw std::invalid_argument("block_diag: no blocks");
    std::size_t r = 0, c = 0;
    for (const Matrix* m : blocks) {
        require_same_field(**blocks.begin(), *m, "block_diag");
        r += m->rows();
        c += m->cols();
    }
    Matrix out((*blocks.begin())->field(), r, c);
    r = c = 0;
    for (const Matrix* m : blocks) {
        out.set_block(r, c, *m);
        r += m->rows();
        c += m->cols();
    }
    return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "hcat");
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row count mismatch");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

// --- Elimination --------------------------------------------------------------

Echelon row_reduce(Matrix a) {
    const Field& F = a.field();
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Scalar* ms = F.mul_row(F.inv(a(r, c)));
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = ms[a(r, j)];
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Scalar* mf = F.mul_row(F.neg(a(i, c)));
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = F.add(a(i, j), mf[a(r, j)]);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.rref = std::move(a);
    return e;
}

namespace {

Matrix kernel_from_rref(const Echelon& e) {
    const Matrix& a = e.rref;
    const Field& F = a.field();
    std::vector<char> is_pivot(a.cols(), 0);
    for (std::size_t c : e.pivots) is_pivot[c] = 1;
    Matrix k(F, a.cols(), a.cols() - e.pivots.size());
    std::size_t col = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        k(f, col) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], col) = F.neg(a(r, f));
        ++col;
    }
    return k;
}

}  // namespace

std::size_t rank_dense(const Matrix& a) { return row_reduce(a).pivots.size(); }

Matrix kernel_dense(const Matrix& a) { return kernel_from_rref(row_reduce(a)); }

std::size_t rank(const Matrix& a) {
    if (a.field().q() == 2) return gf2::rank(a);
    return rank_dense(a);
}

Matrix kernel(const Matrix& a) {
    if (a.field().q() == 2) return gf2::kernel(a);
    return kernel_dense(a);
}

Scalar determinant(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    const Field& F = m.field();
    Matrix a(m);
    const std::size_t n = a.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, a(c, c));
        const Scalar inv = F.inv(a(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Scalar* mf = F.mul_row(F.neg(F.mul(a(i, c), inv)));
            for (std::size_t j = c; j < n; ++j) a(i, j) = F.add(a(i, j), mf[a(c, j)]);
        }
    }
    return det;
}

std::optional<Matrix> try_inverse(const Matrix& a) {
    if (!a.is_square()) return std::nullopt;
    const std::size_t n = a.rows();
    Echelon e = row_reduce(hcat(a, Matrix::identity(a.field(), n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    return e.rref.block(0, n, n, n);
}

Matrix inverse(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("inverse of non-square matrix");
    auto inv = try_inverse(a);
    if (!inv) throw std::domain_error("inverse of singular matrix");
    return *std::move(inv);
}

std::optional<Solution> solve(const Matrix& a, const Matrix& b) {
    if (b.cols() != 1 || b.rows() != a.rows()) throw std::invalid_argument("solve: right-hand side must be a column");
    Echelon e = row_reduce(hcat(a, b));
    const std::size_t n = a.cols();
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    Solution s{Matrix(a.field(), n, 1), Matrix()};
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular(e.pivots[r], 0) = e.rref(r, n);
    Echelon left{e.rref.block(0, 0, e.rref.rows(), n), e.pivots};
    s.kernel = kernel_from_rref(left);
    return s;
}

// --- Packed F_2 -------------------------------------------------------------------

namespace gf2 {

namespace {

struct Packed {
    std::size_t rows, cols, words;
    std::vector<std::uint64_t> bits;
    std::uint64_t* row(std::size_t i) { return bits.data() + i * words; }
    bool get(std::size_t i, std::size_t j) const { return (bits[i * words + j / 64] >> (j % 64)) & 1u; }
};

Packed pack(const Matrix& a) {
    if (a.field().q() != 2) throw std::invalid_argument("gf2 routine called over a field other than F_2");
    Packed p{a.rows(), a.cols(), (a.cols() + 63) / 64, {}};
    p.bits.assign(p.rows * p.words, 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j)) p.bits[i * p.words + j / 64] |= std::uint64_t{1} << (j % 64);
    return p;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> reduce(Packed& p) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < p.cols && r < p.rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t piv = r;
        while (piv < p.rows && !(p.row(piv)[w] & bit)) ++piv;
        if (piv == p.rows) continue;
        if (piv != r) std::swap_ranges(p.row(piv), p.row(piv) + p.words, p.row(r));
        const std::uint64_t* pr = p.row(r);
        for (std::size_t i = 0; i < p.rows; ++i) {
            if (i == r) continue;
            std::uint64_t* ri = p.row(i);
            if (!(ri[w] & bit)) continue;
            for (std::size_t k = w; k < p.words; ++k) ri[k] ^= pr[k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& a) {
    Packed p = pack(a);
    return reduce(p).size();
}

Matrix kernel(const Matrix& a) {
    Packed p = pack(a);
    auto pivots = reduce(p);
    std::vector<char> is_pivot(a.cols(), 0);
    for (std::size_t c : pivots) is_pivot[c] = 1;
    Matrix k(a.field(), a.cols(), a.cols() - pivots.size());
    std::size_t col = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        k(f, col) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (p.get(r, f)) k(pivots[r], col) = 1;
        ++col;
    }
    return k;
}

}  // namespace gf2

// --- Tuples -------------------------------------------------------------------

const char* to_string(TupleShape s) noexcept {
    switch (s) {
        case TupleShape::general: return "general";
        case TupleShape::symmetric: return "symmetric";
        case TupleShape::alternating: return "alternating";
    }
    return "?";
}

MatrixTuple::MatrixTuple(const Field& F, TupleShape shape, std::size_t dim, std::vector<Matrix> mats)
    : field_(&F), shape_(shape), dim_(dim), mats_(std::move(mats)) {
    for (const Matrix& m : mats_) {
        if (m.field_ptr() != field_) throw std::invalid_argument("matrix tuple mixes fields");
        if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("matrix tuple members must be square of a common size");
        if (shape_ == TupleShape::symmetric && !m.is_symmetric())
            throw std::invalid_argument("matrix tuple tagged symmetric has a non-symmetric member");
        if (shape_ == TupleShape::alternating && !m.is_alternating())
            throw std::invalid_argument("matrix tuple tagged alternating has a non-alternating member");
    }
}

namespace {

const Matrix& first_of(const std::vector<Matrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("empty matrix tuple needs an explicit field");
    return mats.front();
}

}  // namespace

MatrixTuple::MatrixTuple(TupleShape shape, std::vector<Matrix> mats)
    : field_(first_of(mats).field_ptr()), shape_(shape), dim_(mats.front().rows()) {
    *this = MatrixTuple(*field_, shape, dim_, std::move(mats));
}

MatrixTuple congruence(const MatrixTuple& d, const Matrix& r) {
    if (r.rows() != d.dim()) throw std::invalid_argument("congruence: shape mismatch");
    const Matrix rt = r.transpose();
    std::vector<Matrix> out;
    out.reserve(d.size());
    for (const Matrix& m : d) out.push_back(rt * m * r);
    return MatrixTuple(d.field(), d.shape(), r.cols(), std::move(out));
}

Matrix random_matrix(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(F, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.element(F);
    return m;
}

Matrix random_invertible(const Field& F, std::size_t n, Rng& rng) {
    for (;;) {
        Matrix m = random_matrix(F, n, n, rng);
        if (rank(m) == n) return m;
    }
}

Matrix random_symmetric(const Field& F, std::size_t n, Rng& rng) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.element(F);
    return m;
}

Matrix random_alternating(const Field& F, std::size_t n, Rng& rng) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = rng.element(F);
            m(j, i) = F.neg(m(i, j));
        }
    return m;
}

MatrixTuple random_tuple(const Field& F, TupleShape shape, std::size_t dim, std::size_t m, Rng& rng) {
    std::vector<Matrix> mats;
    mats.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        switch (shape) {
            case TupleShape::general: mats.push_back(random_matrix(F, dim, dim, rng)); break;
            case TupleShape::symmetric: mats.push_back(random_symmetric(F, dim, rng)); break;
            case TupleShape::alternating: mats.push_back(random_alternating(F, dim, rng)); break;
        }
    }
    return MatrixTuple(F, shape, dim, std::move(mats));
}

// --- Enumerations -----------------------------------------------------------------

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("power exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

void decode_vector(const Field& F, std::uint64_t code, std::span<Scalar> out) {
    for (std::size_t a = out.size(); a-- > 0;) {
        out[a] = static_cast<Scalar>(code % F.q());
        code /= F.q();
    }
}

std::uint64_t encode_vector(const Field& F, std::span<const Scalar> v) {
    std::uint64_t code = 0;
    for (Scalar s : v) code = code * F.q() + s;
    return code;
}

IndependentTuples::IndependentTuples(const Field& F, std::size_t n, std::size_t k)
    : F_(&F), n_(n), k_(k), qn_(checked_pow(F.q(), n)), codes_(k, -1), span_list_(k + 1), span_mask_(k + 1),
      tmp_a_(n), tmp_b_(n) {
    if (k > n) {
        done_ = true;
        return;
    }
    if (qn_ > (std::uint64_t{1} << 26)) throw std::length_error("vector space too large to enumerate");
    span_list_[0] = {0};
    span_mask_[0].assign(qn_, 0);
    span_mask_[0][0] = 1;
}

bool IndependentTuples::advance(std::size_t depth) {
    for (;;) {
        ++codes_[depth];
        if (static_cast<std::uint64_t>(codes_[depth]) >= qn_) return false;
        if (!span_mask_[depth][static_cast<std::size_t>(codes_[depth])]) return true;
    }
}

void IndependentTuples::extend_span(std::size_t depth) {
    const Field& F = *F_;
    auto& list = span_list_[depth + 1];
    auto& mask = span_mask_[depth + 1];
    list = span_list_[depth];
    mask = span_mask_[depth];
    decode_vector(F, static_cast<std::uint64_t>(codes_[depth]), tmp_b_);
    const std::size_t base = span_list_[depth].size();
    for (std::size_t s = 0; s < base; ++s) {
        decode_vector(F, span_list_[depth][s], tmp_a_);
        for (unsigned c = 1; c < F.q(); ++c) {
            std::uint64_t code = 0;
            for (std::size_t a = 0; a < n_; ++a)
                code = code * F.q() + F.add(tmp_a_[a], F.mul(static_cast<Scalar>(c), tmp_b_[a]));
            if (!mask[code]) {
                mask[code] = 1;
                list.push_back(code);
            }
        }
    }
}

bool IndependentTuples::next() {
    if (done_) return false;
    if (k_ == 0) {
        if (started_) return done_ = true, false;
        started_ = true;
        index_ = 0;
        return true;
    }
    std::size_t d;
    if (!started_) {
        started_ = true;
        d = 0;
    } else {
        d = k_ - 1;
        ++index_;
    }
    for (;;) {
        if (advance(d)) {
            if (d + 1 == k_) return true;
            extend_span(d);
            ++d;
            codes_[d] = -1;
        } else {
            if (d == 0) {
                done_ = true;
                return false;
            }
            --d;
        }
    }
}

Matrix IndependentTuples::as_columns() const {
    Matrix m(*F_, n_, k_);
    std::vector<Scalar> v(n_);
    for (std::size_t j = 0; j < k_; ++j) {
        decode_vector(*F_, static_cast<std::uint64_t>(codes_[j]), v);
        for (std::size_t i = 0; i < n_; ++i) m(i, j) = v[i];
    }
    return m;
}

Matrix IndependentTuples::as_rows() const {
    Matrix m(*F_, k_, n_);
    std::vector<Scalar> v(n_);
    for (std::size_t i = 0; i < k_; ++i) {
        decode_vector(*F_, static_cast<std::uint64_t>(codes_[i]), v);
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = v[j];
    }
    return m;
}

namespace {

std::size_t gl_guard(const Field& F, std::size_t n, std::uint64_t budget) {
    std::uint64_t total;
    try {
        total = checked_pow(F.q(), n * n);
    } catch (const std::overflow_error&) {
        throw std::length_error("GL enumeration exceeds budget");
    }
    if (total > budget) throw std::length_error("GL enumeration exceeds budget");
    return n;
}

}  // namespace

GlEnumerator::GlEnumerator(const Field& F, std::size_t n, std::uint64_t budget)
    : rows_(F, gl_guard(F, n, budget), n) {}

bool GlEnumerator::next(Matrix& out) {
    if (!rows_.next()) return false;
    out = rows_.as_rows();
    return true;
}

Matrix standard_complement(const Matrix& u) {
    Echelon e = row_reduce(u.transpose());
    if (e.pivots.size() != u.cols()) throw std::invalid_argument("columns are linearly dependent");
    std::vector<char> is_pivot(u.rows(), 0);
    for (std::size_t c : e.pivots) is_pivot[c] = 1;
    Matrix v(u.field(), u.rows(), u.rows() - u.cols());
    std::size_t col = 0;
    for (std::size_t j = 0; j < u.rows(); ++j)
        if (!is_pivot[j]) v(j, col++) = 1;
    return v;
}

ComplementEnumerator::ComplementEnumerator(const Matrix& u) : u_(u), v_(standard_complement(u)) {
    const std::size_t r = u.cols(), c = u.rows() - u.cols();
    a_ = Matrix(u.field(), r, c);
    total_ = checked_pow(u.field().q(), r * c);
}

bool ComplementEnumerator::next(Matrix& out) {
    if (next_index_ >= total_) return false;
    std::uint64_t code = next_index_++;
    const unsigned q = u_.field().q();
    const std::size_t cells = a_.rows() * a_.cols();
    for (std::size_t t = cells; t-- > 0;) {
        a_(t / a_.cols(), t % a_.cols()) = static_cast<Scalar>(code % q);
        code /= q;
    }
    out = v_ + u_ * a_;
    return true;
}

SubspaceEnumerator::SubspaceEnumerator(const Field& F, std::size_t n, std::size_t d) : F_(&F), n_(n), d_(d) {
    if (d > n) done_ = true;
}

void SubspaceEnumerator::reset_free() {
    free_.clear();
    std::vector<char> is_pivot(n_, 0);
    for (std::size_t p : pivots_) is_pivot[p] = 1;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = pivots_[i] + 1; j < n_; ++j)
            if (!is_pivot[j]) free_.emplace_back(i, j);
    free_vals_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::next_pivots() {
    // next d-combination of {0..n-1} in lexicographic order
    std::size_t i = d_;
    while (i > 0 && pivots_[i - 1] == n_ - d_ + i - 1) --i;
    if (i == 0) return false;
    ++pivots_[i - 1];
    for (std::size_t j = i; j < d_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    return true;
}

bool SubspaceEnumerator::next(Matrix& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        pivots_.resize(d_);
        for (std::size_t i = 0; i < d_; ++i) pivots_[i] = i;
        reset_free();
    } else {
        // odometer over the free entries, then advance the pivot pattern
        std::size_t t = free_vals_.size();
        bool carried = true;
        while (carried && t > 0) {
            --t;
            if (++free_vals_[t] == F_->q()) free_vals_[t] = 0;
            else carried = false;
        }
        if (carried) {
            if (!next_pivots()) {
                done_ = true;
                return false;
            }
            reset_free();
        }
    }
    out = Matrix(*F_, d_, n_);
    for (std::size_t i = 0; i < d_; ++i) out(i, pivots_[i]) = 1;
    for (std::size_t t = 0; t < free_.size(); ++t) out(free_[t].first, free_[t].second) = free_vals_[t];
    return true;
}

std::uint64_t gaussian_binomial(unsigned n, unsigned d, unsigned q) {
    if (d > n) return 0;
    // q-Pascal: [n,d] = [n-1,d-1] + q^d [n-1,d]
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (unsigned i = 0; i <= n; ++i) t[i][0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= std::min(i, d); ++j) {
            unsigned __int128 v = static_cast<unsigned __int128>(checked_pow(q, j)) * t[i - 1][j] + t[i - 1][j - 1];
            if (v > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("Gaussian binomial exceeds 64 bits");
            t[i][j] = static_cast<std::uint64_t>(v);
        }
    return t[n][d];
}

std::uint64_t gl_order(unsigned n, unsigned q) {
    const std::uint64_t qn = checked_pow(q, n);
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < n; ++i) {
        r *= qn - checked_pow(q, i);
        if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("|GL| exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace formiso

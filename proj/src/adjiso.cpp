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
#include "formiso/adjiso.hpp"

#include <stdexcept>

namespace formiso {

namespace {

void check_pair(const MatrixTuple& C, const MatrixTuple& D) {
    if (C.size() != D.size() || C.dim() != D.dim()) throw std::invalid_argument("tuples differ in length or size");
    if (&C.field() != &D.field()) throw std::invalid_argument("tuples over different fields");
}

// Rows: (i, a, b) for the (a, b) entry of A^T C_i - D_i E. Unknowns: A_{c,a} at
// c l + a, then E_{c,b} at l^2 + c l + b.
Matrix adj_system(const MatrixTuple& C, const MatrixTuple& D) {
    const Field& F = C.field();
    const std::size_t l = C.dim(), m = C.size(), l2 = l * l;
    Matrix sys(F, m * l2, 2 * l2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < l; ++a)
            for (std::size_t b = 0; b < l; ++b) {
                const std::size_t row = i * l2 + a * l + b;
                for (std::size_t c = 0; c < l; ++c) {
                    sys(row, c * l + a) = C[i](c, b);
                    sys(row, l2 + c * l + b) = F.neg(D[i](a, c));
                }
            }
    return sys;
}

}  // namespace

AdjSpace adj_space(const MatrixTuple& C, const MatrixTuple& D) {
    check_pair(C, D);
    const Field& F = C.field();
    const std::size_t l = C.dim(), l2 = l * l;
    AdjSpace out;
    out.dim = l;
    Matrix k;
    if (C.empty()) k = Matrix::identity(F, 2 * l2);
    else k = kernel(adj_system(C, D));
    for (std::size_t t = 0; t < k.cols(); ++t) {
        Matrix A(F, l, l), E(F, l, l);
        for (std::size_t c = 0; c < l; ++c)
            for (std::size_t x = 0; x < l; ++x) {
                A(c, x) = k(c * l + x, t);
                E(c, x) = k(l2 + c * l + x, t);
            }
        out.basis.emplace_back(std::move(A), std::move(E));
    }
    return out;
}

std::size_t adj_dimension(const MatrixTuple& C, const MatrixTuple& D) {
    check_pair(C, D);
    const std::size_t l2 = C.dim() * C.dim();
    if (C.empty()) return 2 * l2;
    return 2 * l2 - rank(adj_system(C, D));
}

const char* to_string(IsoVerdict v) noexcept {
    switch (v) {
        case IsoVerdict::Equivalent: return "Equivalent";
        case IsoVerdict::NotEquivalent: return "NotEquivalent";
        case IsoVerdict::GenericityFailed: return "GenericityFailed";
    }
    return "?";
}

IsoResult iso_set(const MatrixTuple& C, const MatrixTuple& D, std::uint64_t budget) {
    check_pair(C, D);
    const Field& F = C.field();
    const std::size_t l = C.dim();
    AdjSpace adj = adj_space(C, D);
    IsoResult res;
    res.adj_dim = adj.dimension();

    std::uint64_t total;
    try {
        total = checked_pow(F.q(), res.adj_dim);
    } catch (const std::overflow_error&) {
        res.verdict = IsoVerdict::GenericityFailed;
        return res;
    }
    if (total > budget) {
        res.verdict = IsoVerdict::GenericityFailed;
        return res;
    }

    const std::size_t dim = res.adj_dim;
    std::vector<Scalar> coords(dim, 0);
    Matrix A(F, l, l), E(F, l, l);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        decode_vector(F, idx, coords);
        ++res.candidates;
        A = Matrix(F, l, l);
        E = Matrix(F, l, l);
        for (std::size_t t = 0; t < dim; ++t) {
            const Scalar c = coords[t];
            if (!c) continue;
            const Scalar* mc = F.mul_row(c);
            const auto& [bA, bE] = adj.basis[t];
            for (std::size_t x = 0; x < l; ++x)
                for (std::size_t y = 0; y < l; ++y) {
                    A(x, y) = F.add(A(x, y), mc[bA(x, y)]);
                    E(x, y) = F.add(E(x, y), mc[bE(x, y)]);
                }
        }
        if (!(A * E).is_identity()) continue;
        if (congruence(D, E).matrices() == C.matrices())
            res.witnesses.push_back(E);
    }
    res.verdict = res.witnesses.empty() ? IsoVerdict::NotEquivalent : IsoVerdict::Equivalent;
    return res;
}

IsoResult brute_isometry(const MatrixTuple& C, const MatrixTuple& D, std::uint64_t gl_budget) {
    check_pair(C, D);
    IsoResult res;
    GlEnumerator gl(C.field(), C.dim(), gl_budget);
    Matrix R;
    while (gl.next(R)) {
        ++res.candidates;
        if (congruence(D, R).matrices() == C.matrices()) res.witnesses.push_back(R);
    }
    res.verdict = res.witnesses.empty() ? IsoVerdict::NotEquivalent : IsoVerdict::Equivalent;
    return res;
}

std::optional<Matrix> brute_poly_iso(const Poly& f, const Poly& g, std::uint64_t gl_budget) {
    if (f.n() != g.n() || f.field_ptr() != g.field_ptr()) throw std::invalid_argument("polynomials differ in size or field");
    GlEnumerator gl(f.field(), f.n(), gl_budget);
    Matrix T;
    while (gl.next(T))
        if (poly_act(g, T) == f) return T;
    return std::nullopt;
}

std::optional<Matrix> brute_trilinear(const TrilinearForm& phi, const TrilinearForm& psi, std::uint64_t gl_budget) {
    if (phi.n() != psi.n() || &phi.field() != &psi.field()) throw std::invalid_argument("forms differ in size or field");
    GlEnumerator gl(phi.field(), phi.n(), gl_budget);
    Matrix T;
    while (gl.next(T))
        if (trilinear_act(psi, T) == phi) return T;
    return std::nullopt;
}

std::optional<Matrix> brute_algebra(const AlgebraSC& a, const AlgebraSC& b, std::uint64_t gl_budget) {
    if (a.n() != b.n() || &a.field() != &b.field()) throw std::invalid_argument("algebras differ in size or field");
    GlEnumerator gl(a.field(), a.n(), gl_budget);
    Matrix T;
    while (gl.next(T))
        if (algebra_act(b, T) == a) return T;
    return std::nullopt;
}

MatrixTuple pseudo_isometry_image(const MatrixTuple& A, const Matrix& P, const Matrix& D) {
    const Field& F = A.field();
    const std::size_t m = A.size(), n = A.dim();
    if (P.rows() != n || !P.is_square() || D.rows() != m || !D.is_square())
        throw std::invalid_argument("pseudo-isometry: dimension mismatch");
    const Matrix Pt = P.transpose();
    std::vector<Matrix> out;
    out.reserve(m);
    for (std::size_t l = 0; l < m; ++l) {
        Matrix mix(F, n, n);
        for (std::size_t k = 0; k < m; ++k)
            if (D(l, k)) mix = mix + scale(A[k], D(l, k));
        out.push_back(Pt * mix * P);
    }
    return MatrixTuple(F, A.shape(), n, std::move(out));
}

std::optional<PseudoIsometry> brute_pseudo_isometry(const MatrixTuple& A, const MatrixTuple& B, std::uint64_t gl_budget) {
    check_pair(A, B);
    const Field& F = A.field();
    std::uint64_t outer = checked_pow(F.q(), A.size() * A.size());
    if (outer > gl_budget) throw std::length_error("pseudo-isometry enumeration exceeds budget");
    GlEnumerator gd(F, A.size(), gl_budget);
    Matrix D;
    while (gd.next(D)) {
        // mix first, then the remaining question is a plain isometry
        MatrixTuple mixed = pseudo_isometry_image(A, Matrix::identity(F, A.dim()), D);
        GlEnumerator gp(F, A.dim(), gl_budget / outer);
        Matrix P;
        while (gp.next(P))
            if (congruence(mixed, P).matrices() == B.matrices()) return PseudoIsometry{P, D};
    }
    return std::nullopt;
}

}  // namespace formiso

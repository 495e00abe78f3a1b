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
#include "formiso/forms.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace formiso {

unsigned degree(const Monomial& m) noexcept { return std::accumulate(m.begin(), m.end(), 0u); }

// --- Poly ---------------------------------------------------------------------

Poly::Poly(const Field& F, std::size_t n, unsigned d, bool homogeneous)
    : field_(&F), n_(n), d_(d), homogeneous_(homogeneous) {
    if (d > kMaxDegree) throw std::invalid_argument("degree bound " + std::to_string(d) + " exceeds 5");
    if (n == 0) throw std::invalid_argument("polynomial needs at least one variable");
}

void Poly::check(const Monomial& m) const {
    if (m.size() != n_) throw std::invalid_argument("monomial has the wrong number of variables");
    const unsigned deg = degree(m);
    if (deg > d_) throw std::invalid_argument("monomial exceeds the degree bound");
    if (homogeneous_ && deg != d_) throw std::invalid_argument("monomial degree differs from the homogeneous degree");
}

Scalar Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar{0} : it->second;
}

void Poly::set(const Monomial& m, Scalar c) {
    check(m);
    if (!field_->contains(c)) throw std::invalid_argument("coefficient outside the field");
    if (c == 0) terms_.erase(m);
    else terms_[m] = c;
}

void Poly::add_term(const Monomial& m, Scalar c) {
    if (c == 0) return;
    check(m);
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

Scalar Poly::evaluate(std::span<const Scalar> x) const {
    if (x.size() != n_) throw std::invalid_argument("evaluation point has the wrong length");
    const Field& F = *field_;
    Scalar sum = 0;
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < n_ && t; ++i)
            for (unsigned e = 0; e < m[i]; ++e) t = F.mul(t, x[i]);
        sum = F.add(sum, t);
    }
    return sum;
}

Poly Poly::homogeneous_part(unsigned k) const {
    Poly out(*field_, n_, k, true);
    for (const auto& [m, c] : terms_)
        if (degree(m) == k) out.terms_.emplace(m, c);
    return out;
}

Scalar Poly::constant_term() const { return coeff(Monomial(n_, 0)); }

Poly poly_act(const Poly& f, const Matrix& A) {
    if (A.rows() != f.n() || A.cols() != f.n()) throw std::invalid_argument("poly_act: dimension mismatch");
    if (A.field_ptr() != f.field_ptr()) throw std::invalid_argument("poly_act: operands over different fields");
    const Field& F = f.field();
    const std::size_t n = f.n();
    Poly out(F, n, f.degree_bound(), f.homogeneous());
    std::map<Monomial, Scalar> cur, next;
    for (const auto& [m, c] : f.terms()) {
        cur.clear();
        cur.emplace(Monomial(n, 0), c);
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = 0; e < m[i]; ++e) {
                // multiply by the linear form sum_j A_{i,j} x_j
                next.clear();
                for (const auto& [mm, cc] : cur)
                    for (std::size_t j = 0; j < n; ++j) {
                        if (A(i, j) == 0) continue;
                        Monomial m2 = mm;
                        ++m2[j];
                        Scalar& slot = next[m2];
                        slot = F.add(slot, F.mul(cc, A(i, j)));
                    }
                cur.swap(next);
            }
        for (const auto& [mm, cc] : cur) out.add_term(mm, cc);
    }
    return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned k) {
    std::vector<Monomial> out;
    Monomial m(n, 0);
    // recursive fill: exponent of x_i from high to low
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == n) {
            m[i] = static_cast<std::uint8_t>(left);
            out.push_back(m);
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            m[i] = static_cast<std::uint8_t>(e);
            self(self, i + 1, left - e);
        }
    };
    if (n > 0) rec(rec, 0, k);
    return out;
}

// --- Forms and algebras ---------------------------------------------------------

const char* to_string(FormTag t) noexcept {
    switch (t) {
        case FormTag::general: return "general";
        case FormTag::symmetric: return "symmetric";
        case FormTag::alternating: return "alternating";
    }
    return "?";
}

TrilinearForm::TrilinearForm(Tensor3 t, FormTag tag) : t_(std::move(t)), tag_(tag) {
    if (!t_.is_cubical()) throw std::invalid_argument("trilinear form tensor is not cubical");
    if (tag_ == FormTag::symmetric && !is_symmetric(t_)) throw std::invalid_argument("tensor tagged symmetric is not symmetric");
    if (tag_ == FormTag::alternating && !is_alternating(t_))
        throw std::invalid_argument("tensor tagged alternating is not alternating");
}

Scalar TrilinearForm::evaluate(std::span<const Scalar> u, std::span<const Scalar> v, std::span<const Scalar> w) const {
    const std::size_t n = this->n();
    if (u.size() != n || v.size() != n || w.size() != n) throw std::invalid_argument("evaluation vectors have the wrong length");
    const Field& F = field();
    Scalar s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!u[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!v[j]) continue;
            const Scalar uv = F.mul(u[i], v[j]);
            for (std::size_t k = 0; k < n; ++k) s = F.add(s, F.mul(F.mul(uv, w[k]), t_(i, j, k)));
        }
    }
    return s;
}

AlgebraSC::AlgebraSC(Tensor3 t) : t_(std::move(t)) {
    if (!t_.is_cubical()) throw std::invalid_argument("structure constant tensor is not cubical");
}

std::vector<Scalar> AlgebraSC::multiply(std::span<const Scalar> u, std::span<const Scalar> v) const {
    const std::size_t n = this->n();
    if (u.size() != n || v.size() != n) throw std::invalid_argument("algebra operands have the wrong length");
    const Field& F = field();
    std::vector<Scalar> out(n, 0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!u[i]) continue;
            for (std::size_t j = 0; j < n; ++j) out[k] = F.add(out[k], F.mul(F.mul(u[i], v[j]), t_(k, i, j)));
        }
    return out;
}

TrilinearForm cubic_to_symmetric_trilinear(const Poly& f) {
    const Field& F = f.field();
    if (F.p() == 2 || F.p() == 3) throw std::invalid_argument("cubic to trilinear needs characteristic at least 5");
    if (!f.homogeneous() || f.degree_bound() != 3) throw std::invalid_argument("input is not a cubic form");
    const std::size_t n = f.n();
    const Scalar third = F.inv(F.from_int(3)), sixth = F.inv(F.from_int(6));
    Tensor3 t(F, n, n, n);
    for (const auto& [m, c] : f.terms()) {
        std::array<std::size_t, 3> idx{};
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = 0; e < m[i]; ++e) idx[pos++] = i;
        const bool all_same = idx[0] == idx[2];
        const bool all_distinct = idx[0] != idx[1] && idx[1] != idx[2];
        const Scalar v = all_same ? c : F.mul(c, all_distinct ? sixth : third);
        std::array<std::size_t, 3> p = idx;
        std::sort(p.begin(), p.end());
        do t(p[0], p[1], p[2]) = v;
        while (std::next_permutation(p.begin(), p.end()));
    }
    return TrilinearForm(std::move(t), FormTag::symmetric);
}

std::vector<Poly> quad_slices(const Poly& f, std::size_t r) {
    const std::size_t n = f.n();
    if (r < 1 || r >= n) throw std::invalid_argument("slice count r must satisfy 1 <= r < n");
    const unsigned d = f.degree_bound();
    if (d < 2) throw std::invalid_argument("quadratic slices need degree at least 2");
    const std::size_t l = n - r;
    std::vector<Poly> out(r, Poly(f.field(), l, 2, true));
    Monomial m(n, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = j; k < l; ++k) {
                std::fill(m.begin(), m.end(), 0);
                m[i] = static_cast<std::uint8_t>(d - 2);
                ++m[r + j];
                ++m[r + k];
                const Scalar c = f.coeff(m);
                if (!c) continue;
                Monomial y(l, 0);
                ++y[j];
                ++y[k];
                out[i].set(y, c);
            }
    return out;
}

namespace {

void quad_check(const Poly& c) {
    if (!c.homogeneous() || c.degree_bound() != 2) throw std::invalid_argument("input is not a quadratic form");
}

// (j, k) with j <= k from a degree-2 exponent vector
std::pair<std::size_t, std::size_t> quad_indices(const Monomial& m) {
    std::size_t a = m.size(), b = m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 2) return {i, i};
        if (m[i] == 1) (a == m.size() ? a : b) = i;
    }
    return {a, b};
}

}  // namespace

Matrix quad_to_symmetric(const Poly& c) {
    quad_check(c);
    const Field& F = c.field();
    if (F.p() == 2) throw std::invalid_argument("symmetric encoding needs odd q");
    const Scalar half = F.inv(2);
    Matrix C(F, c.n(), c.n());
    for (const auto& [m, v] : c.terms()) {
        auto [j, k] = quad_indices(m);
        if (j == k) C(j, j) = v;
        else C(j, k) = C(k, j) = F.mul(v, half);
    }
    return C;
}

Matrix quad_to_alternating(const Poly& c) {
    quad_check(c);
    const Field& F = c.field();
    if (F.p() != 2) throw std::invalid_argument("alternating encoding needs characteristic 2");
    Matrix C(F, c.n(), c.n());
    for (const auto& [m, v] : c.terms()) {
        auto [j, k] = quad_indices(m);
        if (j != k) C(j, k) = C(k, j) = v;
    }
    return C;
}

MatrixTuple trilinear_slices(const TrilinearForm& phi, std::size_t r) {
    const std::size_t n = phi.n();
    if (r < 1 || r >= n) throw std::invalid_argument("slice count r must satisfy 1 <= r < n");
    const std::size_t l = n - r;
    std::vector<Matrix> out;
    out.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        Matrix C(phi.field(), l, l);
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < l; ++k) C(j, k) = phi(i, r + j, r + k);
        out.push_back(std::move(C));
    }
    return MatrixTuple(phi.field(), TupleShape::general, l, std::move(out));
}

TrilinearForm trilinear_act(const TrilinearForm& phi, const Matrix& T) {
    if (!try_inverse(T)) throw std::domain_error("trilinear_act: singular transformation");
    return TrilinearForm(act(T, T, T.transpose(), phi.tensor()), phi.tag());
}

AlgebraSC algebra_act(const AlgebraSC& a, const Matrix& T) {
    auto inv = try_inverse(T);
    if (!inv) throw std::domain_error("algebra_act: singular transformation");
    return AlgebraSC(act(inv->transpose(), T, T.transpose(), a.tensor()));
}

Poly random_poly(const Field& F, std::size_t n, unsigned d, bool homogeneous, Rng& rng) {
    Poly f(F, n, d, homogeneous);
    for (unsigned k = homogeneous ? d : 0; k <= d; ++k)
        for (const Monomial& m : monomials_of_degree(n, k)) f.set(m, rng.element(F));
    return f;
}

TrilinearForm random_trilinear(const Field& F, std::size_t n, FormTag tag, Rng& rng) {
    Tensor3 t(F, n, n, n);
    if (tag == FormTag::general) return TrilinearForm(random_tensor(F, n, n, n, rng), tag);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                if (tag == FormTag::alternating && (i == j || j == k)) continue;
                const Scalar v = rng.element(F);
                std::array<std::size_t, 3> p{i, j, k};
                // sign of the permutation taking (i,j,k) to p, tracked via inversions
                do {
                    int inv = (p[0] > p[1]) + (p[0] > p[2]) + (p[1] > p[2]);
                    t(p[0], p[1], p[2]) = (tag == FormTag::alternating && inv % 2) ? F.neg(v) : v;
                } while (std::next_permutation(p.begin(), p.end()));
            }
    return TrilinearForm(std::move(t), tag);
}

AlgebraSC random_algebra(const Field& F, std::size_t n, Rng& rng) { return AlgebraSC(random_tensor(F, n, n, n, rng)); }

}  // namespace formiso

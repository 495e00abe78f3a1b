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
#include "doctest.h"
#include "formiso/adjiso.hpp"
#include "formiso/solver.hpp"

using namespace formiso;

namespace {

Matrix t1_of(const Matrix& u, const Matrix& a) {
    const Field& F = u.field();
    const std::size_t n = u.rows(), r = u.cols();
    Matrix na = Matrix::identity(F, n);
    na.set_block(0, r, a);
    return hcat(u, standard_complement(u)) * na;
}

bool eq31_shape(const Matrix& m, std::size_t r) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (m(i, j) != (i == j ? 1 : 0)) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = r; j < m.cols(); ++j)
            if (m(i, j)) return false;
    return true;
}

MatrixTuple spec_form_slices(const Poly& h, std::size_t r) {
    const Field& F = h.field();
    std::vector<Matrix> out;
    for (const Poly& c : quad_slices(h, r)) out.push_back(F.is_char2() ? quad_to_alternating(c) : quad_to_symmetric(c));
    return MatrixTuple(F, TupleShape::general, h.n() - r, std::move(out));
}

bool same_slices(const MatrixTuple& a, const MatrixTuple& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

SolveConfig with_r(std::size_t r) {
    SolveConfig cfg;
    cfg.r = r;
    return cfg;
}

}  // namespace

TEST_CASE("T1 stream counts and coverage") {
    const Field& F2 = Field::get(2);
    T1Enumerator e(F2, 2, 1);
    CHECK(e.count() == 6);
    std::size_t seen = 0;
    Matrix t;
    while (e.next(t)) {
        CHECK(try_inverse(t).has_value());
        ++seen;
    }
    CHECK(seen == 6);

    T1Enumerator e3(Field::get(3), 3, 1);
    std::size_t c3 = 0;
    while (e3.next(t)) ++c3;
    CHECK(c3 == e3.count());
    CHECK(c3 == 26 * 9);

    Rng rng(41);
    std::vector<Matrix> all;
    T1Enumerator e4(F2, 4, 2);
    while (e4.next(t)) all.push_back(inverse(t));
    CHECK(all.size() == e4.count());
    for (int s = 0; s < 50; ++s) {
        const Matrix T = random_invertible(F2, 4, rng);
        bool hit = false;
        for (const Matrix& inv : all)
            if (eq31_shape(inv * T, 2)) {
                hit = true;
                break;
            }
        CHECK(hit);
    }
    CHECK_THROWS_AS(T1Enumerator(F2, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(T1Enumerator(F2, 3, 0), std::invalid_argument);
}

TEST_CASE("fast slices agree with transform-then-slice") {
    Rng rng(7);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const Field& F = Field::of_order(q);
        for (unsigned d : {3u, 4u}) {
            for (std::size_t r : {1u, 2u}) {
                const std::size_t n = 4;
                const Poly g = random_poly(F, n, d, true, rng);
                auto eng = make_poly_engine(g, r);
                for (int trial = 0; trial < 4; ++trial) {
                    Matrix u = random_matrix(F, n, r, rng);
                    if (rank(u) < r) continue;
                    const Matrix a = random_matrix(F, r, n - r, rng);
                    eng->set_frame(u);
                    const MatrixTuple fast = eng->slices(a);
                    const MatrixTuple ref = spec_form_slices(poly_act(g, t1_of(u, a)), r);
                    CHECK(same_slices(fast, ref));
                }
            }
        }
        const std::size_t n = 4, r = 2;
        const TrilinearForm psi = random_trilinear(F, n, FormTag::general, rng);
        const AlgebraSC b = random_algebra(F, n, rng);
        auto te = make_trilinear_engine(psi, r);
        auto ae = make_algebra_engine(b, r);
        for (int trial = 0; trial < 4; ++trial) {
            Matrix u = random_matrix(F, n, r, rng);
            if (rank(u) < r) continue;
            const Matrix a = random_matrix(F, r, n - r, rng);
            const Matrix t1 = t1_of(u, a);
            te->set_frame(u);
            ae->set_frame(u);
            CHECK(same_slices(te->slices(a), trilinear_slices(trilinear_act(psi, t1), r)));
            CHECK(same_slices(ae->slices(a), trilinear_slices(TrilinearForm(algebra_act(b, t1).tensor()), r)));
        }
    }
}

TEST_CASE("identical inputs are recognised") {
    Rng rng(1);
    const Field& F3 = Field::get(3);
    const Poly f = random_poly(F3, 4, 3, true, rng);
    const SolveReport rep = solve_cubic(f, f, with_r(2));
    REQUIRE(rep.verdict == Verdict::Isomorphic);
    CHECK(poly_act(f, *rep.witness) == f);

    const TrilinearForm phi = random_trilinear(F3, 4, FormTag::general, rng);
    CHECK(solve_trilinear(phi, phi, with_r(2)).verdict == Verdict::Isomorphic);
    const AlgebraSC a = random_algebra(F3, 4, rng);
    CHECK(solve_algebra(a, a, with_r(2)).verdict == Verdict::Isomorphic);
}

TEST_CASE("cubic key recovery round trips") {
    Rng rng(11);
    for (unsigned q : {2u, 3u, 5u}) {
        const Field& F = Field::of_order(q);
        const std::size_t n = q == 5 ? 3 : 4;
        const Poly f = random_poly(F, n, 3, true, rng);
        const Matrix A = random_invertible(F, n, rng);
        const Poly g = poly_act(f, A);
        const SolveReport rep = solve_cubic(f, g, with_r(q == 2 ? 1 : 2));
        INFO("q = " << q);
        CHECK(rep.verdict != Verdict::NotIsomorphic);
        if (rep.verdict == Verdict::Isomorphic) CHECK(poly_act(g, *rep.witness) == f);
    }
}

TEST_CASE("quartic and inhomogeneous round trips") {
    Rng rng(12);
    const Field& F3 = Field::get(3);
    const Poly f = random_poly(F3, 4, 4, true, rng);
    const Matrix A = random_invertible(F3, 4, rng);
    const Poly g = poly_act(f, A);
    const SolveReport rep = solve_degree_d(f, g, 4, with_r(2));
    REQUIRE(rep.verdict == Verdict::Isomorphic);
    CHECK(poly_act(g, *rep.witness) == f);

    const Poly h = random_poly(F3, 3, 3, false, rng);
    const Matrix B = random_invertible(F3, 3, rng);
    const Poly k = poly_act(h, B);
    const SolveReport rep2 = solve_inhomogeneous(h, k, 3, with_r(2));
    REQUIRE(rep2.verdict == Verdict::Isomorphic);
    CHECK(poly_act(k, *rep2.witness) == h);
    CHECK(solve_inhomogeneous(h, h, 3, with_r(2)).verdict == Verdict::Isomorphic);

    Poly h2 = h;
    h2.set(Monomial(3, 0), F3.add(h.constant_term(), 1));
    CHECK(solve_inhomogeneous(h, h2, 3, with_r(2)).verdict == Verdict::NotIsomorphic);
}

TEST_CASE("non-isomorphic forms") {
    const Field& F5 = Field::get(5);
    Poly f(F5, 3, 3), g(F5, 3, 3);
    f.set({3, 0, 0}, 1);
    g.set({3, 0, 0}, 1);
    g.set({0, 3, 0}, 1);
    CHECK(solve_cubic(f, g, with_r(2)).verdict == Verdict::NotIsomorphic);
    CHECK_FALSE(brute_poly_iso(f, g).has_value());

    const Field& F3 = Field::get(3);
    Poly p(F3, 2, 4), s(F3, 2, 4);
    p.set({4, 0}, 1);
    s.set({4, 0}, 1);
    s.set({0, 4}, 1);
    CHECK(solve_degree_d(p, s, 4, with_r(1)).verdict == Verdict::NotIsomorphic);
    CHECK_FALSE(brute_poly_iso(p, s).has_value());
}

TEST_CASE("solver agrees with brute force on small cubics") {
    Rng rng(5);
    for (unsigned q : {2u, 3u}) {
        const Field& F = Field::of_order(q);
        for (int trial = 0; trial < 6; ++trial) {
            const Poly f = random_poly(F, 3, 3, true, rng);
            Poly g = random_poly(F, 3, 3, true, rng);
            if (trial % 2 == 0) g = poly_act(f, random_invertible(F, 3, rng));
            const SolveReport rep = solve_cubic(f, g, with_r(1));
            const bool brute = brute_poly_iso(f, g).has_value();
            INFO("q = " << q << " trial " << trial);
            if (rep.verdict == Verdict::Isomorphic) {
                CHECK(brute);
                CHECK(poly_act(g, *rep.witness) == f);
            } else if (rep.verdict == Verdict::NotIsomorphic) {
                CHECK_FALSE(brute);
            }
        }
    }
}

TEST_CASE("trilinear and algebra round trips") {
    Rng rng(21);
    const Field& F2 = Field::get(2);
    const TrilinearForm phi = random_trilinear(F2, 5, FormTag::general, rng);
    const TrilinearForm psi = trilinear_act(phi, random_invertible(F2, 5, rng));
    const SolveReport rep = solve_trilinear(phi, psi, with_r(2));
    REQUIRE(rep.verdict == Verdict::Isomorphic);
    CHECK(trilinear_act(psi, *rep.witness) == phi);

    const Field& F3 = Field::get(3);
    const AlgebraSC a = random_algebra(F3, 4, rng);
    const AlgebraSC b = algebra_act(a, random_invertible(F3, 4, rng));
    const SolveReport rep2 = solve_algebra(a, b, with_r(2));
    REQUIRE(rep2.verdict == Verdict::Isomorphic);
    CHECK(algebra_act(b, *rep2.witness) == a);
}

TEST_CASE("small non-equivalent trilinear and algebra pairs") {
    Rng rng(22);
    const Field& F2 = Field::get(2);
    int seen = 0;
    for (int trial = 0; trial < 30 && seen < 3; ++trial) {
        const TrilinearForm phi = random_trilinear(F2, 2, FormTag::general, rng);
        const TrilinearForm psi = random_trilinear(F2, 2, FormTag::general, rng);
        if (brute_trilinear(phi, psi)) continue;
        ++seen;
        CHECK(solve_trilinear(phi, psi, with_r(1)).verdict == Verdict::NotIsomorphic);
    }
    CHECK(seen == 3);

    // zero product against e1 * e1 = e2
    const Field& F3 = Field::get(3);
    Tensor3 zero(F3, 2, 2, 2), sq(F3, 2, 2, 2);
    sq(1, 0, 0) = 1;
    const AlgebraSC a(zero), b(sq);
    CHECK_FALSE(brute_algebra(a, b).has_value());
    CHECK(solve_algebra(a, b, with_r(1)).verdict == Verdict::NotIsomorphic);
}

TEST_CASE("limits, seeds and workers") {
    Rng rng(31);
    const Field& F3 = Field::get(3);
    const Poly f = random_poly(F3, 4, 3, true, rng);
    const Poly g = poly_act(f, random_invertible(F3, 4, rng));
    SolveConfig cfg = with_r(2);
    cfg.t1_limit = 1;
    const SolveReport cut = solve_cubic(f, g, cfg);
    CHECK((cut.verdict == Verdict::BudgetExceeded || cut.verdict == Verdict::Isomorphic));
    CHECK(cut.counters.t1_tried <= 1);

    cfg.t1_limit = 0;
    cfg.seed = 12345;
    const SolveReport a = solve_cubic(f, g, cfg);
    const SolveReport b = solve_cubic(f, g, cfg);
    REQUIRE(a.verdict == Verdict::Isomorphic);
    CHECK(*a.witness == *b.witness);
    CHECK(a.counters.t1_tried == b.counters.t1_tried);

    cfg.jobs = 3;
    const SolveReport par = solve_cubic(f, g, cfg);
    REQUIRE(par.verdict == Verdict::Isomorphic);
    CHECK(poly_act(g, *par.witness) == f);

    Poly other = random_poly(F3, 3, 3, true, rng);
    CHECK_THROWS_AS(solve_cubic(f, other, cfg), std::invalid_argument);
    CHECK_THROWS_AS(solve_cubic(f, g, with_r(4)), std::invalid_argument);
    CHECK_THROWS_AS(solve_degree_d(f, g, 4, cfg), std::invalid_argument);
}

TEST_CASE("defaults") {
    CHECK(default_r(ProblemKind::cubic, Field::get(3)) == 8);
    CHECK(default_r(ProblemKind::cubic, Field::get(2, 2)) == 20);
    CHECK(default_r(ProblemKind::trilinear, Field::get(5)) == 4);
    CHECK(std::string(to_string(Verdict::GenericityFailed)) == "GenericityFailed");
}

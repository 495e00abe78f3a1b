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
#include "formiso/forms.hpp"
#include "formiso/io.hpp"
#include "formiso/reduction.hpp"

using namespace formiso;

namespace {

MatrixTuple running_tuple(const Field& F) {
    return MatrixTuple(F, TupleShape::alternating, 2, {Matrix(F, {{0, 1}, {F.neg(1), 0}})});
}

MatrixTuple random_alt_tuple(const Field& F, std::size_t n, std::size_t m, Rng& rng) {
    return random_tuple(F, TupleShape::alternating, n, m, rng);
}

}  // namespace

TEST_CASE("tilde of the running example") {
    const Field& F3 = Field::get(3);
    const Tensor3 t = build_tilde(running_tuple(F3));
    CHECK(t.dims() == std::array<std::size_t, 3>{3, 3, 3});
    // nonzero entries (1-based): a_{2,3,1} = -1, a_{3,2,1} = 1, a_{1,3,2} = 1,
    // a_{3,1,2} = -1, a_{1,2,3} = -1, a_{2,1,3} = 1
    Tensor3 expect(F3, 3, 3, 3);
    expect(1, 2, 0) = 2;
    expect(2, 1, 0) = 1;
    expect(0, 2, 1) = 1;
    expect(2, 0, 1) = 2;
    expect(0, 1, 2) = 2;
    expect(1, 0, 2) = 1;
    CHECK(t == expect);
    CHECK(is_alternating(t));
}

TEST_CASE("tilde is alternating") {
    Rng rng(2);
    for (unsigned q : {2u, 3u, 5u})
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t m = 1; m <= 2; ++m) {
                const Field& F = Field::of_order(q);
                CHECK(is_alternating(build_tilde(random_alt_tuple(F, n, m, rng))));
                MatrixTuple zero(F, TupleShape::alternating, n, std::vector<Matrix>(m, Matrix(F, n, n)));
                CHECK(build_tilde(zero).is_zero());
            }
    const Field& F3 = Field::get(3);
    CHECK_THROWS_AS(build_tilde(MatrixTuple(F3, TupleShape::general, 2, {Matrix(F3, {{1, 0}, {0, 0}})})),
                    std::invalid_argument);
}

TEST_CASE("gadget slices") {
    const Field& F3 = Field::get(3);
    const Tensor3 g = build_gadget(F3, 2, 1);
    CHECK(g.dims() == std::array<std::size_t, 3>{9, 9, 3});
    const Matrix s0 = g.frontal_slice(0);
    const Matrix I3 = Matrix::identity(F3, 3);
    CHECK(s0.block(0, 3, 3, 3) == I3);
    CHECK(s0.block(3, 0, 3, 3) == -I3);
    Matrix rest = s0;
    rest.set_block(0, 3, Matrix(F3, 3, 3));
    rest.set_block(3, 0, Matrix(F3, 3, 3));
    CHECK(rest.is_zero());
    CHECK(g.frontal_slice(1).block(0, 6, 3, 3) == I3);
    CHECK(g.frontal_slice(2).is_zero());
    for (std::size_t n = 1; n <= 4; ++n) {
        const Tensor3 gn = build_gadget(F3, n, 2);
        for (std::size_t i = 0; i < n; ++i) CHECK(rank(gn.frontal_slice(i)) == 2 * (n + 1));
        for (std::size_t i = n; i < n + 2; ++i) CHECK(gn.frontal_slice(i).is_zero());
    }
}

TEST_CASE("hat is alternating with the expected side") {
    Rng rng(4);
    const Field& F3 = Field::get(3);
    const ReductionArtifacts r = build_hat(running_tuple(F3));
    CHECK(r.side() == 12);
    CHECK(r.hat.dims() == std::array<std::size_t, 3>{12, 12, 12});
    CHECK(is_alternating(r.hat));
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t m = 1; m <= 2; ++m)
                CHECK(is_alternating(build_hat(random_alt_tuple(Field::of_order(q), n, m, rng)).hat));
}

TEST_CASE("hat reproduces the printed running example in characteristic two") {
    const Instance golden = read_instance(std::string(FORMISO_TEST_DATA) + "/gadget_running_example_slices.txt");
    const Tensor3& printed = std::get<Tensor3>(golden.value);
    const Field& F2 = Field::get(2);
    const Tensor3 hat = build_hat(running_tuple(F2)).hat;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j) CHECK(hat(i, j, k) == (printed(i, j, k) ? 1 : 0));
}

TEST_CASE("witness direction on the smallest instance") {
    // n = m = 1: the tuple is zero, so every (p, d) is a pseudo-isometry and
    // only the gadget block constrains the witness.
    const Field& F5 = Field::get(5);
    const MatrixTuple a(F5, TupleShape::alternating, 1, {Matrix(F5, 1, 1)});
    const Tensor3 hat = build_hat(a).hat;
    int pinned = 0, flipped = 0;
    for (unsigned p = 1; p < 5; ++p)
        for (unsigned d = 1; d < 5; ++d) {
            const Matrix P(F5, {{p}}), D(F5, {{d}});
            const Matrix S = witness_from_pseudo_isometry(P, D);
            pinned += verify_equivalence(hat, hat, S);
            // tail block P^T instead of P^-T
            Matrix alt = S;
            for (std::size_t s = 4; s < 6; ++s) alt(s, s) = static_cast<Scalar>(p);
            flipped += verify_equivalence(hat, hat, alt);
        }
    CHECK(pinned == 16);
    CHECK(flipped == 8);  // only p = +-1 survive the wrong tail
}

TEST_CASE("witness sends hat(A) to hat(B)") {
    Rng rng(9);
    for (unsigned q : {2u, 3u})
        for (int trial = 0; trial < 10; ++trial) {
            const Field& F = Field::of_order(q);
            const std::size_t n = 1 + trial % 3, m = 1 + trial % 2;
            const MatrixTuple A = random_alt_tuple(F, n, m, rng);
            const Matrix P = random_invertible(F, n, rng), D = random_invertible(F, m, rng);
            const MatrixTuple B = pseudo_isometry_image(A, P, D);
            const Matrix S = witness_from_pseudo_isometry(P, D);
            const Tensor3 ha = build_hat(A).hat, hb = build_hat(B).hat;
            CHECK(verify_equivalence(ha, hb, S));
        }
    const Field& F3 = Field::get(3);
    const MatrixTuple A = running_tuple(F3);
    const Matrix S = witness_from_pseudo_isometry(Matrix::identity(F3, 2), Matrix::identity(F3, 1));
    CHECK(S.is_identity());
    CHECK_THROWS_AS(witness_from_pseudo_isometry(Matrix::identity(F3, 2), Matrix(F3, 1, 1)), std::domain_error);
}

TEST_CASE("verify_equivalence basics") {
    Rng rng(12);
    const Field& F3 = Field::get(3);
    const Tensor3 t = random_tensor(F3, 4, 4, 4, rng);
    CHECK(verify_equivalence(t, t, Matrix::identity(F3, 4)));
    Matrix perm(F3, 4, 4);
    const std::size_t sigma[4] = {2, 0, 3, 1};
    for (std::size_t i = 0; i < 4; ++i) perm(i, sigma[i]) = 1;
    Tensor3 relabeled(F3, 4, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) relabeled(i, j, k) = t(sigma[i], sigma[j], sigma[k]);
    CHECK(verify_equivalence(t, relabeled, perm.transpose()));
    CHECK_THROWS_AS(verify_equivalence(t, t, Matrix::identity(F3, 3)), std::invalid_argument);
}

TEST_CASE("rank profile") {
    Rng rng(13);
    const Field& F3 = Field::get(3);
    const RankProfile p = rank_profile(build_hat(running_tuple(F3)).hat, 2, 1);
    REQUIRE(p.ranks.size() == 12);
    CHECK(p.ranks[0] >= 6);
    CHECK(p.ranks[0] <= 8);
    CHECK(p.ranks[1] >= 6);
    CHECK(p.ranks[1] <= 8);
    CHECK(p.ranks[2] <= 2);
    CHECK(p.ok());
    for (std::size_t n = 1; n <= 3; ++n) {
        MatrixTuple zero(F3, TupleShape::alternating, n, {Matrix(F3, n, n), Matrix(F3, n, n)});
        const RankProfile z = rank_profile(build_hat(zero).hat, n, 2);
        for (std::size_t i = 0; i < n; ++i) CHECK(z.ranks[i] == 2 * (n + 1));
        CHECK(z.ok());
        for (unsigned q : {2u, 3u, 5u}) {
            const Field& F = Field::of_order(q);
            CHECK(rank_profile(build_hat(random_alt_tuple(F, n, 2, rng)).hat, n, 2).ok());
        }
    }
    CHECK_THROWS_AS(rank_profile(Tensor3(F3, 5, 5, 5), 2, 1), std::invalid_argument);
}

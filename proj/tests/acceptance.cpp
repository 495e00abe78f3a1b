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
// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Optional arguments select criteria by name.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "formiso/adjiso.hpp"
#include "formiso/forms.hpp"
#include "formiso/io.hpp"
#include "formiso/reduction.hpp"
#include "formiso/solver.hpp"
#include "formiso/stats.hpp"

using namespace formiso;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

// --- shared helpers -----------------------------------------------------------------

std::vector<std::vector<Scalar>> all_points(const Field& F, std::size_t n) {
    std::vector<std::vector<Scalar>> pts;
    const std::uint64_t total = checked_pow(F.q(), n);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<Scalar> v(n);
        decode_vector(F, c, v);
        pts.push_back(std::move(v));
    }
    return pts;
}

// f(x) = g(T x) at every point, independent of symbolic substitution.
bool poly_witness_ok(const Poly& f, const Poly& g, const Matrix& T) {
    if (!try_inverse(T)) return false;
    for (const auto& x : all_points(f.field(), f.n()))
        if (f.evaluate(x) != g.evaluate(mul_vec(T, x))) return false;
    return true;
}

bool trilinear_witness_ok(const TrilinearForm& phi, const TrilinearForm& psi, const Matrix& T) {
    if (!try_inverse(T)) return false;
    const std::size_t n = phi.n();
    std::vector<Matrix> cols;
    for (std::size_t a = 0; a < n; ++a) cols.push_back(T.column(a));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (phi(a, b, c) != psi.evaluate(cols[a].entries(), cols[b].entries(), cols[c].entries())) return false;
    return true;
}

// T a(e_i, e_j) = b(T e_i, T e_j), written out with the structure constants.
bool algebra_witness_ok(const AlgebraSC& a, const AlgebraSC& b, const Matrix& T) {
    if (!try_inverse(T)) return false;
    const Field& F = a.field();
    const std::size_t n = a.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::vector<Scalar> lhs = mul_vec(T, a.multiply(Matrix::identity(F, n).column(i).entries(),
                                                                  Matrix::identity(F, n).column(j).entries()));
            const std::vector<Scalar> rhs = b.multiply(T.column(i).entries(), T.column(j).entries());
            if (lhs != rhs) return false;
        }
    return true;
}

SolveConfig config(std::size_t r, std::uint64_t t1_limit = 0, std::uint64_t seed = 0, unsigned jobs = 1) {
    SolveConfig c;
    c.r = r;
    c.t1_limit = t1_limit;
    c.seed = seed;
    c.jobs = jobs;
    return c;
}

// --- soundness -----------------------------------------------------------------------

Outcome soundness() {
    std::size_t runs = 0, isomorphic = 0, bad = 0, missed = 0;
    Rng rng(1001);

    auto poly_run = [&](const Poly& f, const Poly& g, const SolveReport& rep, bool known_iso) {
        ++runs;
        if (rep.verdict == Verdict::Isomorphic) {
            ++isomorphic;
            if (!rep.witness || !poly_witness_ok(f, g, *rep.witness)) ++bad;
        } else if (known_iso && rep.verdict == Verdict::NotIsomorphic) {
            ++missed;
        }
    };
    auto tri_run = [&](const TrilinearForm& phi, const TrilinearForm& psi, const SolveReport& rep, bool known_iso) {
        ++runs;
        if (rep.verdict == Verdict::Isomorphic) {
            ++isomorphic;
            if (!rep.witness || !trilinear_witness_ok(phi, psi, *rep.witness)) ++bad;
        } else if (known_iso && rep.verdict == Verdict::NotIsomorphic) {
            ++missed;
        }
    };
    auto alg_run = [&](const AlgebraSC& a, const AlgebraSC& b, const SolveReport& rep, bool known_iso) {
        ++runs;
        if (rep.verdict == Verdict::Isomorphic) {
            ++isomorphic;
            if (!rep.witness || !algebra_witness_ok(a, b, *rep.witness)) ++bad;
        } else if (known_iso && rep.verdict == Verdict::NotIsomorphic) {
            ++missed;
        }
    };

    // key pairs and random pairs of cubic forms
    for (unsigned q : {2u, 3u, 5u})
        for (std::size_t r : {1u, 2u})
            for (int s = 0; s < 20; ++s) {
                const Field& F = Field::of_order(q);
                const Poly f = random_poly(F, 3, 3, true, rng);
                const Poly g = poly_act(f, random_invertible(F, 3, rng));
                poly_run(f, g, solve_cubic(f, g, config(r, 0, s)), true);
            }
    for (unsigned q : {2u, 3u})
        for (int s = 0; s < 15; ++s) {
            const Field& F = Field::of_order(q);
            const Poly f = random_poly(F, 4, 3, true, rng);
            const Poly g = poly_act(f, random_invertible(F, 4, rng));
            poly_run(f, g, solve_cubic(f, g, config(2)), true);
        }
    for (unsigned q : {2u, 3u})
        for (int s = 0; s < 30; ++s) {
            const Field& F = Field::of_order(q);
            const Poly f = random_poly(F, 3, 3, true, rng), g = random_poly(F, 3, 3, true, rng);
            poly_run(f, g, solve_cubic(f, g, config(1)), false);
        }
    // quartic and mixed-degree
    const Field& F3 = Field::get(3);
    for (int s = 0; s < 20; ++s) {
        const Poly f = random_poly(F3, 3, 4, true, rng);
        const Poly g = poly_act(f, random_invertible(F3, 3, rng));
        poly_run(f, g, solve_degree_d(f, g, 4, config(1 + s % 2)), true);
    }
    for (int s = 0; s < 10; ++s) {
        const Poly f = random_poly(F3, 3, 4, true, rng), g = random_poly(F3, 3, 4, true, rng);
        poly_run(f, g, solve_degree_d(f, g, 4, config(1)), false);
    }
    for (int s = 0; s < 30; ++s) {
        const Poly f = random_poly(F3, 3, 3, false, rng);
        Poly g = poly_act(f, random_invertible(F3, 3, rng));
        const bool iso = s < 20;
        if (!iso) g.set(Monomial(3, 0), F3.add(g.constant_term(), 1));
        poly_run(f, g, solve_inhomogeneous(f, g, 3, config(2)), iso);
    }
    // trilinear forms and algebras
    for (unsigned q : {2u, 3u})
        for (std::size_t n : {3u, 4u})
            for (int s = 0; s < 15; ++s) {
                const Field& F = Field::of_order(q);
                const TrilinearForm phi = random_trilinear(F, n, FormTag::general, rng);
                const TrilinearForm psi = trilinear_act(phi, random_invertible(F, n, rng));
                tri_run(phi, psi, solve_trilinear(phi, psi, config(n == 3 ? 1 : 2)), true);
                const AlgebraSC a = random_algebra(F, n, rng);
                const AlgebraSC b = algebra_act(a, random_invertible(F, n, rng));
                alg_run(a, b, solve_algebra(a, b, config(n == 3 ? 1 : 2)), true);
            }
    for (unsigned q : {2u, 3u})
        for (int s = 0; s < 10; ++s) {
            const Field& F = Field::of_order(q);
            const TrilinearForm phi = random_trilinear(F, 3, FormTag::general, rng);
            const TrilinearForm psi = random_trilinear(F, 3, FormTag::general, rng);
            tri_run(phi, psi, solve_trilinear(phi, psi, config(1)), false);
            const AlgebraSC a = random_algebra(F, 3, rng), b = random_algebra(F, 3, rng);
            alg_run(a, b, solve_algebra(a, b, config(1)), false);
        }
    // adversarial: degenerate forms, tiny branch limits, perturbed keys, several workers
    const Field& F5 = Field::get(5);
    for (int s = 0; s < 20; ++s) {
        const std::size_t n = 3;
        Poly f(F5, n, 3), g(F5, n, 3);
        f.set({3, 0, 0}, 1);
        g.set({3, 0, 0}, 1);
        if (s % 2) g.set({0, 3, 0}, static_cast<Scalar>(1 + s % 4));
        const Poly h = poly_act(g, random_invertible(F5, n, rng));
        poly_run(f, h, solve_cubic(f, h, config(2)), s % 2 == 0);
    }
    for (int s = 0; s < 20; ++s) {
        // forms in fewer variables than the ambient space
        const Field& F = Field::of_order(s % 2 ? 3 : 2);
        Poly f(F, 3, 3);
        const Poly small = random_poly(F, 2, 3, true, rng);
        for (const auto& [m, c] : small.terms()) f.set({m[0], m[1], 0}, c);
        const Poly g = poly_act(f, random_invertible(F, 3, rng));
        poly_run(f, g, solve_cubic(f, g, config(1)), true);
    }
    for (int s = 0; s < 20; ++s) {
        const Poly f = random_poly(F3, 3, 3, true, rng);
        poly_run(f, f, solve_cubic(f, f, config(1 + s % 2)), true);
        Poly g = poly_act(f, random_invertible(F3, 3, rng));
        const Monomial m{1, 1, 1};
        g.set(m, F3.add(g.coeff(m), 1));
        poly_run(f, g, solve_cubic(f, g, config(1)), false);
    }
    for (int s = 0; s < 30; ++s) {
        const Poly f = random_poly(F3, 4, 3, true, rng);
        const Poly g = poly_act(f, random_invertible(F3, 4, rng));
        poly_run(f, g, solve_cubic(f, g, config(2, 1 + s * 37, s * 1009)), true);
    }
    for (int s = 0; s < 20; ++s) {
        const Poly f = random_poly(F3, 4, 3, true, rng);
        const Poly g = poly_act(f, random_invertible(F3, 4, rng));
        poly_run(f, g, solve_cubic(f, g, config(2, 0, s, 2 + s % 2)), true);
    }
    for (int s = 0; s < 20; ++s) {
        const Field& F2 = Field::get(2);
        const TrilinearForm phi = random_trilinear(F2, 4, s % 2 ? FormTag::alternating : FormTag::symmetric, rng);
        const TrilinearForm psi = trilinear_act(phi, random_invertible(F2, 4, rng));
        tri_run(phi, psi, solve_trilinear(phi, psi, config(2)), true);
    }

    std::ostringstream d;
    d << runs << " invocations, " << isomorphic << " isomorphic verdicts, " << bad << " invalid witnesses, " << missed
      << " known-isomorphic pairs reported non-isomorphic";
    return {runs >= 500 && bad == 0, d.str()};
}

// --- oracle agreement ----------------------------------------------------------------

Outcome oracle_agreement() {
    std::size_t compared = 0, disagree = 0, generic = 0, iso_pairs = 0;
    Rng rng(2002);
    const Field& F2 = Field::get(2);
    for (int s = 0; s < 100; ++s) {
        const Poly f = random_poly(F2, 3, 3, true, rng);
        const Poly g = s % 2 ? poly_act(f, random_invertible(F2, 3, rng)) : random_poly(F2, 3, 3, true, rng);
        const bool truth = brute_poly_iso(f, g).has_value();
        iso_pairs += truth;
        const SolveReport rep = solve_cubic(f, g, config(1));
        if (rep.verdict == Verdict::GenericityFailed) {
            ++generic;
            continue;
        }
        ++compared;
        disagree += (rep.verdict == Verdict::Isomorphic) != truth;
    }
    for (unsigned q : {2u, 3u})
        for (std::size_t n : {2u, 3u})
            for (int s = 0; s < 25; ++s) {
                const Field& F = Field::of_order(q);
                const TrilinearForm phi = random_trilinear(F, n, FormTag::general, rng);
                const TrilinearForm psi = s % 2 ? trilinear_act(phi, random_invertible(F, n, rng))
                                                : random_trilinear(F, n, FormTag::general, rng);
                const bool t_truth = brute_trilinear(phi, psi).has_value();
                iso_pairs += t_truth;
                const SolveReport tr = solve_trilinear(phi, psi, config(1));
                if (tr.verdict == Verdict::GenericityFailed) ++generic;
                else {
                    ++compared;
                    disagree += (tr.verdict == Verdict::Isomorphic) != t_truth;
                }
                const AlgebraSC a = random_algebra(F, n, rng);
                const AlgebraSC b = s % 2 ? algebra_act(a, random_invertible(F, n, rng)) : random_algebra(F, n, rng);
                const bool a_truth = brute_algebra(a, b).has_value();
                iso_pairs += a_truth;
                const SolveReport ar = solve_algebra(a, b, config(1));
                if (ar.verdict == Verdict::GenericityFailed) ++generic;
                else {
                    ++compared;
                    disagree += (ar.verdict == Verdict::Isomorphic) != a_truth;
                }
            }
    std::ostringstream d;
    d << compared << " verdicts compared, " << disagree << " disagreements, " << generic << " inconclusive, "
      << iso_pairs << " isomorphic pairs";
    return {disagree == 0 && compared > 0, d.str()};
}

// --- key recovery ----------------------------------------------------------------------

Outcome key_recovery() {
    const Field& F3 = Field::get(3);
    int success = 0, generic = 0, wrong = 0, slow = 0;
    double worst = 0, total = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(Rng(3003).substream(s));
        const Poly f = random_poly(F3, 5, 3, true, rng);
        const Matrix A = random_invertible(F3, 5, rng);
        const Poly g = poly_act(f, A);
        const SolveReport rep = solve_cubic(f, g, config(2));
        worst = std::max(worst, rep.seconds);
        total += rep.seconds;
        slow += rep.seconds >= 300.0;
        if (rep.verdict == Verdict::Isomorphic && rep.witness && poly_witness_ok(f, g, *rep.witness)) ++success;
        else if (rep.verdict == Verdict::GenericityFailed) ++generic;
        else ++wrong;
    }
    std::ostringstream d;
    d << success << "/20 keys recovered, " << generic << " inconclusive, " << wrong << " wrong verdicts, slowest "
      << worst << " s, mean " << total / 20 << " s";
    return {success >= 18 && wrong == 0 && slow == 0, d.str()};
}

// --- decomposition coverage ------------------------------------------------------------

Outcome decomposition() {
    const Field& F2 = Field::get(2);
    std::vector<Matrix> inverses;
    T1Enumerator e(F2, 4, 2);
    Matrix t;
    while (e.next(t)) inverses.push_back(inverse(t));
    Rng rng(4004);
    int covered = 0;
    for (int s = 0; s < 50; ++s) {
        const Matrix T = random_invertible(F2, 4, rng);
        for (const Matrix& inv : inverses) {
            const Matrix m = inv * T;
            if (m.block(0, 0, 4, 2) == Matrix::identity(F2, 4).block(0, 0, 4, 2) && m.block(0, 2, 2, 2).is_zero()) {
                ++covered;
                break;
            }
        }
    }
    return {covered == 50, std::to_string(covered) + "/50 covered by " + std::to_string(inverses.size()) + " branches"};
}

// --- random tuple statistics -------------------------------------------------------------

Outcome adj_dim() {
    const ExperimentReport sym = adj_dim_experiment(8, 8, 3, 200, 5005, TupleShape::symmetric);
    const ExperimentReport alt = adj_dim_experiment(10, 16, 2, 200, 5006, TupleShape::alternating);
    std::ostringstream d;
    d << "symmetric l=8 r=8 q=3 seed=5005: " << sym.frequency() << " (need >= 0.95); alternating l=10 r=16 q=2 seed=5006: "
      << alt.frequency() << " (need >= 0.90)";
    return {sym.frequency() >= 0.95 && alt.frequency() >= 0.90, d.str()};
}

Outcome merge() {
    const ExperimentReport a = merge_uniformity(2, 2);
    const ExperimentReport b = merge_uniformity(3, 2);
    auto exactly = [](const ExperimentReport& r, std::uint64_t per, std::uint64_t cells) {
        return r.exact && r.histogram.size() == 1 && r.histogram.begin()->first == per &&
               r.histogram.begin()->second == cells;
    };
    const bool ok = exactly(a, 4, 16) && exactly(b, 8, 512);
    std::ostringstream d;
    d << "d=2: " << a.samples << " pairs over 16 matrices, d=3: " << b.samples << " pairs over 512 matrices, "
      << (ok ? "exactly uniform" : "not uniform");
    return {ok, d.str()};
}

Outcome stability() {
    const Field& F2 = Field::get(2);
    const Rng root(7007);
    int stable = 0, bounded = 0;
    for (int s = 0; s < 200; ++s) {
        Rng rng = root.substream(s);
        const MatrixTuple t = random_tuple(F2, TupleShape::general, 3, 4, rng);
        if (!stability_check(t)) continue;
        ++stable;
        bounded += adj_dimension(t, t) <= 3;
    }
    return {stable == bounded, std::to_string(stable) + " of 200 tuples stable, " + std::to_string(bounded) +
                                   " of them with dim Adj <= 3"};
}

// --- gadget -----------------------------------------------------------------------------------

Outcome gadget_golden() {
    const Field& F3 = Field::get(3);
    const MatrixTuple a(F3, TupleShape::alternating, 2, {Matrix(F3, {{0, 1}, {2, 0}})});
    const ReductionArtifacts art = build_hat(a);
    const Instance golden = read_instance(std::string(FORMISO_TEST_DATA) + "/gadget_running_example_slices.txt");
    const Tensor3& printed = std::get<Tensor3>(golden.value);
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j) mismatches += art.hat(i, j, k) != printed(i, j, k);
    const bool alt = is_alternating(art.hat);
    const RankProfile prof = rank_profile(art.hat, 2, 1);
    std::ostringstream d;
    d << mismatches << " of 432 entries differ from the golden slices, alternating=" << (alt ? "yes" : "no")
      << ", rank ranges " << (prof.ok() ? "hold" : "violated");
    return {mismatches == 0 && alt && prof.ok(), d.str()};
}

Outcome gadget_witness() {
    Rng rng(9009);
    int ok = 0;
    for (int s = 0; s < 50; ++s) {
        const Field& F = Field::of_order(s % 2 ? 3 : 2);
        const std::size_t n = 1 + s % 3, m = 1 + (s / 3) % 2;
        const MatrixTuple A = random_tuple(F, TupleShape::alternating, n, m, rng);
        const Matrix P = random_invertible(F, n, rng), D = random_invertible(F, m, rng);
        const MatrixTuple B = pseudo_isometry_image(A, P, D);
        ok += verify_equivalence(build_hat(A).hat, build_hat(B).hat, witness_from_pseudo_isometry(P, D));
    }
    return {ok == 50, std::to_string(ok) + "/50 witnesses verified"};
}

// --- trilinear form of a cubic ------------------------------------------------------------

Outcome cubic_trilinear() {
    const Field& F5 = Field::get(5);
    Rng rng(10010);
    int ok = 0;
    for (int s = 0; s < 50; ++s) {
        const std::size_t n = 2 + s % 3;
        const Poly f = random_poly(F5, n, 3, true, rng);
        const TrilinearForm phi = cubic_to_symmetric_trilinear(f);
        bool good = true;
        for (const auto& v : all_points(F5, n))
            if (phi.evaluate(v, v, v) != f.evaluate(v)) good = false;
        const Matrix A = random_invertible(F5, n, rng);
        const TrilinearForm phiA = cubic_to_symmetric_trilinear(poly_act(f, A));
        for (std::size_t a = 0; a < n && good; ++a)
            for (std::size_t b = 0; b < n && good; ++b)
                for (std::size_t c = 0; c < n && good; ++c)
                    good = phiA(a, b, c) == phi.evaluate(A.column(a).entries(), A.column(b).entries(), A.column(c).entries());
        ok += good;
    }
    return {ok == 50, std::to_string(ok) + "/50 cubics consistent"};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {"soundness", soundness},
        {"oracle-agreement", oracle_agreement},
        {"key-recovery", key_recovery},
        {"decomposition-coverage", decomposition},
        {"adj-dimension", adj_dim},
        {"merge-uniformity", merge},
        {"stability-bound", stability},
        {"gadget-golden", gadget_golden},
        {"gadget-witness", gadget_witness},
        {"cubic-trilinear", cubic_trilinear},
    };
    std::vector<std::string> only(argv + 1, argv + argc);
    int failed = 0;
    for (const Criterion& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-24s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}

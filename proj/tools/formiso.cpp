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
// formiso command-line front end.
//
// Exit codes: solve returns 0 Isomorphic, 1 NotIsomorphic, 2 GenericityFailed,
// 3 BudgetExceeded; verify, oracle and reduce --witness return 0 / 1. Errors use
// 10 usage, 11 malformed input, 12 field mismatch, 13 budget, 14 io, 15 invalid
// argument, each with one `error: <kind>: <message>` line on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include "CLI11.hpp"
#include "formiso/adjiso.hpp"
#include "formiso/forms.hpp"
#include "formiso/io.hpp"
#include "formiso/reduction.hpp"
#include "formiso/solver.hpp"
#include "formiso/stats.hpp"

using namespace formiso;

namespace {

enum Exit : int {
    kOk = 0,
    kNo = 1,
    kUsage = 10,
    kMalformed = 11,
    kFieldMismatch = 12,
    kBudget = 13,
    kIo = 14,
    kInvalid = 15,
};

struct CliError : std::runtime_error {
    CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
    int code;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FORMISO_SEED")) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw CliError(kInvalid, std::string("FORMISO_SEED is not an unsigned integer: ") + env);
    }
    return 0;
}

void emit(const Instance& inst, const std::string& path) {
    if (path.empty() || path == "-") write_instance(std::cout, inst);
    else write_instance_file(path, inst);
}

void same_field(const Instance& a, const Instance& b) {
    if (&a.field() != &b.field())
        throw CliError(kFieldMismatch, "inputs are over F_" + std::to_string(a.field().q()) + " and F_" +
                                           std::to_string(b.field().q()));
    if (a.kind != b.kind)
        throw CliError(kInvalid, std::string("inputs have different kinds: ") + to_string(a.kind) + " and " +
                                     to_string(b.kind));
}

const Matrix& as_matrix(const Instance& w) {
    if (w.kind != InstanceKind::matrix) throw CliError(kInvalid, "witness file must hold a matrix");
    return std::get<Matrix>(w.value);
}

// --- gen / keygen ---------------------------------------------------------------

struct GenOpts {
    std::string kind = "poly", shape = "general", out;
    unsigned q = 3, d = 3;
    std::size_t n = 4, m = 2;
    bool inhomogeneous = false;
    std::optional<std::uint64_t> seed;
};

int run_gen(const GenOpts& o) {
    const Field& F = Field::of_order(o.q);
    Rng rng(resolve_seed(o.seed));
    if (o.kind == "poly") {
        emit(make_instance(random_poly(F, o.n, o.d, !o.inhomogeneous, rng)), o.out);
    } else if (o.kind == "trilinear") {
        const FormTag tag = o.shape == "symmetric" ? FormTag::symmetric : o.shape == "alternating" ? FormTag::alternating : FormTag::general;
        emit(make_instance(random_trilinear(F, o.n, tag, rng)), o.out);
    } else if (o.kind == "algebra") {
        emit(make_instance(random_algebra(F, o.n, rng)), o.out);
    } else if (o.kind == "tuple") {
        const TupleShape shape = o.shape == "symmetric" ? TupleShape::symmetric : o.shape == "alternating" ? TupleShape::alternating : TupleShape::general;
        emit(make_instance(random_tuple(F, shape, o.n, o.m, rng)), o.out);
    } else {
        throw CliError(kInvalid, "unknown kind " + o.kind);
    }
    return kOk;
}

struct KeygenOpts {
    unsigned q = 3, d = 3;
    std::size_t n = 5;
    bool inhomogeneous = false;
    std::optional<std::uint64_t> seed;
    std::string f_out, g_out, secret_out;
};

int run_keygen(const KeygenOpts& o) {
    const Field& F = Field::of_order(o.q);
    Rng rng(resolve_seed(o.seed));
    const Poly f = random_poly(F, o.n, o.d, !o.inhomogeneous, rng);
    const Matrix a = random_invertible(F, o.n, rng);
    // f = g o A^-1, so A^-1 is one valid answer for solve f g
    const Poly g = poly_act(f, a);
    write_instance_file(o.f_out, make_instance(f));
    write_instance_file(o.g_out, make_instance(g));
    write_instance_file(o.secret_out, make_instance(a));
    return kOk;
}

// --- solve / verify / oracle ---------------------------------------------------------

struct SolveOpts {
    std::string kind = "auto", in1, in2, witness_out;
    std::optional<std::size_t> r;
    std::uint64_t budget = kDefaultAdjBudget, t1_limit = 0;
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
};

ProblemKind problem_kind(const std::string& kind, const Instance& a) {
    if (kind == "cubic") return ProblemKind::cubic;
    if (kind == "degree-d") return ProblemKind::degree_d;
    if (kind == "inhomogeneous") return ProblemKind::inhomogeneous;
    if (kind == "trilinear") return ProblemKind::trilinear;
    if (kind == "algebra") return ProblemKind::algebra;
    if (kind != "auto") throw CliError(kInvalid, "unknown kind " + kind);
    switch (a.kind) {
        case InstanceKind::poly: {
            const Poly& p = std::get<Poly>(a.value);
            if (!p.homogeneous()) return ProblemKind::inhomogeneous;
            return p.degree_bound() == 3 ? ProblemKind::cubic : ProblemKind::degree_d;
        }
        case InstanceKind::trilinear: return ProblemKind::trilinear;
        case InstanceKind::algebra: return ProblemKind::algebra;
        default: throw CliError(kInvalid, std::string("cannot solve instances of kind ") + to_string(a.kind));
    }
}

template <class T>
const T& get_as(const Instance& inst, const char* what) {
    if (!std::holds_alternative<T>(inst.value)) throw CliError(kInvalid, std::string("input is not a ") + what);
    return std::get<T>(inst.value);
}

int run_solve(const SolveOpts& o) {
    const Instance a = read_instance(o.in1), b = read_instance(o.in2);
    same_field(a, b);
    const ProblemKind kind = problem_kind(o.kind, a);
    SolveConfig cfg;
    cfg.budget = o.budget;
    cfg.t1_limit = o.t1_limit;
    cfg.seed = resolve_seed(o.seed);
    cfg.jobs = o.jobs;
    std::size_t n = 0;
    std::visit([&](const auto& v) {
        if constexpr (requires { v.n(); }) n = v.n();
    }, a.value);
    if (n < 2) throw CliError(kInvalid, "solver needs at least two variables");
    cfg.r = o.r ? *o.r : std::min(default_r(kind, a.field()), n - 1);

    SolveReport rep;
    switch (kind) {
        case ProblemKind::cubic:
            rep = solve_cubic(get_as<Poly>(a, "poly"), get_as<Poly>(b, "poly"), cfg);
            break;
        case ProblemKind::degree_d: {
            const Poly& f = get_as<Poly>(a, "poly");
            rep = solve_degree_d(f, get_as<Poly>(b, "poly"), f.degree_bound(), cfg);
            break;
        }
        case ProblemKind::inhomogeneous: {
            const Poly& f = get_as<Poly>(a, "poly");
            const Poly& g = get_as<Poly>(b, "poly");
            rep = solve_inhomogeneous(f, g, std::max(f.degree_bound(), g.degree_bound()), cfg);
            break;
        }
        case ProblemKind::trilinear:
            rep = solve_trilinear(get_as<TrilinearForm>(a, "trilinear form"), get_as<TrilinearForm>(b, "trilinear form"), cfg);
            break;
        case ProblemKind::algebra:
            rep = solve_algebra(get_as<AlgebraSC>(a, "algebra"), get_as<AlgebraSC>(b, "algebra"), cfg);
            break;
    }
    const SolveCounters& c = rep.counters;
    std::cout << "verdict=" << to_string(rep.verdict) << '\n'
              << "r=" << cfg.r << '\n'
              << "seconds=" << rep.seconds << '\n'
              << "t1_tried=" << c.t1_tried << '\n'
              << "u_tuples=" << c.u_tuples << '\n'
              << "probe_rejected=" << c.probe_rejected << '\n'
              << "adj_dim_rejected=" << c.adj_dim_rejected << '\n'
              << "iso_solves=" << c.iso_solves << '\n'
              << "genericity_branches=" << c.genericity_branches << '\n'
              << "candidates_checked=" << c.candidates_checked << '\n'
              << "adj_dim=" << c.adj_dim << '\n';
    if (rep.witness) {
        if (o.witness_out.empty()) {
            std::cout << '\n';
            write_instance(std::cout, make_instance(*rep.witness));
        } else {
            write_instance_file(o.witness_out, make_instance(*rep.witness));
        }
    }
    return static_cast<int>(rep.verdict);
}

struct VerifyOpts {
    std::string in1, in2, witness;
};

bool check_witness(const Instance& a, const Instance& b, const Matrix& t) {
    const std::size_t n = t.rows();
    auto square = [&](std::size_t want) {
        if (!t.is_square() || n != want) throw CliError(kInvalid, "witness has the wrong size");
        if (&t.field() != &a.field()) throw CliError(kFieldMismatch, "witness is over a different field");
        return try_inverse(t).has_value();
    };
    switch (a.kind) {
        case InstanceKind::poly: {
            const Poly& f = std::get<Poly>(a.value);
            const Poly& g = std::get<Poly>(b.value);
            if (!square(f.n())) return false;
            // compare as polynomials of a common degree bound
            const unsigned d = std::max(f.degree_bound(), g.degree_bound());
            Poly gf(g.field(), g.n(), d, false), ff(f.field(), f.n(), d, false);
            for (const auto& [m, c] : g.terms()) gf.set(m, c);
            for (const auto& [m, c] : f.terms()) ff.set(m, c);
            return poly_act(gf, t) == ff;
        }
        case InstanceKind::trilinear:
            if (!square(std::get<TrilinearForm>(a.value).n())) return false;
            return trilinear_act(std::get<TrilinearForm>(b.value), t) == std::get<TrilinearForm>(a.value);
        case InstanceKind::algebra:
            if (!square(std::get<AlgebraSC>(a.value).n())) return false;
            return algebra_act(std::get<AlgebraSC>(b.value), t) == std::get<AlgebraSC>(a.value);
        case InstanceKind::tuple: {
            const MatrixTuple& c = std::get<MatrixTuple>(a.value);
            const MatrixTuple& d = std::get<MatrixTuple>(b.value);
            if (c.size() != d.size()) return false;
            if (!square(c.dim())) return false;
            const MatrixTuple img = congruence(d, t);
            for (std::size_t i = 0; i < c.size(); ++i)
                if (!(img[i] == c[i])) return false;
            return true;
        }
        case InstanceKind::tensor: {
            const Tensor3& x = std::get<Tensor3>(a.value);
            if (!square(x.dim(0))) return false;
            return verify_equivalence(x, std::get<Tensor3>(b.value), t);
        }
        case InstanceKind::matrix: break;
    }
    throw CliError(kInvalid, "cannot verify matrix instances");
}

int run_verify(const VerifyOpts& o) {
    const Instance a = read_instance(o.in1), b = read_instance(o.in2), w = read_instance(o.witness);
    same_field(a, b);
    const bool ok = check_witness(a, b, as_matrix(w));
    std::cout << (ok ? "valid" : "invalid") << '\n';
    return ok ? kOk : kNo;
}

struct OracleOpts {
    std::string kind = "auto", in1, in2, witness_out;
    bool pseudo = false;
};

int run_oracle(const OracleOpts& o) {
    const Instance a = read_instance(o.in1), b = read_instance(o.in2);
    same_field(a, b);
    std::optional<Matrix> witness;
    bool found = false;
    switch (a.kind) {
        case InstanceKind::poly: witness = brute_poly_iso(std::get<Poly>(a.value), std::get<Poly>(b.value)); break;
        case InstanceKind::trilinear:
            witness = brute_trilinear(std::get<TrilinearForm>(a.value), std::get<TrilinearForm>(b.value));
            break;
        case InstanceKind::algebra: witness = brute_algebra(std::get<AlgebraSC>(a.value), std::get<AlgebraSC>(b.value)); break;
        case InstanceKind::tuple: {
            const MatrixTuple& c = std::get<MatrixTuple>(a.value);
            const MatrixTuple& d = std::get<MatrixTuple>(b.value);
            if (o.pseudo) {
                const auto pi = brute_pseudo_isometry(c, d);
                found = pi.has_value();
                if (pi) {
                    std::cout << "isomorphic\n\n";
                    write_instance(std::cout, make_instance(pi->P));
                    std::cout << '\n';
                    write_instance(std::cout, make_instance(pi->D));
                    return kOk;
                }
            } else {
                // isometry from C to D: R^T D_i R = C_i
                IsoResult res = brute_isometry(c, d);
                if (!res.witnesses.empty()) witness = res.witnesses.front();
            }
            break;
        }
        default: throw CliError(kInvalid, std::string("no oracle for kind ") + to_string(a.kind));
    }
    found = found || witness.has_value();
    std::cout << (found ? "isomorphic" : "not-isomorphic") << '\n';
    if (witness) {
        if (o.witness_out.empty()) {
            std::cout << '\n';
            write_instance(std::cout, make_instance(*witness));
        } else {
            write_instance_file(o.witness_out, make_instance(*witness));
        }
    }
    return found ? kOk : kNo;
}

// --- reduce ---------------------------------------------------------------------------

struct ReduceOpts {
    std::string in, out, s_out, image_out;
    std::vector<std::string> witness;
};

int run_reduce(const ReduceOpts& o) {
    const Instance in = read_instance(o.in);
    const MatrixTuple& a = get_as<MatrixTuple>(in, "matrix tuple");
    const ReductionArtifacts art = build_hat(a);
    {
        std::ostringstream text;
        text << "# gadget form: n=" << art.n << " m=" << art.m << " q=" << a.field().q() << '\n';
        write_instance(text, make_instance(art.hat));
        if (o.out.empty() || o.out == "-") {
            std::cout << text.str();
        } else {
            std::ofstream f(o.out);
            if (!f || !(f << text.str())) throw std::system_error(EIO, std::generic_category(), "cannot write " + o.out);
        }
    }
    if (o.witness.empty()) return kOk;
    const Instance pi = read_instance(o.witness.at(0)), di = read_instance(o.witness.at(1));
    const Matrix& P = as_matrix(pi);
    const Matrix& D = as_matrix(di);
    if (&P.field() != &a.field() || &D.field() != &a.field()) throw CliError(kFieldMismatch, "witness is over a different field");
    if (P.rows() != art.n || D.rows() != art.m) throw CliError(kInvalid, "witness sizes do not match the tuple");
    const MatrixTuple b = pseudo_isometry_image(a, P, D);
    const Matrix S = witness_from_pseudo_isometry(P, D);
    const bool ok = verify_equivalence(art.hat, build_hat(b).hat, S);
    if (!o.s_out.empty()) write_instance_file(o.s_out, make_instance(S));
    if (!o.image_out.empty()) write_instance_file(o.image_out, make_instance(b));
    std::cerr << (ok ? "witness verified" : "witness failed") << '\n';
    return ok ? kOk : kNo;
}

// --- stats ------------------------------------------------------------------------------

struct StatsOpts {
    std::size_t l = 8, r = 8, d = 2, m = 4, count = 200;
    unsigned q = 3;
    std::uint64_t samples = 200;
    std::optional<std::uint64_t> seed;
    bool alternating = false, uniform = false;
    std::string in, csv;
};

void finish(const ExperimentReport& rep, const StatsOpts& o) {
    rep.write_text(std::cout);
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw std::system_error(EIO, std::generic_category(), "cannot write " + o.csv);
        rep.write_histogram_csv(f);
    }
}

int run_stats(const std::string& which, const StatsOpts& o) {
    const std::uint64_t seed = resolve_seed(o.seed);
    if (which == "adj-dim") {
        finish(adj_dim_experiment(o.l, o.r, o.q, o.samples, seed, o.alternating ? TupleShape::alternating : TupleShape::symmetric), o);
    } else if (which == "rank-bound") {
        finish(rank_bound_experiment(o.l, o.d, o.r, o.q, o.samples, seed,
                                     o.uniform ? RankModel::uniform : RankModel::symmetric_blocks),
               o);
    } else if (which == "merge") {
        finish(merge_uniformity(o.d, o.q, o.samples, seed), o);
    } else if (which == "stability") {
        if (!o.in.empty()) {
            const Instance in = read_instance(o.in);
            const MatrixTuple& t = get_as<MatrixTuple>(in, "matrix tuple");
            const bool st = stability_check(t);
            std::cout << "stable=" << (st ? "true" : "false") << '\n' << "adj_dim=" << adj_dimension(t, t) << '\n';
            return kOk;
        }
        // random tuples in M(l, q)^m: how many are stable, and whether each
        // stable one has dim Adj <= l
        const Field& F = Field::of_order(o.q);
        const Rng root(seed);
        std::uint64_t stable = 0, bounded = 0;
        for (std::size_t s = 0; s < o.count; ++s) {
            Rng rng = root.substream(s);
            const MatrixTuple t = random_tuple(F, TupleShape::general, o.l, o.m, rng);
            if (!stability_check(t)) continue;
            ++stable;
            bounded += adj_dimension(t, t) <= o.l;
        }
        std::cout << "experiment=stability\nl=" << o.l << "\nm=" << o.m << "\nq=" << o.q << "\nseed=" << seed
                  << "\nsamples=" << o.count << "\nstable=" << stable << "\nstable_with_small_adj=" << bounded << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isomorphism testing for polynomials, trilinear forms and algebras over finite fields"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "Emit a uniformly random instance");
    gen_cmd->add_option("--kind", gen.kind, "poly | trilinear | algebra | tuple")
        ->check(CLI::IsMember({"poly", "trilinear", "algebra", "tuple"}));
    gen_cmd->add_option("--q", gen.q, "Field order")->required();
    gen_cmd->add_option("--n", gen.n, "Variables or matrix size")->required();
    gen_cmd->add_option("--d", gen.d, "Degree (poly)");
    gen_cmd->add_option("--m", gen.m, "Tuple length (tuple)");
    gen_cmd->add_option("--shape", gen.shape, "general | symmetric | alternating")
        ->check(CLI::IsMember({"general", "symmetric", "alternating"}));
    gen_cmd->add_flag("--inhomogeneous", gen.inhomogeneous, "Allow all degrees up to d");
    gen_cmd->add_option("--seed", gen.seed, "Seed (default: FORMISO_SEED or 0)");
    gen_cmd->add_option("-o,--out", gen.out, "Output file (default stdout)");

    KeygenOpts kg;
    auto* kg_cmd = app.add_subcommand("keygen", "Random f, secret A and public g = f o A");
    kg_cmd->add_option("--q", kg.q, "Field order")->required();
    kg_cmd->add_option("--n", kg.n, "Variables")->required();
    kg_cmd->add_option("--d", kg.d, "Degree")->required();
    kg_cmd->add_option("--seed", kg.seed, "Seed (default: FORMISO_SEED or 0)");
    kg_cmd->add_flag("--inhomogeneous", kg.inhomogeneous, "Mixed-degree f");
    kg_cmd->add_option("--f", kg.f_out, "Output file for f")->required();
    kg_cmd->add_option("--g", kg.g_out, "Output file for g")->required();
    kg_cmd->add_option("--secret", kg.secret_out, "Output file for A")->required();

    SolveOpts sv;
    auto* sv_cmd = app.add_subcommand("solve", "Find T with f = g o T (or the analogue for forms and algebras)");
    sv_cmd->add_option("--kind", sv.kind, "auto | cubic | degree-d | inhomogeneous | trilinear | algebra")
        ->check(CLI::IsMember({"auto", "cubic", "degree-d", "inhomogeneous", "trilinear", "algebra"}));
    sv_cmd->add_option("--r", sv.r, "Number of slices (default min(kind default, n-1))");
    sv_cmd->add_option("--budget", sv.budget, "Largest |Adj| enumerated per branch");
    sv_cmd->add_option("--t1-limit", sv.t1_limit, "Stop after this many branches (0 = no limit)");
    sv_cmd->add_option("--seed", sv.seed, "Start offset in the branch stream");
    sv_cmd->add_option("--jobs", sv.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sv_cmd->add_option("--witness", sv.witness_out, "Write the witness here instead of stdout");
    sv_cmd->add_option("in1", sv.in1)->required();
    sv_cmd->add_option("in2", sv.in2)->required();

    VerifyOpts vf;
    auto* vf_cmd = app.add_subcommand("verify", "Check a witness");
    vf_cmd->add_option("in1", vf.in1)->required();
    vf_cmd->add_option("in2", vf.in2)->required();
    vf_cmd->add_option("witness", vf.witness)->required();

    OracleOpts oc;
    auto* oc_cmd = app.add_subcommand("oracle", "Brute-force decision for tiny instances");
    oc_cmd->add_option("--kind", oc.kind, "Ignored; the kind comes from the files");
    oc_cmd->add_flag("--pseudo", oc.pseudo, "Tuples: pseudo-isometry instead of isometry");
    oc_cmd->add_option("--witness", oc.witness_out, "Write the witness here instead of stdout");
    oc_cmd->add_option("in1", oc.in1)->required();
    oc_cmd->add_option("in2", oc.in2)->required();

    ReduceOpts rd;
    auto* rd_cmd = app.add_subcommand("reduce", "Gadget form of an alternating matrix tuple");
    rd_cmd->add_option("in", rd.in)->required();
    rd_cmd->add_option("-o,--out", rd.out, "Output file (default stdout)");
    rd_cmd->add_option("--witness", rd.witness, "Matrix files P and D of a pseudo-isometry")->expected(2);
    rd_cmd->add_option("--s-out", rd.s_out, "Write the equivalence S here");
    rd_cmd->add_option("--image-out", rd.image_out, "Write the image tuple here");

    StatsOpts st;
    std::string stats_which;
    auto* st_cmd = app.add_subcommand("stats", "Experiments on random matrix tuples");
    st_cmd->add_option("experiment", stats_which, "adj-dim | stability | rank-bound | merge")
        ->required()
        ->check(CLI::IsMember({"adj-dim", "stability", "rank-bound", "merge"}));
    st_cmd->add_option("--l", st.l, "Matrix size");
    st_cmd->add_option("--r", st.r, "Tuple length / block count");
    st_cmd->add_option("--d", st.d, "Subspace or merge dimension");
    st_cmd->add_option("--m", st.m, "Tuple length (stability)");
    st_cmd->add_option("--q", st.q, "Field order");
    st_cmd->add_option("--samples", st.samples, "Samples (0 = exhaustive where supported)");
    st_cmd->add_option("--count", st.count, "Random tuples (stability)");
    st_cmd->add_option("--seed", st.seed, "Seed (default: FORMISO_SEED or 0)");
    st_cmd->add_flag("--alternating", st.alternating, "adj-dim: alternating tuples");
    st_cmd->add_flag("--uniform", st.uniform, "rank-bound: uniform l x 4d model");
    st_cmd->add_option("--in", st.in, "stability: tuple file to test");
    st_cmd->add_option("--csv", st.csv, "Histogram CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*kg_cmd) return run_keygen(kg);
        if (*sv_cmd) return run_solve(sv);
        if (*vf_cmd) return run_verify(vf);
        if (*oc_cmd) return run_oracle(oc);
        if (*rd_cmd) return run_reduce(rd);
        if (*st_cmd) return run_stats(stats_which, st);
    } catch (const CliError& e) {
        const char* name = e.code == kFieldMismatch ? "field-mismatch" : e.code == kUsage ? "usage" : "invalid-argument";
        std::cerr << "error: " << name << ": " << e.what() << '\n';
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "error: malformed: " << e.what() << '\n';
        return kMalformed;
    } catch (const std::system_error& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return kIo;
    } catch (const std::length_error& e) {
        std::cerr << "error: budget: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid-argument: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: invalid-argument: " << e.what() << '\n';
        return kInvalid;
    }
    return kUsage;
}

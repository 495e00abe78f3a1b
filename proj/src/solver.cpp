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
#include "formiso/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace formiso {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Isomorphic: return "Isomorphic";
        case Verdict::NotIsomorphic: return "NotIsomorphic";
        case Verdict::GenericityFailed: return "GenericityFailed";
        case Verdict::BudgetExceeded: return "BudgetExceeded";
    }
    return "?";
}

std::size_t default_r(ProblemKind kind, const Field& F) noexcept {
    switch (kind) {
        case ProblemKind::trilinear:
        case ProblemKind::algebra: return 4;
        default: return F.is_char2() ? 20 : 8;
    }
}

SolveCounters& SolveCounters::operator+=(const SolveCounters& o) noexcept {
    t1_tried += o.t1_tried;
    u_tuples += o.u_tuples;
    probe_rejected += o.probe_rejected;
    adj_dim_rejected += o.adj_dim_rejected;
    iso_solves += o.iso_solves;
    genericity_branches += o.genericity_branches;
    candidates_checked += o.candidates_checked;
    max_adj_dim = std::max(max_adj_dim, o.max_adj_dim);
    return *this;
}

// --- T1 stream -------------------------------------------------------------------

T1Enumerator::T1Enumerator(const Field& F, std::size_t n, std::size_t r) : F_(&F), n_(n), r_(r), tuples_(F, n, r) {
    if (r < 1 || r >= n) throw std::invalid_argument("slice count r must satisfy 1 <= r < n");
}

bool T1Enumerator::next(Matrix& out) {
    Matrix w;
    for (;;) {
        if (comps_ && comps_->next(w)) {
            out = hcat(u_, w);
            return true;
        }
        if (!tuples_.next()) return false;
        u_ = tuples_.as_columns();
        comps_.emplace(u_);
    }
}

std::uint64_t T1Enumerator::count() const {
    const std::uint64_t qn = checked_pow(F_->q(), n_);
    unsigned __int128 c = checked_pow(F_->q(), r_ * (n_ - r_));
    for (std::size_t i = 0; i < r_; ++i) {
        c *= qn - checked_pow(F_->q(), i);
        if (c > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("T1 count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

// --- Slice engines ------------------------------------------------------------------

SliceEngine::SliceEngine(const Field& F, std::size_t n, std::size_t r, TupleShape out_shape)
    : F_(&F), n_(n), r_(r), shape_(out_shape), frames_(r, std::vector<Scalar>(n * n, 0)) {
    if (r < 1 || r >= n) throw std::invalid_argument("slice count r must satisfy 1 <= r < n");
}

void SliceEngine::set_frame(const Matrix& u) {
    t0_ = hcat(u, standard_complement(u));
    build_frame(t0_, inverse(t0_));
}

void SliceEngine::store_frame(std::size_t i, const Matrix& m) {
    Matrix b = t0_.transpose() * m * t0_;
    std::copy(b.entries().begin(), b.entries().end(), frames_[i].begin());
}

namespace {

// D[j][k] = a_j^T B^{(j,k)} a_k with a_j = (A[0][j], ..., A[r-1][j], 1) and
// B^{(j,k)} the frame restricted to rows {0..r-1, r+j} and columns {0..r-1, r+k}.
template <bool Prime>
void slice_kernel(const Field& F, std::size_t n, std::size_t r, TupleShape shape, const Scalar* B, const Scalar* A,
                  Scalar* out) {
    const std::size_t l = n - r;
    const unsigned p = F.p();
    for (std::size_t j = 0; j < l; ++j) {
        const std::size_t k0 = shape == TupleShape::general ? 0 : j;
        for (std::size_t k = k0; k < l; ++k) {
            if (shape == TupleShape::alternating && k == j) {
                out[j * l + k] = 0;
                continue;
            }
            if constexpr (Prime) {
                unsigned acc = 0;
                for (std::size_t x = 0; x <= r; ++x) {
                    const unsigned ax = x < r ? A[x * l + j] : 1u;
                    if (!ax) continue;
                    const Scalar* row = B + (x < r ? x : r + j) * n;
                    unsigned inner = row[r + k];
                    for (std::size_t y = 0; y < r; ++y) inner += unsigned(row[y]) * A[y * l + k];
                    acc += ax * (inner % p);
                }
                out[j * l + k] = static_cast<Scalar>(acc % p);
            } else {
                Scalar acc = 0;
                for (std::size_t x = 0; x <= r; ++x) {
                    const Scalar ax = x < r ? A[x * l + j] : Scalar{1};
                    if (!ax) continue;
                    const Scalar* row = B + (x < r ? x : r + j) * n;
                    Scalar inner = row[r + k];
                    for (std::size_t y = 0; y < r; ++y) inner = F.add(inner, F.mul(row[y], A[y * l + k]));
                    acc = F.add(acc, F.mul(ax, inner));
                }
                out[j * l + k] = acc;
            }
        }
    }
    if (shape != TupleShape::general)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < j; ++k)
                out[j * l + k] = shape == TupleShape::symmetric ? out[k * l + j] : F.neg(out[k * l + j]);
}

}  // namespace

void SliceEngine::slice(std::size_t i, const Scalar* a, Scalar* out) const {
    if (F_->e() == 1) slice_kernel<true>(*F_, n_, r_, shape_, frames_[i].data(), a, out);
    else slice_kernel<false>(*F_, n_, r_, shape_, frames_[i].data(), a, out);
}

MatrixTuple SliceEngine::slices(const Matrix& a) {
    if (a.rows() != r_ || a.cols() != l()) throw std::invalid_argument("coefficient matrix has the wrong shape");
    prepare(a.entries().data());
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < r_; ++i) {
        Matrix d(*F_, l(), l());
        std::vector<Scalar> buf(l() * l());
        slice(i, a.entries().data(), buf.data());
        out.emplace_back(*F_, l(), l(), std::move(buf));
    }
    return MatrixTuple(*F_, shape_, l(), std::move(out));
}

namespace {

// The t^{d-2} coefficient of g(t u + z) is a quadratic form Q_u(z); its
// symmetric (odd q) or polar (char 2) matrix, congruenced by W, is the slice.
class PolyEngine final : public SliceEngine {
   public:
    PolyEngine(const Poly& g, std::size_t r)
        : SliceEngine(g.field(), g.n(), r, g.field().is_char2() ? TupleShape::alternating : TupleShape::symmetric),
          d_(g.degree_bound()) {
        if (d_ < 2) throw std::invalid_argument("slices need degree at least 2");
        for (const auto& [m, c] : g.terms()) {
            if (degree(m) != d_) continue;
            Term t{c, {}};
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e) t.slots.push_back(static_cast<std::uint8_t>(i));
            terms_.push_back(std::move(t));
        }
        if (!field().is_char2()) half_ = field().inv(2);
    }

   protected:
    void build_frame(const Matrix& t0, const Matrix&) override {
        const Field& F = field();
        const std::size_t n = this->n();
        std::vector<Scalar> u(n);
        for (std::size_t i = 0; i < r(); ++i) {
            for (std::size_t a = 0; a < n; ++a) u[a] = t0(a, i);
            Matrix quad(F, n, n);  // upper triangle: coefficient of z_a z_b
            for (const Term& t : terms_) {
                for (std::size_t p = 0; p < d_; ++p)
                    for (std::size_t p2 = p + 1; p2 < d_; ++p2) {
                        Scalar v = t.c;
                        for (std::size_t s = 0; s < d_ && v; ++s)
                            if (s != p && s != p2) v = F.mul(v, u[t.slots[s]]);
                        if (!v) continue;
                        std::size_t a = t.slots[p], b = t.slots[p2];
                        if (a > b) std::swap(a, b);
                        quad(a, b) = F.add(quad(a, b), v);
                    }
            }
            Matrix B(F, n, n);
            for (std::size_t a = 0; a < n; ++a) {
                if (!F.is_char2()) B(a, a) = quad(a, a);
                for (std::size_t b = a + 1; b < n; ++b) B(a, b) = B(b, a) = F.is_char2() ? quad(a, b) : F.mul(quad(a, b), half_);
            }
            store_frame(i, B);
        }
    }

   private:
    struct Term {
        Scalar c;
        std::vector<std::uint8_t> slots;
    };
    unsigned d_;
    Scalar half_ = 0;
    std::vector<Term> terms_;
};

// M_i[b][c] = sum_a u_i[a] psi_{a,b,c}
class TrilinearEngine final : public SliceEngine {
   public:
    TrilinearEngine(const TrilinearForm& psi, std::size_t r)
        : SliceEngine(psi.field(), psi.n(), r, TupleShape::general), psi_(psi) {}

   protected:
    void build_frame(const Matrix& t0, const Matrix&) override {
        const Field& F = field();
        const std::size_t n = this->n();
        for (std::size_t i = 0; i < r(); ++i) {
            Matrix M(F, n, n);
            for (std::size_t a = 0; a < n; ++a) {
                const Scalar ua = t0(a, i);
                if (!ua) continue;
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c) M(b, c) = F.add(M(b, c), F.mul(ua, psi_(a, b, c)));
            }
            store_frame(i, M);
        }
    }

   private:
    TrilinearForm psi_;
};

// Row i of T1^-1 is tau_i - sum_j A_{i,j} tau_{r+j} (tau = rows of T0^-1); the
// slice is W^T M(xi_i) W with M(xi)[b][c] = sum_k xi_k b_{k,b,c}.
class AlgebraEngine final : public SliceEngine {
   public:
    AlgebraEngine(const AlgebraSC& b, std::size_t r) : SliceEngine(b.field(), b.n(), r, TupleShape::general), b_(b) {}

    void prepare(const Scalar* a) override {
        const Field& F = field();
        const std::size_t n = this->n(), l = this->l(), nn = n * n;
        for (std::size_t i = 0; i < r(); ++i) {
            std::vector<Scalar>& out = frames_[i];
            std::copy(base_[i].begin(), base_[i].end(), out.begin());
            for (std::size_t j = 0; j < l; ++j) {
                const Scalar c = a[i * l + j];
                if (!c) continue;
                const Scalar* mc = F.mul_row(F.neg(c));
                const std::vector<Scalar>& src = base_[r() + j];
                for (std::size_t x = 0; x < nn; ++x) out[x] = F.add(out[x], mc[src[x]]);
            }
        }
    }

   protected:
    void build_frame(const Matrix& t0, const Matrix& t0_inv) override {
        const Field& F = field();
        const std::size_t n = this->n();
        base_.assign(n, std::vector<Scalar>(n * n, 0));
        const Matrix t0t = t0.transpose();
        for (std::size_t t = 0; t < n; ++t) {
            Matrix M(F, n, n);
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar xk = t0_inv(t, k);
                if (!xk) continue;
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = 0; y < n; ++y) M(x, y) = F.add(M(x, y), F.mul(xk, b_.tensor()(k, x, y)));
            }
            Matrix B = t0t * M * t0;
            std::copy(B.entries().begin(), B.entries().end(), base_[t].begin());
        }
    }

   private:
    AlgebraSC b_;
    std::vector<std::vector<Scalar>> base_;
};

}  // namespace

std::unique_ptr<SliceEngine> make_poly_engine(const Poly& g, std::size_t r) { return std::make_unique<PolyEngine>(g, r); }
std::unique_ptr<SliceEngine> make_trilinear_engine(const TrilinearForm& psi, std::size_t r) {
    return std::make_unique<TrilinearEngine>(psi, r);
}
std::unique_ptr<SliceEngine> make_algebra_engine(const AlgebraSC& b, std::size_t r) {
    return std::make_unique<AlgebraEngine>(b, r);
}

// --- Driver ---------------------------------------------------------------------------

namespace {

// Rank and determinant of an l x l matrix; `m` is destroyed.
void rank_det(const Field& F, std::size_t l, Scalar* m, std::size_t& rk, Scalar& det) {
    rk = 0;
    det = 1;
    for (std::size_t c = 0; c < l; ++c) {
        std::size_t p = rk;
        while (p < l && m[p * l + c] == 0) ++p;
        if (p == l) {
            det = 0;
            continue;
        }
        if (p != rk) {
            for (std::size_t j = 0; j < l; ++j) std::swap(m[p * l + j], m[rk * l + j]);
            det = F.neg(det);
        }
        const Scalar piv = m[rk * l + c];
        det = F.mul(det, piv);
        const Scalar inv = F.inv(piv);
        for (std::size_t i = rk + 1; i < l; ++i) {
            const Scalar f = m[i * l + c];
            if (!f) continue;
            const Scalar* mf = F.mul_row(F.neg(F.mul(f, inv)));
            for (std::size_t j = c; j < l; ++j) m[i * l + j] = F.add(m[i * l + j], mf[m[rk * l + j]]);
        }
        ++rk;
    }
}

// Congruence invariants of the pencil: for each probe combination sum_i w_i C_i
// the rank, and det up to one common square factor det(R)^2.
class PencilProbe {
   public:
    explicit PencilProbe(const MatrixTuple& C) : F_(&C.field()), l_(C.dim()), m_(C.size()) {
        const Field& F = *F_;
        for (std::size_t i = 0; i < m_; ++i) {
            std::vector<Scalar> w(m_, 0);
            w[i] = 1;
            combos_.push_back(w);
        }
        for (std::size_t i = 1; i < m_; ++i)
            for (unsigned lam = 1; lam < F.q(); ++lam) {
                std::vector<Scalar> w(m_, 0);
                w[0] = 1;
                w[i] = static_cast<Scalar>(lam);
                combos_.push_back(w);
            }
        std::vector<const Scalar*> mats;
        for (const Matrix& c : C) mats.push_back(c.entries().data());
        buf_.resize(l_ * l_);
        for (const auto& w : combos_) {
            combine(w, mats.data());
            std::size_t rk;
            Scalar det;
            rank_det(F, l_, buf_.data(), rk, det);
            ranks_.push_back(rk);
            dets_.push_back(det);
        }
    }

    std::size_t combos() const noexcept { return combos_.size(); }
    /// Combination index c only needs the D_i with w_i != 0; combos < m are
    /// unit vectors.
    bool check(std::size_t c, const Scalar* const* d, Scalar& ratio) {
        combine(combos_[c], d);
        std::size_t rk;
        Scalar det;
        rank_det(*F_, l_, buf_.data(), rk, det);
        if (rk != ranks_[c]) return false;
        if (!det) return true;
        const Scalar s = F_->div(dets_[c], det);
        if (!ratio) {
            if (!F_->is_square(s)) return false;
            ratio = s;
            return true;
        }
        return s == ratio;
    }

   private:
    void combine(const std::vector<Scalar>& w, const Scalar* const* mats) {
        const Field& F = *F_;
        std::fill(buf_.begin(), buf_.end(), 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (!w[i]) continue;
            const Scalar* mw = F.mul_row(w[i]);
            for (std::size_t x = 0; x < l_ * l_; ++x) buf_[x] = F.add(buf_[x], mw[mats[i][x]]);
        }
    }

    const Field* F_;
    std::size_t l_, m_;
    std::vector<std::vector<Scalar>> combos_;
    std::vector<std::size_t> ranks_;
    std::vector<Scalar> dets_;
    std::vector<Scalar> buf_;
};

class Verifier {
   public:
    virtual ~Verifier() = default;
    /// Full defining equation; cheap rejections first.
    virtual bool accept(const Matrix& T) const = 0;
};

class PolyVerifier final : public Verifier {
   public:
    PolyVerifier(const Poly& f, const Poly& g) : f_(f), g_(g) {
        Rng rng(0x5eed);
        const Field& F = f.field();
        for (int s = 0; s < 8; ++s) {
            std::vector<Scalar> x(f.n());
            for (Scalar& v : x) v = rng.element(F);
            fvals_.push_back(f.evaluate(x));
            points_.push_back(std::move(x));
        }
    }
    bool accept(const Matrix& T) const override {
        for (std::size_t s = 0; s < points_.size(); ++s)
            if (g_.evaluate(mul_vec(T, points_[s])) != fvals_[s]) return false;
        return poly_act(g_, T) == f_;
    }

   private:
    Poly f_, g_;
    std::vector<std::vector<Scalar>> points_;
    std::vector<Scalar> fvals_;
};

class TrilinearVerifier final : public Verifier {
   public:
    TrilinearVerifier(const TrilinearForm& phi, const TrilinearForm& psi) : phi_(phi), psi_(psi) {}
    bool accept(const Matrix& T) const override {
        const std::size_t n = phi_.n();
        // a few entries first: phi(e_a, e_b, e_c) = psi(T e_a, T e_b, T e_c)
        for (std::size_t s = 0; s < std::min<std::size_t>(n, 4); ++s) {
            const std::size_t a = s, b = (s + 1) % n, c = (s + 2) % n;
            if (psi_.evaluate(T.column(a).entries(), T.column(b).entries(), T.column(c).entries()) != phi_(a, b, c))
                return false;
        }
        return trilinear_act(psi_, T) == phi_;
    }

   private:
    TrilinearForm phi_, psi_;
};

class AlgebraVerifier final : public Verifier {
   public:
    AlgebraVerifier(const AlgebraSC& a, const AlgebraSC& b) : a_(a), b_(b) {}
    bool accept(const Matrix& T) const override { return algebra_act(b_, T) == a_; }

   private:
    AlgebraSC a_, b_;
};

struct Problem {
    const Field* F = nullptr;
    std::size_t n = 0, r = 0;
    MatrixTuple C;
    std::function<std::unique_ptr<SliceEngine>()> make_engine;
    std::shared_ptr<const Verifier> verifier;
};

struct Shared {
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> t1_issued{0};
    std::atomic<bool> truncated{false};
    std::mutex mutex;
    std::optional<Matrix> witness;
};

std::uint64_t u_count(const Field& F, std::size_t n, std::size_t r) {
    try {
        const std::uint64_t qn = checked_pow(F.q(), n);
        unsigned __int128 c = 1;
        for (std::size_t i = 0; i < r; ++i) {
            c *= qn - checked_pow(F.q(), i);
            if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
        }
        return static_cast<std::uint64_t>(c);
    } catch (const std::overflow_error&) {
        return std::numeric_limits<std::uint64_t>::max();
    }
}

void run_worker(const Problem& pb, const SolveConfig& cfg, std::size_t adj_dim_c, unsigned worker, unsigned jobs,
                Shared& shared, SolveCounters& counters) {
    const Field& F = *pb.F;
    const std::size_t n = pb.n, r = pb.r, l = n - r, m = r;
    auto engine = pb.make_engine();
    PencilProbe probe(pb.C);

    const std::uint64_t n_u = u_count(F, n, r);
    const std::uint64_t offset = cfg.seed % std::min<std::uint64_t>(n_u, std::uint64_t{1} << 24);
    const std::uint64_t per_u = checked_pow(F.q(), r * l);

    std::vector<Scalar> a(r * l, 0);
    std::vector<std::vector<Scalar>> d(m, std::vector<Scalar>(l * l));
    std::vector<const Scalar*> dptr(m);
    for (std::size_t i = 0; i < m; ++i) dptr[i] = d[i].data();
    const Matrix I_r = Matrix::identity(F, r);

    // process one U-tuple; false when the run must stop
    auto process = [&](const Matrix& u) -> bool {
        ++counters.u_tuples;
        engine->set_frame(u);
        std::fill(a.begin(), a.end(), 0);
        for (std::uint64_t idx = 0; idx < per_u; ++idx) {
            if (idx) {
                // odometer over A, last entry fastest
                for (std::size_t t = a.size(); t-- > 0;) {
                    if (++a[t] < F.q()) break;
                    a[t] = 0;
                }
            }
            if (shared.stop.load(std::memory_order_relaxed)) return false;
            if (cfg.t1_limit && shared.t1_issued.fetch_add(1, std::memory_order_relaxed) >= cfg.t1_limit) {
                shared.truncated = true;
                return false;
            }
            ++counters.t1_tried;
            engine->prepare(a.data());

            Scalar ratio = 0;
            engine->slice(0, a.data(), d[0].data());
            if (!probe.check(0, dptr.data(), ratio)) {
                ++counters.probe_rejected;
                continue;
            }
            for (std::size_t i = 1; i < m; ++i) engine->slice(i, a.data(), d[i].data());
            bool ok = true;
            for (std::size_t c = 1; c < probe.combos() && ok; ++c) ok = probe.check(c, dptr.data(), ratio);
            if (!ok) {
                ++counters.probe_rejected;
                continue;
            }

            std::vector<Matrix> dm;
            dm.reserve(m);
            for (std::size_t i = 0; i < m; ++i) dm.emplace_back(F, l, l, d[i]);
            MatrixTuple D(F, TupleShape::general, l, std::move(dm));
            const std::size_t dim = adj_dimension(pb.C, D);
            counters.max_adj_dim = std::max(counters.max_adj_dim, dim);
            if (dim != adj_dim_c) {
                ++counters.adj_dim_rejected;
                continue;
            }
            ++counters.iso_solves;
            IsoResult iso = iso_set(pb.C, D, cfg.budget);
            if (iso.verdict == IsoVerdict::GenericityFailed) {
                ++counters.genericity_branches;
                continue;
            }
            if (iso.witnesses.empty()) continue;

            Matrix A(F, r, l, a);
            Matrix na = Matrix::identity(F, n);
            na.set_block(0, r, A);
            const Matrix t1 = engine->frame() * na;
            for (const Matrix& R : iso.witnesses) {
                ++counters.candidates_checked;
                const Matrix T = t1 * block_diag({&I_r, &R});
                if (!pb.verifier->accept(T)) continue;
                std::lock_guard lock(shared.mutex);
                if (!shared.witness) shared.witness = T;
                shared.stop = true;
                return false;
            }
        }
        return true;
    };

    // cyclic order starting at `offset`; worker w takes positions w, w + jobs, ...
    std::uint64_t position = 0;
    for (int pass = 0; pass < 2; ++pass) {
        IndependentTuples tuples(F, n, r);
        std::uint64_t k = 0;
        while (tuples.next()) {
            const bool in_pass = pass == 0 ? k >= offset : k < offset;
            if (pass == 1 && k >= offset) break;
            ++k;
            if (!in_pass) continue;
            if (position++ % jobs != worker) continue;
            if (!process(tuples.as_columns())) return;
        }
    }
}

SolveReport drive(const Problem& pb, const SolveConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.budget == 0) throw std::invalid_argument("budget must be positive");
    SolveReport rep;
    const std::size_t adj_dim_c = adj_dimension(pb.C, pb.C);
    rep.counters.adj_dim = adj_dim_c;

    bool over = false;
    try {
        over = checked_pow(pb.F->q(), adj_dim_c) > cfg.budget;
    } catch (const std::overflow_error&) {
        over = true;
    }
    if (over) {
        // every branch that could carry a witness has this Adj dimension
        rep.verdict = Verdict::GenericityFailed;
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }

    Shared shared;
    const unsigned jobs = std::max(1u, cfg.jobs);
    std::vector<SolveCounters> counters(jobs);
    if (jobs == 1) {
        run_worker(pb, cfg, adj_dim_c, 0, 1, shared, counters[0]);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(jobs);
        for (unsigned w = 0; w < jobs; ++w)
            threads.emplace_back([&, w] {
                try {
                    run_worker(pb, cfg, adj_dim_c, w, jobs, shared, counters[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                    shared.stop = true;
                }
            });
        for (auto& t : threads) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (const auto& c : counters) rep.counters += c;

    if (shared.witness) {
        if (!pb.verifier->accept(*shared.witness)) throw std::logic_error("solver produced an invalid witness");
        rep.verdict = Verdict::Isomorphic;
        rep.witness = std::move(shared.witness);
    } else if (shared.truncated) {
        rep.verdict = Verdict::BudgetExceeded;
    } else if (rep.counters.genericity_branches) {
        rep.verdict = Verdict::GenericityFailed;
    } else {
        rep.verdict = Verdict::NotIsomorphic;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

void check_r(std::size_t r, std::size_t n) {
    if (r < 1 || r >= n) throw std::invalid_argument("slice count r must satisfy 1 <= r < n");
}

MatrixTuple form_slices(const Poly& top, std::size_t r) {
    const Field& F = top.field();
    std::vector<Matrix> mats;
    for (const Poly& c : quad_slices(top, r)) mats.push_back(F.is_char2() ? quad_to_alternating(c) : quad_to_symmetric(c));
    return MatrixTuple(F, F.is_char2() ? TupleShape::alternating : TupleShape::symmetric, top.n() - r, std::move(mats));
}

SolveReport solve_poly(const Poly& f, const Poly& g, unsigned d, const SolveConfig& cfg) {
    check_r(cfg.r, f.n());
    Problem pb;
    pb.F = &f.field();
    pb.n = f.n();
    pb.r = cfg.r;
    const Poly ftop = f.homogeneous_part(d), gtop = g.homogeneous_part(d);
    pb.C = form_slices(ftop, cfg.r);
    pb.make_engine = [gtop, r = cfg.r] { return make_poly_engine(gtop, r); };
    pb.verifier = std::make_shared<PolyVerifier>(f, g);
    return drive(pb, cfg);
}

void check_polys(const Poly& f, const Poly& g) {
    if (f.field_ptr() != g.field_ptr()) throw std::invalid_argument("inputs are over different fields");
    if (f.n() != g.n()) throw std::invalid_argument("inputs have different numbers of variables");
}

}  // namespace

SolveReport solve_degree_d(const Poly& f, const Poly& g, unsigned d, const SolveConfig& cfg) {
    check_polys(f, g);
    if (d < 3 || d > kMaxDegree) throw std::invalid_argument("degree must be 3, 4 or 5");
    for (const Poly* p : {&f, &g})
        if (!p->homogeneous() || p->degree_bound() != d) throw std::invalid_argument("input is not a homogeneous form of the stated degree");
    return solve_poly(f, g, d, cfg);
}

SolveReport solve_cubic(const Poly& f, const Poly& g, const SolveConfig& cfg) { return solve_degree_d(f, g, 3, cfg); }

SolveReport solve_inhomogeneous(const Poly& f, const Poly& g, unsigned d, const SolveConfig& cfg) {
    check_polys(f, g);
    if (d < 3 || d > kMaxDegree) throw std::invalid_argument("degree must be 3, 4 or 5");
    for (const Poly* p : {&f, &g})
        if (p->degree_bound() > d) throw std::invalid_argument("input exceeds the stated degree");
    if (f.constant_term() != g.constant_term()) {
        SolveReport rep;
        rep.verdict = Verdict::NotIsomorphic;
        return rep;
    }
    // widen both to a common non-homogeneous container of degree d
    auto widen = [d](const Poly& p) {
        Poly w(p.field(), p.n(), d, false);
        for (const auto& [m, c] : p.terms()) w.set(m, c);
        return w;
    };
    return solve_poly(widen(f), widen(g), d, cfg);
}

SolveReport solve_trilinear(const TrilinearForm& phi, const TrilinearForm& psi, const SolveConfig& cfg) {
    if (&phi.field() != &psi.field() || phi.n() != psi.n()) throw std::invalid_argument("forms differ in size or field");
    check_r(cfg.r, phi.n());
    Problem pb;
    pb.F = &phi.field();
    pb.n = phi.n();
    pb.r = cfg.r;
    pb.C = trilinear_slices(phi, cfg.r);
    pb.make_engine = [psi, r = cfg.r] { return make_trilinear_engine(psi, r); };
    pb.verifier = std::make_shared<TrilinearVerifier>(phi, psi);
    return drive(pb, cfg);
}

SolveReport solve_algebra(const AlgebraSC& a, const AlgebraSC& b, const SolveConfig& cfg) {
    if (&a.field() != &b.field() || a.n() != b.n()) throw std::invalid_argument("algebras differ in size or field");
    check_r(cfg.r, a.n());
    Problem pb;
    pb.F = &a.field();
    pb.n = a.n();
    pb.r = cfg.r;
    pb.C = trilinear_slices(TrilinearForm(a.tensor()), cfg.r);
    pb.make_engine = [b, r = cfg.r] { return make_algebra_engine(b, r); };
    pb.verifier = std::make_shared<AlgebraVerifier>(a, b);
    return drive(pb, cfg);
}

}  // namespace formiso

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
#include "formiso/stats.hpp"

#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "formiso/adjiso.hpp"

namespace formiso {

Fraction Fraction::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Fraction::str() const { return std::to_string(num) + "/" + std::to_string(den); }

void ExperimentReport::write_text(std::ostream& out) const {
    out << "experiment=" << name << '\n';
    for (const auto& [k, v] : params) out << k << '=' << v << '\n';
    out << "mode=" << (exact ? "exhaustive" : "sampled") << '\n';
    out << "samples=" << samples << '\n';
    out << "hits=" << hits << '\n';
    if (exact_frequency) out << "frequency=" << exact_frequency->str() << '\n';
    else out << "frequency=" << frequency() << '\n';
    for (const auto& [k, v] : histogram) out << "histogram." << k << '=' << v << '\n';
    for (const auto& [k, v] : derived) out << k << '=' << v << '\n';
}

void ExperimentReport::write_histogram_csv(std::ostream& out) const {
    out << "value,count\n";
    for (const auto& [k, v] : histogram) out << k << ',' << v << '\n';
}

namespace {

template <class T>
std::string str(const T& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 24;

std::uint64_t space_size(unsigned q, std::uint64_t free_entries) {
    try {
        const std::uint64_t n = checked_pow(q, free_entries);
        if (n <= kExhaustiveLimit) return n;
    } catch (const std::overflow_error&) {
    }
    throw std::length_error("exhaustive enumeration exceeds 2^24 points");
}

// Feeds a model builder with either random or enumerated field elements.
class ScalarSource {
   public:
    ScalarSource(const Field& F, Rng* rng) : F_(&F), rng_(rng) {}
    void load(std::uint64_t code, std::size_t count) {
        digits_.assign(count, 0);
        decode_vector(*F_, code, digits_);
        pos_ = 0;
    }
    Scalar operator()() { return rng_ ? rng_->element(*F_) : digits_[pos_++]; }

   private:
    const Field* F_;
    Rng* rng_;
    std::vector<Scalar> digits_;
    std::size_t pos_ = 0;
};

}  // namespace

ExperimentReport adj_dim_experiment(std::size_t l, std::size_t r, unsigned q, std::uint64_t samples, std::uint64_t seed,
                                    TupleShape shape) {
    if (l == 0) throw std::invalid_argument("matrix size must be positive");
    const Field& F = Field::of_order(q);
    ExperimentReport rep;
    rep.name = "adj-dim";
    rep.params = {{"l", str(l)}, {"r", str(r)}, {"q", str(q)}, {"seed", str(seed)}, {"shape", to_string(shape)}};
    const Rng root(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
        Rng rng = root.substream(s);
        const MatrixTuple c = random_tuple(F, shape, l, r, rng);
        const std::size_t dim = adj_dimension(c, c);
        ++rep.histogram[dim];
        rep.hits += dim <= l;
    }
    rep.samples = samples;
    return rep;
}

bool stability_check(const MatrixTuple& d, std::uint64_t budget) {
    const Field& F = d.field();
    const std::size_t l = d.dim(), m = d.size();
    std::uint64_t total = 0;
    for (std::size_t k = 1; k < l; ++k) {
        total += gaussian_binomial(static_cast<unsigned>(l), static_cast<unsigned>(k), F.q());
        if (total > budget) throw std::length_error("subspace count exceeds the stability budget");
    }
    Matrix u;
    for (std::size_t k = 1; k < l; ++k) {
        SubspaceEnumerator subs(F, l, k);
        while (subs.next(u)) {
            // columns D_i u_j for every basis vector u_j
            const Matrix ut = u.transpose();
            Matrix img(F, l, m * k);
            for (std::size_t i = 0; i < m; ++i) img.set_block(0, i * k, d[i] * ut);
            if (rank(img) <= k) return false;
        }
    }
    return true;
}

ExperimentReport rank_bound_experiment(std::size_t l, std::size_t d, std::size_t r, unsigned q, std::uint64_t samples,
                                       std::uint64_t seed, RankModel model) {
    if (d == 0 || d > l) throw std::invalid_argument("need 1 <= d <= l");
    const Field& F = Field::of_order(q);
    ExperimentReport rep;
    rep.name = "rank-bound";
    const bool sym = model == RankModel::symmetric_blocks;
    const std::size_t blocks = sym ? r : 4;
    rep.params = {{"l", str(l)},   {"d", str(d)},       {"r", str(blocks)},
                  {"q", str(q)},   {"seed", str(seed)}, {"model", sym ? "symmetric-blocks" : "uniform"}};
    const std::size_t free_entries = sym ? blocks * (d * (d + 1) / 2 + (l - d) * d) : l * 4 * d;

    auto build = [&](ScalarSource& next) {
        Matrix c(F, l, blocks * d);
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t c0 = b * d;
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    if (sym && i < d) {
                        if (j < i) continue;
                        c(i, c0 + j) = c(j, c0 + i) = next();
                    } else {
                        c(i, c0 + j) = next();
                    }
                }
        }
        return c;
    };

    auto count = [&](const Matrix& c) {
        const std::size_t rk = rank(c);
        ++rep.histogram[rk];
        rep.hits += rk <= d;
    };

    if (samples == 0) {
        const std::uint64_t total = space_size(q, free_entries);
        ScalarSource src(F, nullptr);
        for (std::uint64_t code = 0; code < total; ++code) {
            src.load(code, free_entries);
            count(build(src));
        }
        rep.samples = total;
        rep.exact = true;
        rep.exact_frequency = Fraction::make(rep.hits, total);
    } else {
        const Rng root(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            Rng rng = root.substream(s);
            ScalarSource src(F, &rng);
            count(build(src));
        }
        rep.samples = samples;
    }
    const std::uint64_t gb = gaussian_binomial(static_cast<unsigned>(l), static_cast<unsigned>(d), q);
    rep.derived.emplace_back("subspaces", str(gb));
    if (rep.exact_frequency) {
        const unsigned __int128 num = static_cast<unsigned __int128>(rep.exact_frequency->num) * gb;
        const std::uint64_t den = rep.exact_frequency->den;
        const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(num % den), den);
        const unsigned __int128 rn = num / g;
        if (rn <= std::numeric_limits<std::uint64_t>::max())
            rep.derived.emplace_back("product", Fraction{static_cast<std::uint64_t>(rn), den / g}.str());
    }
    rep.derived.emplace_back("product_value", str(rep.frequency() * double(gb)));
    return rep;
}

Matrix merge_symmetric(const Matrix& x, const Matrix& y) {
    if (!x.is_square() || x.rows() != y.rows() || !y.is_square() || x.field_ptr() != y.field_ptr())
        throw std::invalid_argument("merge needs two square matrices of one size");
    if (!x.is_symmetric() || !y.is_symmetric()) throw std::invalid_argument("merge needs symmetric inputs");
    const Field& F = x.field();
    const std::size_t d = x.rows();
    Matrix z(F, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) z(i, j) = F.add(x(i, j), y(i, (j + 1) % d));
    return z;
}

ExperimentReport merge_uniformity(std::size_t d, unsigned q, std::uint64_t samples, std::uint64_t seed) {
    if (d == 0) throw std::invalid_argument("d must be positive");
    const Field& F = Field::of_order(q);
    ExperimentReport rep;
    rep.name = "merge";
    rep.params = {{"d", str(d)}, {"q", str(q)}, {"seed", str(seed)}};
    const std::uint64_t cells = checked_pow(q, d * d);
    if (cells > kExhaustiveLimit) throw std::length_error("matrix space exceeds 2^24 points");
    std::vector<std::uint64_t> counts(cells, 0);
    const std::size_t tri = d * (d + 1) / 2;

    auto symmetric_from = [&](ScalarSource& next) {
        Matrix m(F, d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = next();
        return m;
    };
    auto record = [&](ScalarSource& next) {
        const Matrix x = symmetric_from(next);
        const Matrix y = symmetric_from(next);
        ++counts[encode_vector(F, merge_symmetric(x, y).entries())];
    };

    if (samples == 0) {
        const std::uint64_t total = space_size(q, 2 * tri);
        ScalarSource src(F, nullptr);
        for (std::uint64_t code = 0; code < total; ++code) {
            src.load(code, 2 * tri);
            record(src);
        }
        rep.samples = total;
        rep.exact = true;
    } else {
        const Rng root(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            Rng rng = root.substream(s);
            ScalarSource src(F, &rng);
            record(src);
        }
        rep.samples = samples;
    }
    rep.hits = rep.samples;
    // histogram: number of matrices of M(d, q) reached exactly k times
    for (std::uint64_t c : counts) ++rep.histogram[c];
    const bool uniform = rep.histogram.size() == 1;
    rep.derived.emplace_back("matrices", str(cells));
    rep.derived.emplace_back("uniform", uniform ? "true" : "false");
    if (uniform) rep.derived.emplace_back("count_per_matrix", str(rep.histogram.begin()->first));
    return rep;
}

}  // namespace formiso

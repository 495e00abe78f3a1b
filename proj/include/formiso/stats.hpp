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
#ifndef FORMISO_STATS_HPP
#define FORMISO_STATS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formiso/linalg.hpp"

namespace formiso {

/// Reduced non-negative fraction.
struct Fraction {
    std::uint64_t num = 0, den = 1;
    static Fraction make(std::uint64_t num, std::uint64_t den);
    double value() const noexcept { return den ? double(num) / double(den) : 0.0; }
    std::string str() const;
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;  ///< in insertion order
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    bool exact = false;                 ///< exhaustive enumeration rather than sampling
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::optional<Fraction> exact_frequency;
    std::vector<std::pair<std::string, std::string>> derived;

    double frequency() const noexcept { return samples ? double(hits) / double(samples) : 0.0; }
    /// One `key=value` per line.
    void write_text(std::ostream& out) const;
    /// Header `value,count` plus one row per histogram bucket.
    void write_histogram_csv(std::ostream& out) const;
};

/// Samples uniform tuples in S(l, q)^r (shape symmetric) or Lambda(l, q)^r
/// (shape alternating); a hit is dim Adj(C) <= l. The histogram is keyed by
/// dim Adj. Sample s draws from Rng(seed).substream(s).
ExperimentReport adj_dim_experiment(std::size_t l, std::size_t r, unsigned q, std::uint64_t samples,
                                    std::uint64_t seed, TupleShape shape = TupleShape::symmetric);

/// dim D(U) > dim U for every U with 1 <= dim U <= l - 1, where D(U) is the span
/// of all D_i U. Exhaustive; throws std::length_error when the number of
/// subspaces exceeds `budget`.
bool stability_check(const MatrixTuple& d, std::uint64_t budget = std::uint64_t{1} << 20);

enum class RankModel {
    symmetric_blocks,  ///< r blocks [S; M] with S in S(d, q) and M in M((l-d) x d, q)
    uniform,           ///< one uniform l x 4d matrix
};

/// Pr[rk <= d] for the chosen model, and its product with the number of
/// d-dimensional subspaces of F_q^l. With samples = 0 the whole model space is
/// enumerated (throws std::length_error beyond 2^24 points).
ExperimentReport rank_bound_experiment(std::size_t l, std::size_t d, std::size_t r, unsigned q, std::uint64_t samples,
                                       std::uint64_t seed, RankModel model = RankModel::symmetric_blocks);

/// Z[i][j] = X[i][j] + Y[i][(j+1) mod d] (0-based) for symmetric X and Y.
Matrix merge_symmetric(const Matrix& x, const Matrix& y);

/// Distribution of merge_symmetric(X, Y) over M(d, q): exhaustive when
/// samples = 0 (throws std::length_error if q^(d(d+1)) > 2^24), otherwise
/// sampled. A hit is a pair; `uniform` is recorded in `derived`.
ExperimentReport merge_uniformity(std::size_t d, unsigned q, std::uint64_t samples = 0, std::uint64_t seed = 0);

}  // namespace formiso

#endif

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
#ifndef FORMISO_GFQ_HPP
#define FORMISO_GFQ_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace formiso {

/// Field element code in [0, q). Code 0 is zero, code 1 is one; for q = p^e the
/// code sum_i c_i p^i stands for the residue class of sum_i c_i x^i modulo the
/// field's defining polynomial.
using Scalar = std::uint8_t;

/// Table-driven arithmetic context for F_q with q = p^e <= 256.
///
/// Contexts are interned: `Field::get(p, e)` always returns the same object for
/// the same (p, e), so fields compare by address. A context is immutable once
/// built and may be shared between threads.
class Field {
   public:
    /// Returns F_{p^e}. Throws std::invalid_argument if p is not prime, e == 0,
    /// or p^e > 256.
    static const Field& get(unsigned p, unsigned e = 1);
    /// Returns the field of order q (q must be a prime power <= 256).
    static const Field& of_order(unsigned q);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    unsigned p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    unsigned q() const noexcept { return q_; }
    bool is_char2() const noexcept { return p_ == 2; }

    Scalar add(Scalar a, Scalar b) const noexcept { return add_[a * q_ + b]; }
    Scalar sub(Scalar a, Scalar b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Scalar mul(Scalar a, Scalar b) const noexcept { return mul_[a * q_ + b]; }
    Scalar neg(Scalar a) const noexcept { return neg_[a]; }
    /// Throws std::domain_error for a == 0.
    Scalar inv(Scalar a) const;
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
    Scalar pow(Scalar a, unsigned k) const noexcept;
    bool is_square(Scalar a) const noexcept { return square_[a] != 0; }
    bool contains(unsigned code) const noexcept { return code < q_; }

    /// Image of an integer under Z -> F_p -> F_q.
    Scalar from_int(long long v) const noexcept;

    /// Row of the multiplication table for a fixed left factor.
    const Scalar* mul_row(Scalar a) const noexcept { return mul_.data() + a * q_; }
    const Scalar* add_row(Scalar a) const noexcept { return add_.data() + a * q_; }

    /// Monic defining polynomial, coefficients from x^0 up to x^e. For e == 1
    /// this is {0, 1}.
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

   private:
    Field(unsigned p, unsigned e);

    unsigned p_, e_, q_;
    std::vector<unsigned> modulus_;
    std::vector<Scalar> add_, mul_, neg_, inv_, square_;
};

bool is_prime(unsigned n) noexcept;

}  // namespace formiso

#endif

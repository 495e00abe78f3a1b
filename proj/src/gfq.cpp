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
#include "formiso/gfq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace formiso {

namespace {

// Conway polynomials, coefficients from x^0 upward. Changing any entry changes
// the meaning of every serialized instance over that field.
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& defining_polynomials() {
    static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return table;
}

std::vector<unsigned> digits(unsigned code, unsigned p, unsigned e) {
    std::vector<unsigned> d(e);
    for (unsigned i = 0; i < e; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
    unsigned code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
    return code;
}

}  // namespace

bool is_prime(unsigned n) noexcept {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const Field& Field::get(unsigned p, unsigned e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw std::invalid_argument("field extension degree must be positive");
    unsigned long long q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > 256) throw std::invalid_argument("field order exceeds 256");
    }

    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Field>> registry;
    std::lock_guard lock(mutex);
    auto& slot = registry[{p, e}];
    if (!slot) slot.reset(new Field(p, e));
    return *slot;
}

const Field& Field::of_order(unsigned q) {
    if (q < 2 || q > 256) throw std::invalid_argument("field order " + std::to_string(q) + " out of range [2, 256]");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
    return get(p, e);
}

Field::Field(unsigned p, unsigned e) : p_(p), e_(e), q_(1) {
    for (unsigned i = 0; i < e; ++i) q_ *= p;
    if (e == 1) {
        modulus_ = {0, 1};
    } else {
        auto it = defining_polynomials().find({p, e});
        if (it == defining_polynomials().end()) throw std::logic_error("no defining polynomial for this field");
        modulus_ = it->second;
    }

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    square_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        auto da = digits(a, p, e);
        for (unsigned b = 0; b < q_; ++b) {
            auto db = digits(b, p, e);
            std::vector<unsigned> s(e);
            for (unsigned i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
            add_[a * q_ + b] = static_cast<Scalar>(undigits(s, p));

            // schoolbook product, then reduce by the monic modulus
            std::vector<unsigned> prod(2 * e - 1, 0);
            for (unsigned i = 0; i < e; ++i)
                for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (std::size_t k = prod.size(); k-- > e;) {
                unsigned c = prod[k];
                if (c == 0) continue;
                for (unsigned i = 0; i <= e; ++i) {
                    unsigned idx = k - e + i;
                    prod[idx] = (prod[idx] + (p - c) * modulus_[i]) % p;
                }
            }
            prod.resize(e);
            mul_[a * q_ + b] = static_cast<Scalar>(undigits(prod, p));
        }
    }
    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Scalar>(b);
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Scalar>(b);
        }
        square_[mul_[a * q_ + a]] = 1;
    }
    for (unsigned a = 1; a < q_; ++a)
        if (mul_[a * q_ + inv_[a]] != 1) throw std::logic_error("defining polynomial is reducible");
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
}

Scalar Field::pow(Scalar a, unsigned k) const noexcept {
    Scalar r = 1;
    while (k) {
        if (k & 1u) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

Scalar Field::from_int(long long v) const noexcept {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<Scalar>(m);
}

}  // namespace formiso

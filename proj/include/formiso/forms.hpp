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
#ifndef FORMISO_FORMS_HPP
#define FORMISO_FORMS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "formiso/linalg.hpp"
#include "formiso/tensor3.hpp"

namespace formiso {

/// Exponent vector (e_1, ..., e_n).
using Monomial = std::vector<std::uint8_t>;

inline constexpr unsigned kMaxDegree = 5;

/// Polynomial in n variables of degree at most d <= 5, stored as a sparse map
/// from exponent vectors to nonzero coefficients. A homogeneous polynomial
/// only admits monomials of total degree exactly d.
class Poly {
   public:
    Poly() = default;
    Poly(const Field& F, std::size_t n, unsigned d, bool homogeneous = true);

    const Field& field() const noexcept { return *field_; }
    const Field* field_ptr() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    unsigned degree_bound() const noexcept { return d_; }
    bool homogeneous() const noexcept { return homogeneous_; }
    const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Scalar coeff(const Monomial& m) const;
    /// Throws std::invalid_argument for a monomial the polynomial cannot hold.
    void set(const Monomial& m, Scalar c);
    void add_term(const Monomial& m, Scalar c);

    Scalar evaluate(std::span<const Scalar> x) const;
    /// Degree-k piece as a homogeneous polynomial of degree k.
    Poly homogeneous_part(unsigned k) const;
    Scalar constant_term() const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.d_ == b.d_ && a.homogeneous_ == b.homogeneous_ &&
               a.terms_ == b.terms_;
    }

   private:
    void check(const Monomial& m) const;

    const Field* field_ = nullptr;
    std::size_t n_ = 0;
    unsigned d_ = 0;
    bool homogeneous_ = true;
    std::map<Monomial, Scalar> terms_;
};

/// Total degree of a monomial.
unsigned degree(const Monomial& m) noexcept;

/// f o A: substitutes x_i -> sum_j A_{i,j} x_j and expands. A right action:
/// (f o A) o B = f o (A B).
Poly poly_act(const Poly& f, const Matrix& A);

enum class FormTag { general, symmetric, alternating };
const char* to_string(FormTag t) noexcept;

/// Trilinear form phi(u, v, w) = sum phi_{ijk} u_i v_j w_k on F^n.
class TrilinearForm {
   public:
    TrilinearForm() = default;
    /// Validates cubicality and that the tag matches the tensor.
    explicit TrilinearForm(Tensor3 t, FormTag tag = FormTag::general);

    const Field& field() const noexcept { return t_.field(); }
    std::size_t n() const noexcept { return t_.dim(0); }
    FormTag tag() const noexcept { return tag_; }
    const Tensor3& tensor() const noexcept { return t_; }
    Scalar operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return t_(i, j, k); }
    Scalar evaluate(std::span<const Scalar> u, std::span<const Scalar> v, std::span<const Scalar> w) const;

    friend bool operator==(const TrilinearForm& a, const TrilinearForm& b) noexcept { return a.t_ == b.t_; }

   private:
    Tensor3 t_;
    FormTag tag_ = FormTag::general;
};

/// Structure constants of a bilinear product on F^n. Entry (k, i, j) is the
/// k-th coordinate of e_i * e_j, so axis 0 is the output (dual) slot.
class AlgebraSC {
   public:
    AlgebraSC() = default;
    explicit AlgebraSC(Tensor3 t);

    const Field& field() const noexcept { return t_.field(); }
    std::size_t n() const noexcept { return t_.dim(0); }
    const Tensor3& tensor() const noexcept { return t_; }
    /// Coordinates of u * v.
    std::vector<Scalar> multiply(std::span<const Scalar> u, std::span<const Scalar> v) const;

    friend bool operator==(const AlgebraSC& a, const AlgebraSC& b) noexcept { return a.t_ == b.t_; }

   private:
    Tensor3 t_;
};

/// Symmetric phi_f with phi_f(v, v, v) = f(v). Requires characteristic >= 5
/// and a homogeneous cubic f; throws std::invalid_argument otherwise.
TrilinearForm cubic_to_symmetric_trilinear(const Poly& f);

/// c_1..c_r in l = n - r variables: c_i = sum_{j<=k} coeff(x_i^{d-2} x_{r+j} x_{r+k}) y_j y_k.
/// Indices here are 0-based. Requires 1 <= r < n and d >= 2.
std::vector<Poly> quad_slices(const Poly& f, std::size_t r);

/// Symmetric C with y^T C y = c(y): diagonal terms as is, mixed terms halved.
/// Odd q only.
Matrix quad_to_symmetric(const Poly& c);
/// Alternating matrix of the mixed coefficients of c; squares drop out.
/// Characteristic 2 only.
Matrix quad_to_alternating(const Poly& c);

/// (C_i)_{j,k} = phi(e_i, e_{r+j}, e_{r+k}) for i < r.
MatrixTuple trilinear_slices(const TrilinearForm& phi, std::size_t r);

/// psi(u, v, w) = phi(T u, T v, T w). Composition:
/// trilinear_act(trilinear_act(phi, T1), T2) = trilinear_act(phi, T1 T2).
/// The form phi o A = phi(A^-1 ., A^-1 ., A^-1 .) is trilinear_act(phi, A^-1).
TrilinearForm trilinear_act(const TrilinearForm& phi, const Matrix& T);

/// Structure constants after the change of basis e_i -> T e_i:
/// b(u, v) = T^-1 a(T u, T v). Throws std::domain_error for singular T.
AlgebraSC algebra_act(const AlgebraSC& a, const Matrix& T);

/// All monomials of total degree exactly k in n variables, lexicographically
/// decreasing in the exponent vector.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned k);

Poly random_poly(const Field& F, std::size_t n, unsigned d, bool homogeneous, Rng& rng);
TrilinearForm random_trilinear(const Field& F, std::size_t n, FormTag tag, Rng& rng);
AlgebraSC random_algebra(const Field& F, std::size_t n, Rng& rng);

}  // namespace formiso

#endif

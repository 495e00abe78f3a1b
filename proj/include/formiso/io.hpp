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
#ifndef FORMISO_IO_HPP
#define FORMISO_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "formiso/forms.hpp"
#include "formiso/linalg.hpp"
#include "formiso/tensor3.hpp"

namespace formiso {

// Line-oriented instance files. The first non-comment line is a header
//
//   poly q n d           e_1 ... e_n : c     (exponent vector, degree <= d)
//   trilinear q n        i j k : c
//   algebra q n          i j k : c           (coordinate k of e_i * e_j is entry (k, i, j))
//   tuple q n m          i j k : c           (entry (i, j) of matrix k)
//   tensor q n1 n2 n3    i j k : c
//   matrix q rows cols   i j : c
//
// followed by one line per nonzero entry. Indices are 1-based; c is a field
// code in [0, q) (prime fields also accept any integer, reduced mod p). Lines
// starting with '#' are comments. A poly whose terms all have degree d is read
// as a form.

enum class InstanceKind { poly, trilinear, algebra, tuple, tensor, matrix };
const char* to_string(InstanceKind k) noexcept;

using InstanceValue = std::variant<Poly, TrilinearForm, AlgebraSC, MatrixTuple, Tensor3, Matrix>;

struct Instance {
    InstanceKind kind = InstanceKind::poly;
    InstanceValue value;
    const Field& field() const;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
/// Throws std::system_error when the file cannot be opened.
Instance read_instance(const std::string& path);

void write_instance(std::ostream& out, const Instance& inst);
std::string to_text(const Instance& inst);
void write_instance_file(const std::string& path, const Instance& inst);

Instance make_instance(Poly p);
Instance make_instance(TrilinearForm t);
Instance make_instance(AlgebraSC a);
Instance make_instance(MatrixTuple t);
Instance make_instance(Tensor3 t);
Instance make_instance(Matrix m);

}  // namespace formiso

#endif

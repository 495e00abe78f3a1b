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
#include "formiso/io.hpp"

#include <cerrno>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace formiso {

const char* to_string(InstanceKind k) noexcept {
    switch (k) {
        case InstanceKind::poly: return "poly";
        case InstanceKind::trilinear: return "trilinear";
        case InstanceKind::algebra: return "algebra";
        case InstanceKind::tuple: return "tuple";
        case InstanceKind::tensor: return "tensor";
        case InstanceKind::matrix: return "matrix";
    }
    return "?";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

const Field& Instance::field() const {
    return std::visit([](const auto& v) -> const Field& { return v.field(); }, value);
}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    std::size_t no = 0;
    while (std::getline(in, s)) {
        ++no;
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos || s[first] == '#') continue;
        std::istringstream ls(s);
        Line l{no, {}};
        for (std::string t; ls >> t;) l.tokens.push_back(t);
        out.push_back(std::move(l));
    }
    return out;
}

long long to_int(const std::string& t, std::size_t line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(line, "expected an integer, got '" + t + "'");
    return v;
}

std::size_t to_size(const std::string& t, std::size_t line, long long lo, long long hi, const char* what) {
    const long long v = to_int(t, line);
    if (v < lo || v > hi)
        throw ParseError(line, std::string(what) + " " + t + " out of range [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
    return static_cast<std::size_t>(v);
}

Scalar to_scalar(const Field& F, const std::string& t, std::size_t line) {
    long long v = to_int(t, line);
    if (F.e() == 1) {
        v %= static_cast<long long>(F.p());
        if (v < 0) v += F.p();
        return static_cast<Scalar>(v);
    }
    if (v < 0 || v >= static_cast<long long>(F.q())) throw ParseError(line, "field code " + t + " out of range");
    return static_cast<Scalar>(v);
}

// Splits "a b c : v" into index tokens and value token.
std::pair<std::vector<std::string>, std::string> split_entry(const Line& l, std::size_t arity) {
    const auto& t = l.tokens;
    if (t.size() != arity + 2 || t[arity] != ":")
        throw ParseError(l.number, "expected " + std::to_string(arity) + " indices, ':' and a value");
    return {std::vector<std::string>(t.begin(), t.begin() + arity), t.back()};
}

const Field& field_of(const std::string& t, std::size_t line) {
    const long long q = to_int(t, line);
    if (q < 2 || q > 256) throw ParseError(line, "unsupported field order " + t);
    try {
        return Field::of_order(static_cast<unsigned>(q));
    } catch (const std::exception& e) {
        throw ParseError(line, "unsupported field order " + t);
    }
}

constexpr long long kMaxSide = 4096;

Tensor3 read_tensor(const Field& F, const std::vector<Line>& lines, std::size_t n1, std::size_t n2, std::size_t n3) {
    Tensor3 t(F, n1, n2, n3);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [idx, val] = split_entry(lines[i], 3);
        const std::size_t ln = lines[i].number;
        const std::size_t a = to_size(idx[0], ln, 1, n1, "index") - 1;
        const std::size_t b = to_size(idx[1], ln, 1, n2, "index") - 1;
        const std::size_t c = to_size(idx[2], ln, 1, n3, "index") - 1;
        t(a, b, c) = to_scalar(F, val, ln);
    }
    return t;
}

}  // namespace

Instance parse_instance(std::istream& in) {
    const std::vector<Line> lines = tokenize(in);
    if (lines.empty()) throw ParseError(0, "empty instance file");
    const Line& h = lines.front();
    const auto& ht = h.tokens;
    const std::string& kind = ht[0];
    auto want = [&](std::size_t count) {
        if (ht.size() != count) throw ParseError(h.number, "header for '" + kind + "' needs " + std::to_string(count - 1) + " fields");
    };
    if (ht.size() < 2) throw ParseError(h.number, "malformed header");
    const Field& F = field_of(ht[1], h.number);

    try {
        if (kind == "poly") {
            want(4);
            const std::size_t n = to_size(ht[2], h.number, 1, 64, "variable count");
            const unsigned d = static_cast<unsigned>(to_size(ht[3], h.number, 0, kMaxDegree, "degree"));
            std::vector<std::pair<Monomial, Scalar>> terms;
            bool homogeneous = true;
            for (std::size_t i = 1; i < lines.size(); ++i) {
                const auto [idx, val] = split_entry(lines[i], n);
                Monomial m(n);
                for (std::size_t a = 0; a < n; ++a) m[a] = static_cast<std::uint8_t>(to_size(idx[a], lines[i].number, 0, d, "exponent"));
                if (degree(m) > d) throw ParseError(lines[i].number, "monomial exceeds the stated degree");
                homogeneous = homogeneous && degree(m) == d;
                terms.emplace_back(std::move(m), to_scalar(F, val, lines[i].number));
            }
            Poly p(F, n, d, homogeneous);
            for (const auto& [m, c] : terms) p.set(m, c);
            return make_instance(std::move(p));
        }
        if (kind == "trilinear" || kind == "algebra") {
            want(3);
            const std::size_t n = to_size(ht[2], h.number, 1, kMaxSide, "dimension");
            Tensor3 t = read_tensor(F, lines, n, n, n);
            if (kind == "trilinear") return make_instance(TrilinearForm(std::move(t)));
            return make_instance(AlgebraSC(std::move(t)));
        }
        if (kind == "tensor") {
            want(5);
            const std::size_t n1 = to_size(ht[2], h.number, 1, kMaxSide, "dimension");
            const std::size_t n2 = to_size(ht[3], h.number, 1, kMaxSide, "dimension");
            const std::size_t n3 = to_size(ht[4], h.number, 1, kMaxSide, "dimension");
            return make_instance(read_tensor(F, lines, n1, n2, n3));
        }
        if (kind == "tuple") {
            want(4);
            const std::size_t n = to_size(ht[2], h.number, 1, kMaxSide, "dimension");
            const std::size_t m = to_size(ht[3], h.number, 0, kMaxSide, "tuple length");
            const Tensor3 t = m ? read_tensor(F, lines, n, n, m) : Tensor3();
            if (!m && lines.size() > 1) throw ParseError(lines[1].number, "entries in an empty tuple");
            std::vector<Matrix> mats;
            bool alt = true, sym = true;
            for (std::size_t k = 0; k < m; ++k) {
                mats.push_back(t.frontal_slice(k));
                alt = alt && mats.back().is_alternating();
                sym = sym && mats.back().is_symmetric();
            }
            const TupleShape shape = alt ? TupleShape::alternating : sym ? TupleShape::symmetric : TupleShape::general;
            return make_instance(MatrixTuple(F, shape, n, std::move(mats)));
        }
        if (kind == "matrix") {
            want(4);
            const std::size_t r = to_size(ht[2], h.number, 1, kMaxSide, "row count");
            const std::size_t c = to_size(ht[3], h.number, 1, kMaxSide, "column count");
            Matrix mat(F, r, c);
            for (std::size_t i = 1; i < lines.size(); ++i) {
                const auto [idx, val] = split_entry(lines[i], 2);
                const std::size_t ln = lines[i].number;
                mat(to_size(idx[0], ln, 1, r, "index") - 1, to_size(idx[1], ln, 1, c, "index") - 1) = to_scalar(F, val, ln);
            }
            return make_instance(std::move(mat));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(h.number, e.what());
    }
    throw ParseError(h.number, "unknown instance kind '" + kind + "'");
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno ? errno : ENOENT, std::generic_category(), "cannot open " + path);
    return parse_instance(in);
}

namespace {

void write_tensor_entries(std::ostream& out, const Tensor3& t) {
    const auto [n1, n2, n3] = t.dims();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n3; ++k)
                if (const Scalar v = t(i, j, k)) out << i + 1 << ' ' << j + 1 << ' ' << k + 1 << " : " << unsigned(v) << '\n';
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
    const Field& F = inst.field();
    out << to_string(inst.kind) << ' ' << F.q();
    switch (inst.kind) {
        case InstanceKind::poly: {
            const Poly& p = std::get<Poly>(inst.value);
            out << ' ' << p.n() << ' ' << p.degree_bound() << '\n';
            for (const auto& [m, c] : p.terms()) {
                for (std::uint8_t e : m) out << unsigned(e) << ' ';
                out << ": " << unsigned(c) << '\n';
            }
            break;
        }
        case InstanceKind::trilinear: {
            const TrilinearForm& t = std::get<TrilinearForm>(inst.value);
            out << ' ' << t.n() << '\n';
            write_tensor_entries(out, t.tensor());
            break;
        }
        case InstanceKind::algebra: {
            const AlgebraSC& a = std::get<AlgebraSC>(inst.value);
            out << ' ' << a.n() << '\n';
            write_tensor_entries(out, a.tensor());
            break;
        }
        case InstanceKind::tuple: {
            const MatrixTuple& t = std::get<MatrixTuple>(inst.value);
            out << ' ' << t.dim() << ' ' << t.size() << '\n';
            for (std::size_t i = 0; i < t.dim(); ++i)
                for (std::size_t j = 0; j < t.dim(); ++j)
                    for (std::size_t k = 0; k < t.size(); ++k)
                        if (const Scalar v = t[k](i, j)) out << i + 1 << ' ' << j + 1 << ' ' << k + 1 << " : " << unsigned(v) << '\n';
            break;
        }
        case InstanceKind::tensor: {
            const Tensor3& t = std::get<Tensor3>(inst.value);
            out << ' ' << t.dim(0) << ' ' << t.dim(1) << ' ' << t.dim(2) << '\n';
            write_tensor_entries(out, t);
            break;
        }
        case InstanceKind::matrix: {
            const Matrix& m = std::get<Matrix>(inst.value);
            out << ' ' << m.rows() << ' ' << m.cols() << '\n';
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (const Scalar v = m(i, j)) out << i + 1 << ' ' << j + 1 << " : " << unsigned(v) << '\n';
            break;
        }
    }
}

std::string to_text(const Instance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::system_error(errno ? errno : EACCES, std::generic_category(), "cannot write " + path);
    write_instance(out, inst);
    if (!out) throw std::system_error(EIO, std::generic_category(), "cannot write " + path);
}

Instance make_instance(Poly p) { return {InstanceKind::poly, std::move(p)}; }
Instance make_instance(TrilinearForm t) { return {InstanceKind::trilinear, std::move(t)}; }
Instance make_instance(AlgebraSC a) { return {InstanceKind::algebra, std::move(a)}; }
Instance make_instance(MatrixTuple t) { return {InstanceKind::tuple, std::move(t)}; }
Instance make_instance(Tensor3 t) { return {InstanceKind::tensor, std::move(t)}; }
Instance make_instance(Matrix m) { return {InstanceKind::matrix, std::move(m)}; }

}  // namespace formiso

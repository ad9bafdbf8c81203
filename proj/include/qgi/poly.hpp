#pragma once

// Noncommutative *-polynomials in the generators u_ij (A_u(n)) or v_ij (B_u(n)).
// Grammar is documented in docs/polynomial_grammar.md.

#include "qgi/words.hpp"

#include <cctype>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgi {

using Complex = std::complex<double>;

enum class Family { A, B };

inline char generator_symbol(Family f) { return f == Family::A ? 'u' : 'v'; }
inline const char* family_name(Family f) { return f == Family::A ? "A" : "B"; }

/// One letter of a monomial: u_{row,col} or its adjoint. Indices are 0-based.
struct Generator {
    int row = 0;
    int col = 0;
    bool adjoint = false;

    Generator star() const { return {row, col, !adjoint}; }
    bool operator==(const Generator&) const = default;
};

using Monomial = std::vector<Generator>;

struct Term {
    Complex coeff;
    Monomial monomial;
};

class NCPoly {
public:
    NCPoly(Family family, int n) : family_(family), n_(n) {
        if (n < 1) throw std::invalid_argument("polynomial needs n >= 1");
    }

    static NCPoly unit(Family family, int n) {
        NCPoly p(family, n);
        p.add_term(1.0, {});
        return p;
    }
    static NCPoly generator(Family family, int n, Generator g) {
        NCPoly p(family, n);
        p.add_term(1.0, {g});
        return p;
    }

    Family family() const noexcept { return family_; }
    int n() const noexcept { return n_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    void add_term(Complex c, Monomial m) {
        for (const auto& g : m)
            if (g.row < 0 || g.row >= n_ || g.col < 0 || g.col >= n_)
                throw std::out_of_range("generator index outside 1.." + std::to_string(n_));
        terms_.push_back({c, std::move(m)});
    }

    NCPoly operator+(const NCPoly& rhs) const {
        require_compatible(rhs);
        NCPoly out = *this;
        out.terms_.insert(out.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
        return out;
    }

    NCPoly operator-(const NCPoly& rhs) const { return *this + rhs * Complex(-1.0); }

    NCPoly operator*(Complex s) const {
        NCPoly out = *this;
        for (auto& t : out.terms_) t.coeff *= s;
        return out;
    }

    NCPoly operator*(const NCPoly& rhs) const {
        require_compatible(rhs);
        NCPoly out(family_, n_);
        for (const auto& a : terms_)
            for (const auto& b : rhs.terms_) {
                Monomial m = a.monomial;
                m.insert(m.end(), b.monomial.begin(), b.monomial.end());
                out.terms_.push_back({a.coeff * b.coeff, std::move(m)});
            }
        return out;
    }

    /// The involution: conjugate coefficients, reverse monomials, star each letter.
    NCPoly adjoint() const {
        NCPoly out(family_, n_);
        for (const auto& t : terms_) {
            Monomial m;
            m.reserve(t.monomial.size());
            for (auto it = t.monomial.rbegin(); it != t.monomial.rend(); ++it) m.push_back(it->star());
            out.terms_.push_back({std::conj(t.coeff), std::move(m)});
        }
        return out;
    }

private:
    void require_compatible(const NCPoly& rhs) const {
        if (rhs.family_ != family_ || rhs.n_ != n_)
            throw std::invalid_argument("polynomials from different generator families");
    }

    Family family_;
    int n_;
    std::vector<Term> terms_;
};

/// A generator index outside 1..n.
class IndexRangeError : public ParseError {
public:
    using ParseError::ParseError;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, int n, Family family) : s_(text), n_(n), family_(family) {}

    NCPoly parse() {
        NCPoly out(family_, n_);
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip_ws();
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1.0 : 1.0;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            parse_term(out, sign);
            first = false;
            skip_ws();
            if (at_end()) break;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at position " + std::to_string(pos_ + 1), pos_ + 1);
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() { return s_[pos_++]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool starts_number() const {
        return std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.';
    }

    double number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if ((peek() == 'e' || peek() == 'E') && pos_ + 1 < s_.size()) {
            std::size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;
            } else {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        const std::string text(s_.substr(start, pos_ - start));
        if (text.empty() || text == ".") {
            pos_ = start;
            fail("malformed number");
        }
        return std::stod(text);
    }

    // real | real 'i' | 'i'
    Complex scalar() {
        if (peek() == 'i') {
            ++pos_;
            return {0.0, 1.0};
        }
        const double v = number();
        if (peek() == 'i') {
            ++pos_;
            return {0.0, v};
        }
        return {v, 0.0};
    }

    // '(' [sign] scalar { sign scalar } ')'
    Complex parenthesized() {
        ++pos_; // '('
        Complex acc{0.0, 0.0};
        bool first = true;
        while (true) {
            skip_ws();
            if (peek() == ')') {
                if (first) fail("empty coefficient");
                ++pos_;
                return acc;
            }
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1.0 : 1.0;
                skip_ws();
            } else if (!first) {
                fail("expected '+', '-' or ')' in coefficient");
            }
            if (!starts_number() && peek() != 'i') fail("expected number in coefficient");
            acc += sign * scalar();
            first = false;
        }
    }

    int index() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected generator index");
        return get() - '0';
    }

    void check_index(int v, std::size_t where) const {
        if (v < 1 || v > n_)
            throw IndexRangeError("generator index " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(n_) + " at position " + std::to_string(where + 1),
                             where + 1);
    }

    Generator generator() {
        const char sym = peek();
        if (sym != generator_symbol(family_))
            fail(std::string("generator '") + sym + "' does not belong to family " +
                 family_name(family_) + " (use '" + generator_symbol(family_) + "')");
        ++pos_;
        int row = 0;
        int col = 0;
        if (peek() == '(') {
            // long form: u(i,j)
            ++pos_;
            skip_ws();
            const std::size_t rpos = pos_;
            row = static_cast<int>(integer());
            check_index(row, rpos);
            skip_ws();
            if (peek() != ',') fail("expected ','");
            ++pos_;
            skip_ws();
            const std::size_t cpos = pos_;
            col = static_cast<int>(integer());
            check_index(col, cpos);
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        } else {
            const std::size_t rpos = pos_;
            row = index();
            check_index(row, rpos);
            const std::size_t cpos = pos_;
            col = index();
            check_index(col, cpos);
        }
        bool adjoint = false;
        while (peek() == '\'') {
            adjoint = !adjoint;
            ++pos_;
        }
        return {row - 1, col - 1, adjoint};
    }

    long integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
        return v;
    }

    bool starts_generator() const { return peek() == 'u' || peek() == 'v'; }

    void parse_term(NCPoly& out, double sign) {
        Complex coeff{1.0, 0.0};
        bool have_coeff = false;
        if (peek() == '(') {
            coeff = parenthesized();
            have_coeff = true;
        } else if (starts_number() || peek() == 'i') {
            coeff = scalar();
            have_coeff = true;
        }
        skip_ws();
        if (have_coeff && peek() == '*') {
            ++pos_;
            skip_ws();
            if (!starts_generator()) fail("expected generator after '*'");
        }
        Monomial m;
        while (starts_generator()) {
            m.push_back(generator());
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (!starts_generator()) fail("expected generator after '*'");
            }
        }
        if (!have_coeff && m.empty()) fail("expected coefficient or generator");
        out.add_term(sign * coeff, std::move(m));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int n_;
    Family family_;
};

} // namespace detail

/// Parses e.g. "u11 u12 - u12 u11", "u11' u11 + u21' u21 - 1", "(0.5+2i) v12 v21'".
inline NCPoly parse_poly(std::string_view text, int n, Family family) {
    return detail::PolyParser(text, n, family).parse();
}

} // namespace qgi

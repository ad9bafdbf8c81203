#pragma once

// Dense linear algebra over the rationals. Elimination is fraction-free
// (Bareiss): each row is first scaled to integers, and every intermediate
// entry stays an integer minor of that scaled matrix.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgi {

using Rational = mpq_class;
using Integer = mpz_class;
using ExactVector = std::vector<Rational>;

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long v : r) data_.emplace_back(v);
        }
    }

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    ExactMatrix select_columns(const std::vector<std::size_t>& idx) const {
        ExactMatrix m(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < idx.size(); ++k) m(r, k) = (*this)(r, idx[k]);
        return m;
    }

    ExactMatrix select(const std::vector<std::size_t>& row_idx,
                       const std::vector<std::size_t>& col_idx) const {
        ExactMatrix m(row_idx.size(), col_idx.size());
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            for (std::size_t k = 0; k < col_idx.size(); ++k) m(r, k) = (*this)(row_idx[r], col_idx[k]);
        return m;
    }

    ExactVector column(std::size_t c) const {
        ExactVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    ExactVector operator*(const ExactVector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
        ExactVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Rational acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (sgn(x[c]) != 0) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

    ExactMatrix operator*(const ExactMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("matrix-matrix dimension mismatch");
        ExactMatrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(r, k);
                if (sgn(a) == 0) continue;
                for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
            }
        return out;
    }

    /// Appends the rows of `other` (which must have the same column count).
    void append_rows(const ExactMatrix& other) {
        if (other.rows_ == 0) return;
        if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
        if (other.cols_ != cols_) throw std::invalid_argument("append_rows column mismatch");
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
        rows_ += other.rows_;
    }

    void append_row(const ExactVector& row) {
        if (rows_ == 0 && cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) throw std::invalid_argument("append_row column mismatch");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    bool operator==(const ExactMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }

    /// Row-major "p/q" strings (integers print without a denominator).
    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).get_str());
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Integer> data;           // row-major integer echelon form
    std::vector<std::size_t> pivot_cols; // pivot column of echelon row r

    const Integer& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

namespace detail {

inline std::vector<Integer> integer_rows(const ExactMatrix& m) {
    std::vector<Integer> out(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer scale = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Integer& den = m(r, c).get_den();
            if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& q = m(r, c);
            if (scale == 1) {
                out[r * m.cols() + c] = q.get_num();
            } else {
                Integer v = scale / q.get_den();
                out[r * m.cols() + c] = v * q.get_num();
            }
        }
    }
    return out;
}

} // namespace detail

/// Bareiss elimination; pivot is the first nonzero entry in column order.
inline Echelon echelon_form(const ExactMatrix& m) {
    Echelon e;
    e.rows = m.rows();
    e.cols = m.cols();
    e.data = detail::integer_rows(m);
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return e.data[r * e.cols + c]; };

    Integer prev = 1;
    Integer tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < e.cols && r < e.rows; ++c) {
        std::size_t piv = r;
        while (piv < e.rows && sgn(at(piv, c)) == 0) ++piv;
        if (piv == e.rows) continue;
        if (piv != r)
            for (std::size_t k = 0; k < e.cols; ++k) swap(at(piv, k), at(r, k));
        const Integer& p = at(r, c);
        for (std::size_t i = r + 1; i < e.rows; ++i) {
            const Integer lead = at(i, c);
            for (std::size_t k = c + 1; k < e.cols; ++k) {
                // a_ik <- (p * a_ik - lead * a_rk) / prev, an exact division
                tmp = p * at(i, k);
                tmp -= lead * at(r, k);
                mpz_divexact(at(i, k).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, c) = 0;
        }
        prev = p;
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

inline std::size_t rank(const ExactMatrix& m) { return echelon_form(m).rank(); }

namespace detail {

// Solves the echelon system for the pivot variables, given the free variables
// already placed in x, against right-hand side column `rhs_col` (or zero).
inline void back_substitute(const Echelon& e, std::size_t nvars, ExactVector& x,
                            std::optional<std::size_t> rhs_col) {
    for (std::size_t rr = e.rank(); rr-- > 0;) {
        const std::size_t pc = e.pivot_cols[rr];
        Rational acc = rhs_col ? Rational(e.at(rr, *rhs_col)) : Rational(0);
        for (std::size_t k = pc + 1; k < nvars; ++k)
            if (sgn(x[k]) != 0) acc -= Rational(e.at(rr, k)) * x[k];
        acc /= Rational(e.at(rr, pc));
        acc.canonicalize();
        x[pc] = acc;
    }
}

} // namespace detail

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<ExactVector> nullspace_basis(const ExactMatrix& m) {
    const Echelon e = echelon_form(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

    std::vector<ExactVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        ExactVector x(m.cols(), Rational(0));
        x[f] = 1;
        detail::back_substitute(e, m.cols(), x, std::nullopt);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Exact membership of v in the column space of m. On success returns x with m x = v.
inline std::optional<ExactVector> in_column_space(const ExactMatrix& m, const ExactVector& v) {
    if (v.size() != m.rows())
        throw std::invalid_argument("in_column_space: vector has " + std::to_string(v.size()) +
                                    " entries, matrix has " + std::to_string(m.rows()) + " rows");
    ExactMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = v[r];
    }
    const Echelon e = echelon_form(aug);
    if (e.rank() > 0 && e.pivot_cols.back() == m.cols()) return std::nullopt;
    ExactVector x(m.cols(), Rational(0));
    detail::back_substitute(e, m.cols(), x, m.cols());
    return x;
}

/// Basis of the left nullspace {y : y^T m = 0}, as row vectors.
inline std::vector<ExactVector> cokernel_basis(const ExactMatrix& m) {
    return nullspace_basis(m.transpose());
}

} // namespace qgi

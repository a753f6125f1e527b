#include "homlab/int_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace homlab {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

mpz_class determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

// Position of the nonzero entry of least absolute value in the trailing
// submatrix starting at (t, t); false if that submatrix is zero.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            if (!found || abs(a(i, j)) < abs(a(pr, pc))) {
                pr = i;
                pc = j;
                found = true;
            }
        }
    return found;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
    IntMatrix& d = s.d;
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
        std::size_t pr = t, pc = t;
        if (!find_pivot(d, t, pr, pc)) break;
        d.swap_rows(t, pr);
        s.u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        s.v.swap_cols(t, pc);
        while (true) {
            bool dirty = false;
            // Clear column t below the pivot.
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_row_multiple(i, t, -q);
                s.u.add_row_multiple(i, t, -q);
                if (d(i, t) != 0) dirty = true;
            }
            // Clear row t right of the pivot.
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_col_multiple(j, t, -q);
                s.v.add_col_multiple(j, t, -q);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // A smaller remainder appeared in row or column t; make it the pivot.
                std::size_t br = t, bc = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < abs(d(br, bc))) br = i, bc = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < abs(d(br, bc))) br = t, bc = j;
                d.swap_rows(t, br);
                s.u.swap_rows(t, br);
                d.swap_cols(t, bc);
                s.v.swap_cols(t, bc);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        d.add_row_multiple(t, i, 1);
                        s.u.add_row_multiple(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
        s.rank = t + 1;
    }
    check_smith_form(a, s);
    return s;
}

void check_smith_form(const IntMatrix& a, const SmithForm& s) {
    if (!(s.u * a * s.v == s.d)) throw std::logic_error("Smith form: u*a*v != d");
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j && s.d(i, j) != 0) throw std::logic_error("Smith form: d is not diagonal");
    const std::size_t lim = std::min(s.d.rows(), s.d.cols());
    for (std::size_t i = 0; i < lim; ++i) {
        if (s.d(i, i) < 0) throw std::logic_error("Smith form: negative diagonal entry");
        if (i + 1 < lim) {
            const mpz_class& x = s.d(i, i);
            const mpz_class& y = s.d(i + 1, i + 1);
            bool divides = (x == 0) ? (y == 0) : mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t()) != 0;
            if (!divides) throw std::logic_error("Smith form: divisibility chain broken");
        }
    }
    if (abs(determinant(s.u)) != 1) throw std::logic_error("Smith form: u is not unimodular");
    if (abs(determinant(s.v)) != 1) throw std::logic_error("Smith form: v is not unimodular");
}

nlohmann::json to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace homlab

#include "homlab/fp_matrix.hpp"

#include <span>
#include <stdexcept>
#include <string>

#include "homlab/simd/kernels.hpp"

namespace homlab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not a supported prime");
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("element is not invertible");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    require_prime(p);
}

FpMatrix::FpMatrix(std::uint32_t p, std::initializer_list<std::initializer_list<long>> rows) {
    require_prime(p);
    p_ = p;
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long x : r) data_.push_back(static_cast<std::uint32_t>(((x % long(p)) + long(p)) % long(p)));
    }
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix product dimension mismatch");
    FpMatrix r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint32_t a = (*this)(i, k);
            if (a == 0) continue;
            simd::axpy_mod(std::span<std::uint32_t>(r.row(i), o.cols_), std::span<const std::uint32_t>(o.row(k), o.cols_),
                           a, p_);
        }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("matrix sum dimension mismatch");
    FpMatrix r = *this;
    simd::axpy_mod(r.data_, o.data_, 1, p_);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("matrix sum dimension mismatch");
    FpMatrix r = *this;
    simd::axpy_mod(r.data_, o.data_, p_ - 1, p_);
    return r;
}

RowEchelon fp_rref(const FpMatrix& m) {
    RowEchelon e{m, {}};
    FpMatrix& a = e.reduced;
    const std::uint32_t p = a.prime();
    const std::size_t cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
        std::uint32_t inv = inverse_mod(a(r, c), p);
        for (std::size_t j = 0; j < cols; ++j)
            a(r, j) = static_cast<std::uint32_t>(std::uint64_t{a(r, j)} * inv % p);
        std::span<const std::uint32_t> src(a.row(r), cols);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            simd::axpy_mod(std::span<std::uint32_t>(a.row(i), cols), src, p - a(i, c), p);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t fp_rank(const FpMatrix& m) { return fp_rref(m).pivots.size(); }

std::optional<std::vector<std::uint32_t>> fp_solve(const FpMatrix& m, const std::vector<std::uint32_t>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("fp_solve: right-hand side length mismatch");
    FpMatrix aug(m.rows(), m.cols() + 1, m.prime());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i] % m.prime();
    }
    auto e = fp_rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    std::vector<std::uint32_t> x(m.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

std::vector<std::vector<std::uint32_t>> fp_nullspace(const FpMatrix& m) {
    auto e = fp_rref(m);
    const std::uint32_t p = m.prime();
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : e.pivots) is_pivot[c] = 1;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint32_t> v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = (p - e.reduced(r, f)) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

bool fp_is_invertible(const FpMatrix& m) { return m.rows() == m.cols() && fp_rank(m) == m.rows(); }

std::optional<FpMatrix> fp_inverse(const FpMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    if (n == 0) return m;
    FpMatrix aug(n, 2 * n, m.prime());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto e = fp_rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    FpMatrix inv(n, n, m.prime());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

nlohmann::json to_json(const FpMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace homlab

#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace homlab {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += q * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& q);
    /// col[dst] += q * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& q);
    void negate_row(std::size_t r);

    bool is_zero() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& a);

struct SmithForm {
    IntMatrix u;  ///< rows x rows, unimodular
    IntMatrix d;  ///< rows x cols, diagonal, d_i | d_{i+1}, d_i >= 0
    IntMatrix v;  ///< cols x cols, unimodular
    /// Number of nonzero diagonal entries.
    std::size_t rank = 0;
};

/// u * a * v = d.  The postconditions are re-checked before returning;
/// a failure throws std::logic_error.
SmithForm smith_normal_form(const IntMatrix& a);

/// Throws std::logic_error naming the first violated postcondition.
void check_smith_form(const IntMatrix& a, const SmithForm& s);

nlohmann::json to_json(const IntMatrix& m);

} // namespace homlab

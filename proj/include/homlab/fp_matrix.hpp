#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include <json.hpp>

namespace homlab {

bool is_prime(std::uint64_t n);
/// Throws std::invalid_argument unless p is a prime below 2^31.
void require_prime(std::uint64_t p);
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Dense matrix over F_p, row-major, entries in [0, p).
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);
    FpMatrix(std::uint32_t p, std::initializer_list<std::initializer_list<long>> rows);

    static FpMatrix identity(std::size_t n, std::uint32_t p);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint32_t prime() const noexcept { return p_; }
    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::uint32_t* row(std::size_t r) { return data_.data() + r * cols_; }
    const std::uint32_t* row(std::size_t r) const { return data_.data() + r * cols_; }

    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    bool operator==(const FpMatrix&) const = default;

    const std::vector<std::uint32_t>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> data_;
};

struct RowEchelon {
    FpMatrix reduced;                 ///< reduced row echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RowEchelon fp_rref(const FpMatrix& m);
std::size_t fp_rank(const FpMatrix& m);
/// Some x with m x = b, or nullopt.  Free variables are set to 0.
std::optional<std::vector<std::uint32_t>> fp_solve(const FpMatrix& m, const std::vector<std::uint32_t>& b);
/// Basis of {x : m x = 0}; one vector per free column in increasing order,
/// with a 1 at that column.
std::vector<std::vector<std::uint32_t>> fp_nullspace(const FpMatrix& m);
bool fp_is_invertible(const FpMatrix& m);
std::optional<FpMatrix> fp_inverse(const FpMatrix& m);

nlohmann::json to_json(const FpMatrix& m);

} // namespace homlab

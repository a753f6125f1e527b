#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

/// Componentwise residues; entry i lies in [0, n_i).
using GroupElement = std::vector<std::uint64_t>;
/// Group vector indexed by a dense key range (vertex ids or edge indices).
using GroupVector = std::vector<GroupElement>;

/// Z_{n_1} x ... x Z_{n_r}.
class FiniteAbelianGroup {
public:
    /// Throws std::invalid_argument on an empty list or an order < 1.
    explicit FiniteAbelianGroup(std::vector<std::uint64_t> cyclic_orders);

    static FiniteAbelianGroup cyclic(std::uint64_t n) { return FiniteAbelianGroup({n}); }

    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::uint64_t size() const noexcept { return size_; }

    GroupElement zero() const { return GroupElement(orders_.size(), 0); }
    /// The element with residue 1 in every component.
    GroupElement one() const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement scale(std::int64_t j, const GroupElement& a) const;
    bool is_zero(const GroupElement& a) const;
    bool contains(const GroupElement& a) const;
    GroupElement sum(const GroupVector& v) const;

    /// Mixed-radix code in [0, size()), first component most significant.
    std::uint64_t encode(const GroupElement& a) const;
    GroupElement decode(std::uint64_t code) const;

    /// "3" or "2x2"; parse accepts the same and comma-separated orders.
    std::string to_string() const;
    static FiniteAbelianGroup parse(std::string_view text);

    /// Residues joined by '.', e.g. "1.0".
    std::string format(const GroupElement& a) const;
    GroupElement parse_element(std::string_view text) const;

    bool operator==(const FiniteAbelianGroup&) const = default;

private:
    std::vector<std::uint64_t> orders_;
    std::uint64_t size_ = 1;
};

/// Parses "1,0,0" (or "1.0,0.1" for product groups) into a group vector.
GroupVector parse_group_vector(const FiniteAbelianGroup& gamma, std::string_view text);
std::string format_group_vector(const FiniteAbelianGroup& gamma, const GroupVector& v);

} // namespace homlab

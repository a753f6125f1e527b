#include "homlab/group.hpp"

#include <charconv>
#include <stdexcept>

namespace homlab {

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw std::invalid_argument(std::string("bad ") + what + " \"" + std::string(s) + "\"");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

} // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
    for (auto n : orders_) {
        if (n < 1) throw std::invalid_argument("cyclic order must be at least 1");
        if (size_ > (std::uint64_t{1} << 62) / n) throw std::invalid_argument("group too large");
        size_ *= n;
    }
}

GroupElement FiniteAbelianGroup::one() const {
    GroupElement e(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) e[i] = 1 % orders_[i];
    return e;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) r[i] = (a[i] + b[i]) % orders_[i];
    return r;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
    GroupElement r(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) r[i] = (orders_[i] - a[i]) % orders_[i];
    return r;
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

GroupElement FiniteAbelianGroup::scale(std::int64_t j, const GroupElement& a) const {
    GroupElement r(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        const auto n = static_cast<std::int64_t>(orders_[i]);
        std::int64_t jm = ((j % n) + n) % n;
        r[i] = static_cast<std::uint64_t>((static_cast<__int128>(jm) * a[i]) % n);
    }
    return r;
}

bool FiniteAbelianGroup::is_zero(const GroupElement& a) const {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
    if (a.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] >= orders_[i]) return false;
    return true;
}

GroupElement FiniteAbelianGroup::sum(const GroupVector& v) const {
    GroupElement acc = zero();
    for (const auto& x : v) acc = add(acc, x);
    return acc;
}

std::uint64_t FiniteAbelianGroup::encode(const GroupElement& a) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) code = code * orders_[i] + a[i];
    return code;
}

GroupElement FiniteAbelianGroup::decode(std::uint64_t code) const {
    GroupElement a(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        a[i] = code % orders_[i];
        code /= orders_[i];
    }
    return a;
}

std::string FiniteAbelianGroup::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(orders_[i]);
    }
    return s;
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text) {
    std::vector<std::uint64_t> orders;
    std::string norm(text);
    for (char& c : norm)
        if (c == ',' || c == '*' || c == 'X') c = 'x';
    for (auto part : split(norm, 'x')) orders.push_back(parse_u64(part, "cyclic order"));
    return FiniteAbelianGroup(std::move(orders));
}

std::string FiniteAbelianGroup::format(const GroupElement& a) const {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(a[i]);
    }
    return s;
}

GroupElement FiniteAbelianGroup::parse_element(std::string_view text) const {
    auto parts = split(text, '.');
    if (parts.size() != orders_.size())
        throw std::invalid_argument("element \"" + std::string(text) + "\" has wrong number of components");
    GroupElement a(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) a[i] = parse_u64(parts[i], "residue") % orders_[i];
    return a;
}

GroupVector parse_group_vector(const FiniteAbelianGroup& gamma, std::string_view text) {
    GroupVector v;
    if (text.empty()) return v;
    for (auto part : split(text, ',')) v.push_back(gamma.parse_element(part));
    return v;
}

std::string format_group_vector(const FiniteAbelianGroup& gamma, const GroupVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += gamma.format(v[i]);
    }
    return s;
}

} // namespace homlab

#include "homlab/hom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "homlab/caps.hpp"
#include "homlab/linear_system.hpp"
#include "homlab/simd/kernels.hpp"

namespace homlab {

namespace {

mpz_class from_u128(unsigned __int128 x) {
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
    return (hi << 64) + lo;
}

std::vector<std::uint64_t> full_set(const Graph& g) {
    std::vector<std::uint64_t> s(g.words(), ~std::uint64_t{0});
    if (g.num_vertices() % 64 != 0 && !s.empty()) s.back() = (std::uint64_t{1} << (g.num_vertices() % 64)) - 1;
    return s;
}

std::uint64_t popcount(const std::vector<std::uint64_t>& s) {
    std::uint64_t c = 0;
    for (std::uint64_t w : s) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

// Backtracking counter for one connected component of f.
class ComponentCounter {
public:
    ComponentCounter(const Graph& f, const Graph& g, const CandidateSets& allowed, const std::vector<Vertex>& comp)
        : g_(g), allowed_(allowed) {
        // Most constrained vertex first, then greedily the vertex with the
        // most placed neighbours (ties: higher degree, smaller id).
        std::vector<char> placed(f.num_vertices(), 0);
        Vertex start = comp.front();
        for (Vertex v : comp) {
            auto key = [&](Vertex x) { return std::make_pair(popcount(allowed[x]), -static_cast<long>(f.degree(x))); };
            if (key(v) < key(start)) start = v;
        }
        order_.push_back(start);
        placed[start] = 1;
        std::vector<std::size_t> pos(f.num_vertices(), 0);
        while (order_.size() < comp.size()) {
            Vertex best = 0;
            long best_score = -1;
            for (Vertex v : comp) {
                if (placed[v]) continue;
                long back = 0;
                for (Vertex w : f.neighbors(v)) back += placed[w];
                long score = back * 1'000'000 + static_cast<long>(f.degree(v));
                if (score > best_score) {
                    best_score = score;
                    best = v;
                }
            }
            order_.push_back(best);
            placed[best] = 1;
        }
        for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
        back_.resize(order_.size());
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (Vertex w : f.neighbors(order_[i]))
                if (pos[w] < i && std::find(comp.begin(), comp.end(), w) != comp.end()) back_[i].push_back(pos[w]);
        buf_.assign(order_.size(), std::vector<std::uint64_t>(g.words()));
        image_.assign(order_.size(), 0);
        bound_ = 0.0;
        for (Vertex v : comp) bound_ += std::log2(static_cast<double>(std::max<std::uint64_t>(1, popcount(allowed[v]))));
    }

    mpz_class count() {
        if (bound_ < 120.0) {
            unsigned __int128 acc = 0;
            run(0, acc);
            return from_u128(acc);
        }
        mpz_class acc = 0;
        run(0, acc);
        return acc;
    }

private:
    template <class Acc>
    void run(std::size_t level, Acc& acc) {
        auto& cand = buf_[level];
        const auto& al = allowed_[order_[level]];
        const auto& back = back_[level];
        const bool last = level + 1 == order_.size();
        if (back.empty()) {
            if (last) {
                add(acc, popcount(al));
                return;
            }
            std::copy(al.begin(), al.end(), cand.begin());
        } else {
            if (last && back.size() == 1) {
                add(acc, simd::and_popcount(al, g_.adjacency_row(image_[back[0]])));
                return;
            }
            if (!simd::and_into(cand, al, g_.adjacency_row(image_[back[0]]))) return;
            for (std::size_t i = 1; i < back.size(); ++i)
                if (!simd::and_into(cand, cand, g_.adjacency_row(image_[back[i]]))) return;
            if (last) {
                add(acc, simd::and_popcount(cand, cand));
                return;
            }
        }
        for (std::size_t w = 0; w < cand.size(); ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                image_[level] = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
                run(level + 1, acc);
            }
        }
    }

    static void add(unsigned __int128& acc, std::uint64_t x) { acc += x; }
    static void add(mpz_class& acc, std::uint64_t x) { acc += static_cast<unsigned long>(x); }

    const Graph& g_;
    const CandidateSets& allowed_;
    std::vector<Vertex> order_;
    std::vector<std::vector<std::size_t>> back_;
    std::vector<std::vector<std::uint64_t>> buf_;
    std::vector<Vertex> image_;
    double bound_ = 0.0;
};

} // namespace

mpz_class hom_count_restricted(const Graph& f, const Graph& g, const CandidateSets& allowed) {
    if (allowed.size() != f.num_vertices()) throw std::invalid_argument("candidate sets do not match f");
    for (const auto& s : allowed)
        if (s.size() != g.words()) throw std::invalid_argument("candidate set has the wrong width");
    mpz_class total = 1;
    for (const auto& comp : connected_components(f)) {
        mpz_class c = ComponentCounter(f, g, allowed, comp).count();
        if (c == 0) return 0;
        total *= c;
    }
    return total;
}

mpz_class hom_count_brute(const Graph& f, const Graph& g) {
    if (f.num_vertices() == 0) return 1;
    if (g.num_vertices() == 0) return 0;
    CandidateSets allowed(f.num_vertices(), full_set(g));
    return hom_count_restricted(f, g, allowed);
}

mpz_class hom_count_labelled(const LabelledGraph& f, const LabelledGraph& g) {
    if (f.arity() != g.arity()) throw std::invalid_argument("hom_count_labelled: label arity mismatch");
    f.validate();
    g.validate();
    if (f.graph.num_vertices() == 0) return 1;
    if (g.graph.num_vertices() == 0) return 0;
    CandidateSets allowed(f.graph.num_vertices(), full_set(g.graph));
    std::vector<std::int64_t> pin(f.graph.num_vertices(), -1);
    for (std::size_t i = 0; i < f.arity(); ++i) {
        Vertex x = f.labels[i];
        if (pin[x] >= 0 && pin[x] != static_cast<std::int64_t>(g.labels[i])) return 0;
        pin[x] = g.labels[i];
    }
    for (Vertex x = 0; x < f.graph.num_vertices(); ++x) {
        if (pin[x] < 0) continue;
        std::fill(allowed[x].begin(), allowed[x].end(), 0);
        allowed[x][static_cast<std::size_t>(pin[x]) / 64] = std::uint64_t{1} << (pin[x] % 64);
    }
    return hom_count_restricted(f.graph, g.graph, allowed);
}

std::vector<std::vector<Vertex>> list_homomorphisms(const Graph& f, const Graph& g, std::size_t limit) {
    const std::size_t n = f.num_vertices();
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> img(n, 0);
    std::vector<std::vector<Vertex>> back(n);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : f.neighbors(v))
            if (w < v) back[v].push_back(w);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (out.size() >= limit) throw CapExceeded("hom_psi", out.size() + 1, limit);
            out.push_back(img);
            return;
        }
        for (Vertex x = 0; x < g.num_vertices(); ++x) {
            bool ok = true;
            for (Vertex w : back[i])
                if (!g.has_edge(img[w], x)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            img[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

HomSystem hom_system(const Graph& f, const CfiGraph& cfi, const std::vector<Vertex>& psi) {
    const Graph& base = cfi.base();
    if (psi.size() != f.num_vertices()) throw std::invalid_argument("psi does not match f");
    for (const Edge& e : f.edges())
        if (!base.has_edge(psi[e.u], psi[e.v])) throw std::invalid_argument("psi is not a homomorphism");
    HomSystem sys;
    std::vector<std::size_t> offset(f.num_vertices() + 1, 0);
    for (Vertex a = 0; a < f.num_vertices(); ++a) {
        offset[a + 1] = offset[a] + base.degree(psi[a]);
        for (std::size_t s = 0; s < base.degree(psi[a]); ++s) sys.columns.emplace_back(a, s);
    }
    const std::size_t rows = f.num_vertices() + f.num_edges();
    sys.a = IntMatrix(rows, sys.columns.size());
    for (Vertex a = 0; a < f.num_vertices(); ++a) {
        for (std::size_t c = offset[a]; c < offset[a + 1]; ++c) sys.a(a, c) = 1;
        sys.rhs.push_back(cfi.u_vector()[psi[a]]);
    }
    std::size_t r = f.num_vertices();
    for (const Edge& e : f.edges()) {
        sys.a(r, offset[e.u] + cfi.slot(psi[e.u], psi[e.v])) += 1;
        sys.a(r, offset[e.v] + cfi.slot(psi[e.v], psi[e.u])) += 1;
        sys.rhs.push_back(cfi.gamma().zero());
        ++r;
    }
    return sys;
}

CfiHomCount hom_count_cfi(const Graph& f, const CfiGraph& cfi) {
    CfiHomCount out;
    out.total = 0;
    for (auto& psi : list_homomorphisms(f, cfi.base(), caps().hom_psi)) {
        HomSystem sys = hom_system(f, cfi, psi);
        SolutionCount sc = count_solutions(sys.a, sys.rhs, cfi.gamma());
        PsiCount pc{psi, sc.count, std::nullopt};
        if (sc.witness) {
            std::vector<Vertex> h(f.num_vertices());
            std::size_t c = 0;
            for (Vertex a = 0; a < f.num_vertices(); ++a) {
                GroupVector s;
                for (std::size_t k = 0; k < cfi.base().degree(psi[a]); ++k) s.push_back((*sc.witness)[c++]);
                auto x = cfi.vertex_of(psi[a], s);
                if (!x) throw std::logic_error("hom_count_cfi: witness violates a vertex constraint");
                h[a] = *x;
            }
            for (const Edge& e : f.edges())
                if (!cfi.graph().has_edge(h[e.u], h[e.v]))
                    throw std::logic_error("hom_count_cfi: witness is not a homomorphism");
            pc.witness = std::move(h);
        }
        out.total += pc.count;
        out.per_psi.push_back(std::move(pc));
    }
    return out;
}

mpz_class hom_count_over_psi(const Graph& f, const CfiGraph& cfi, const std::vector<Vertex>& psi) {
    const Graph& g = cfi.graph();
    if (f.num_vertices() == 0) return 1;
    CandidateSets allowed(f.num_vertices(), std::vector<std::uint64_t>(g.words(), 0));
    for (Vertex a = 0; a < f.num_vertices(); ++a) {
        Vertex first = cfi.first_of(psi[a]);
        for (std::size_t i = 0; i < cfi.size_of(psi[a]); ++i) {
            Vertex x = first + static_cast<Vertex>(i);
            allowed[a][x / 64] |= std::uint64_t{1} << (x % 64);
        }
    }
    return hom_count_restricted(f, g, allowed);
}

namespace {

struct ExactRing {
    using T = mpz_class;
    T zero() const { return 0; }
    T one() const { return 1; }
    void add(T& a, const T& b) const { a += b; }
    void mul(std::vector<T>& dst, const std::vector<T>& src) const {
        for (std::size_t i = 0; i < dst.size(); ++i)
            if (dst[i] != 0) dst[i] *= src[i];
    }
    T sum(const std::vector<T>& v) const {
        T s = 0;
        for (const auto& x : v) s += x;
        return s;
    }
};

struct ModRing {
    using T = std::uint32_t;
    std::uint32_t m;
    T zero() const { return 0; }
    T one() const { return 1 % m; }
    void add(T& a, const T& b) const { a = static_cast<T>((static_cast<std::uint64_t>(a) + b) % m); }
    void mul(std::vector<T>& dst, const std::vector<T>& src) const { simd::mul_mod(dst, src, m); }
    T sum(const std::vector<T>& v) const { return simd::sum_mod(v, m); }
};

template <class Ring>
typename Ring::T tw_dp(const Graph& f, const TreeDecomposition& td, const Graph& g, const Ring& ring) {
    using T = typename Ring::T;
    const std::size_t n = g.num_vertices();
    const std::size_t t = td.bags.size();
    std::vector<std::size_t> parent(t, SIZE_MAX), order{0};
    std::vector<char> seen(t, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex c : td.tree.neighbors(static_cast<Vertex>(order[i])))
            if (!seen[c]) {
                seen[c] = 1;
                parent[c] = order[i];
                order.push_back(c);
            }
    auto table_size = [&](std::size_t b) {
        std::size_t s = 1;
        for (std::size_t i = 0; i < b; ++i) {
            if (s > caps().hom_psi / std::max<std::size_t>(n, 1)) throw CapExceeded("hom_psi", s * n, caps().hom_psi);
            s *= n;
        }
        return s;
    };
    auto decode = [&](std::size_t idx, std::size_t b, std::vector<Vertex>& digits) {
        digits.assign(b, 0);
        for (std::size_t i = b; i-- > 0;) {
            digits[i] = static_cast<Vertex>(idx % n);
            idx /= n;
        }
    };
    std::vector<std::vector<T>> value(t);
    std::vector<std::vector<std::size_t>> children(t);
    for (std::size_t i = 1; i < order.size(); ++i) children[parent[order[i]]].push_back(order[i]);
    std::vector<Vertex> digits, cdigits;
    for (std::size_t oi = order.size(); oi-- > 0;) {
        const std::size_t node = order[oi];
        const auto& bag = td.bags[node];
        const std::size_t size = table_size(bag.size());
        std::vector<std::pair<std::size_t, std::size_t>> inner;  // edges of f inside the bag, by position
        for (std::size_t a = 0; a < bag.size(); ++a)
            for (std::size_t b = a + 1; b < bag.size(); ++b)
                if (f.has_edge(bag[a], bag[b])) inner.emplace_back(a, b);
        std::vector<T> val(size, ring.zero());
        for (std::size_t idx = 0; idx < size; ++idx) {
            decode(idx, bag.size(), digits);
            bool ok = true;
            for (auto [a, b] : inner)
                if (!g.has_edge(digits[a], digits[b])) {
                    ok = false;
                    break;
                }
            if (ok) val[idx] = ring.one();
        }
        for (std::size_t c : children[node]) {
            const auto& cbag = td.bags[c];
            // Positions of the shared vertices in the child and in this bag.
            std::vector<std::size_t> in_child, in_parent;
            for (std::size_t a = 0; a < cbag.size(); ++a) {
                auto it = std::lower_bound(bag.begin(), bag.end(), cbag[a]);
                if (it != bag.end() && *it == cbag[a]) {
                    in_child.push_back(a);
                    in_parent.push_back(static_cast<std::size_t>(it - bag.begin()));
                }
            }
            std::vector<T> msg(table_size(in_child.size()), ring.zero());
            const auto& cval = value[c];
            for (std::size_t idx = 0; idx < cval.size(); ++idx) {
                if (cval[idx] == ring.zero()) continue;
                decode(idx, cbag.size(), cdigits);
                std::size_t key = 0;
                for (std::size_t a : in_child) key = key * n + cdigits[a];
                ring.add(msg[key], cval[idx]);
            }
            std::vector<T> gathered(size);
            for (std::size_t idx = 0; idx < size; ++idx) {
                decode(idx, bag.size(), digits);
                std::size_t key = 0;
                for (std::size_t a : in_parent) key = key * n + digits[a];
                gathered[idx] = msg[key];
            }
            ring.mul(val, gathered);
            value[c].clear();
            value[c].shrink_to_fit();
        }
        value[node] = std::move(val);
    }
    return ring.sum(value[0]);
}

} // namespace

mpz_class hom_count_tw(const Graph& f, const TreeDecomposition& td, const Graph& g, std::optional<std::uint32_t> modulus) {
    std::string err = tree_decomposition_error(f, td);
    if (!err.empty()) throw std::invalid_argument("hom_count_tw: " + err);
    if (modulus && *modulus == 0) throw std::invalid_argument("hom_count_tw: modulus must be positive");
    mpz_class exact;
    if (f.num_vertices() == 0) exact = 1;
    else if (g.num_vertices() == 0) exact = 0;
    else if (modulus) return static_cast<unsigned long>(tw_dp(f, td, g, ModRing{*modulus}));
    else return tw_dp(f, td, g, ExactRing{});
    if (modulus) exact %= static_cast<unsigned long>(*modulus);
    return exact;
}

} // namespace homlab

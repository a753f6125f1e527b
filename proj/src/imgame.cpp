#include "homlab/imgame.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "homlab/caps.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/refine.hpp"
#include "homlab/structure.hpp"

namespace homlab {

namespace {

bool commutes(const FpMatrix& m, const FpMatrix& s, const FpMatrix& mp) { return m * s == s * mp; }

FpMatrix from_coefficients(const std::vector<std::vector<std::uint32_t>>& basis, const std::vector<std::uint32_t>& c,
                           std::size_t d, std::uint32_t p) {
    FpMatrix s(d, d, p);
    std::vector<std::uint64_t> acc(d * d, 0);
    for (std::size_t b = 0; b < basis.size(); ++b)
        if (c[b] != 0)
            for (std::size_t i = 0; i < d * d; ++i) acc[i] = (acc[i] + static_cast<std::uint64_t>(c[b]) * basis[b][i]) % p;
    for (std::size_t i = 0; i < d * d; ++i) s(i / d, i % d) = static_cast<std::uint32_t>(acc[i]);
    return s;
}

} // namespace

SimilarityVerdict check_similarity(const std::vector<std::pair<FpMatrix, FpMatrix>>& mats, std::uint32_t p,
                                   std::size_t search_budget, std::uint64_t seed) {
    require_prime(p);
    if (mats.empty()) throw std::invalid_argument("check_similarity: no matrices");
    const std::size_t d = mats[0].first.rows();
    for (const auto& [m, mp] : mats)
        if (m.rows() != d || m.cols() != d || mp.rows() != d || mp.cols() != d || m.prime() != p || mp.prime() != p)
            throw std::invalid_argument("check_similarity: matrices must be square of one size over F_p");
    // Unknown S(r, c) is variable r * d + c; (M S - S M')(r, c) = 0.
    FpMatrix sys(mats.size() * d * d, d * d, p);
    std::size_t row = 0;
    for (const auto& [m, mp] : mats)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c, ++row) {
                for (std::size_t t = 0; t < d; ++t) {
                    sys(row, t * d + c) = (sys(row, t * d + c) + m(r, t)) % p;
                    sys(row, r * d + t) = (sys(row, r * d + t) + (p - mp(t, c)) % p) % p;
                }
            }
    auto basis = fp_nullspace(sys);
    SimilarityVerdict v;
    v.space_dimension = basis.size();
    auto verify = [&](const FpMatrix& s) {
        if (!fp_is_invertible(s)) return false;
        for (const auto& [m, mp] : mats)
            if (!commutes(m, s, mp)) throw std::logic_error("check_similarity: solution space element fails a constraint");
        return true;
    };
    long double space = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) space *= p;
    const bool enumerable = space <= static_cast<long double>(caps().similarity_enumeration);
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> c(basis.size(), 0);
    // A few random elements first: invertible elements are usually plentiful.
    const std::size_t random_tries = enumerable ? std::min<std::size_t>(search_budget, 64) : search_budget;
    for (std::size_t t = 0; t < random_tries && !basis.empty(); ++t) {
        for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
        FpMatrix s = from_coefficients(basis, c, d, p);
        if (verify(s)) {
            v.status = SimilarityStatus::witness;
            v.s = std::move(s);
            return v;
        }
    }
    if (!enumerable) return v;
    // Odometer over all coefficient vectors.
    std::fill(c.begin(), c.end(), 0);
    while (true) {
        FpMatrix s = from_coefficients(basis, c, d, p);
        if (verify(s)) {
            v.status = SimilarityStatus::witness;
            v.s = std::move(s);
            v.exhaustive = false;
            return v;
        }
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == p) c[i++] = 0;
        if (i == c.size()) break;
    }
    v.status = SimilarityStatus::no_witness;
    v.exhaustive = true;
    return v;
}

GamePosition GamePosition::initial(Graph a, Graph b, std::size_t k, std::vector<std::uint32_t> primes) {
    GamePosition pos{std::move(a), std::move(b), k, std::move(primes), {}, {}};
    pos.pebbles_a.assign(k, std::nullopt);
    pos.pebbles_b.assign(k, std::nullopt);
    return pos;
}

FpMatrix characteristic_matrix(const std::vector<std::uint32_t>& blocks, std::uint32_t block, std::size_t dim,
                               std::uint32_t p) {
    FpMatrix m(dim, dim, p);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i] == block) m(i / dim, i % dim) = 1;
    return m;
}

namespace {

std::size_t int_pow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::string partition_error(const std::vector<std::uint32_t>& blocks, std::size_t size, std::size_t& count) {
    if (blocks.size() != size) return "partition does not cover every pair exactly once";
    count = 0;
    for (std::uint32_t b : blocks) count = std::max<std::size_t>(count, b + 1);
    std::vector<char> used(count, 0);
    for (std::uint32_t b : blocks) used[b] = 1;
    if (std::find(used.begin(), used.end(), 0) != used.end()) return "partition has an empty block";
    return "";
}

} // namespace

MoveCheck validate_move(const GamePosition& pos, const DuplicatorMove& mv, std::size_t l, std::uint32_t p) {
    MoveCheck r;
    if (l == 0 || 2 * l > pos.k) return {false, "2l must be between 2 and k"};
    if (std::find(pos.primes.begin(), pos.primes.end(), p) == pos.primes.end()) return {false, "p is not in the prime set"};
    const std::size_t n = pos.a.num_vertices();
    if (pos.b.num_vertices() != n) return {false, "structures differ in size"};
    const std::size_t dim = int_pow(n, l);
    std::size_t na = 0, nb = 0;
    std::string err = partition_error(mv.blocks_a, dim * dim, na);
    if (!err.empty()) return {false, "A side: " + err};
    err = partition_error(mv.blocks_b, dim * dim, nb);
    if (!err.empty()) return {false, "B side: " + err};
    if (na != nb) return {false, "partitions have different numbers of blocks"};
    if (mv.bijection.size() != na) return {false, "bijection has the wrong size"};
    std::vector<char> hit(nb, 0);
    for (std::uint32_t t : mv.bijection) {
        if (t >= nb || hit[t]) return {false, "f is not a bijection between the blocks"};
        hit[t] = 1;
    }
    if (mv.s.rows() != dim || mv.s.cols() != dim || mv.s.prime() != p) return {false, "S has the wrong shape or field"};
    if (!fp_is_invertible(mv.s)) return {false, "S is singular"};
    // chi^P S and S chi^{f(P)} via sparse row/column sums.
    std::vector<std::vector<std::size_t>> cells_a(na), cells_b(nb);
    for (std::size_t i = 0; i < mv.blocks_a.size(); ++i) cells_a[mv.blocks_a[i]].push_back(i);
    for (std::size_t i = 0; i < mv.blocks_b.size(); ++i) cells_b[mv.blocks_b[i]].push_back(i);
    std::vector<std::uint64_t> lhs(dim * dim), rhs(dim * dim);
    for (std::size_t b = 0; b < na; ++b) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (std::size_t cell : cells_a[b]) {
            const std::size_t x = cell / dim, y = cell % dim;
            for (std::size_t c = 0; c < dim; ++c) lhs[x * dim + c] += mv.s(y, c);
        }
        for (std::size_t cell : cells_b[mv.bijection[b]]) {
            const std::size_t x = cell / dim, y = cell % dim;
            for (std::size_t r2 = 0; r2 < dim; ++r2) rhs[r2 * dim + y] += mv.s(r2, x);
        }
        for (std::size_t i = 0; i < dim * dim; ++i)
            if (lhs[i] % p != rhs[i] % p)
                return {false, "block " + std::to_string(b) + " violates chi^P S = S chi^f(P)"};
    }
    r.valid = true;
    return r;
}

bool partial_isomorphism_check(const GamePosition& pos) {
    if (pos.pebbles_a.size() != pos.pebbles_b.size()) return false;
    const std::size_t k = pos.pebbles_a.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (pos.pebbles_a[i].has_value() != pos.pebbles_b[i].has_value()) return false;
        if (pos.pebbles_a[i] && (*pos.pebbles_a[i] >= pos.a.num_vertices() || *pos.pebbles_b[i] >= pos.b.num_vertices()))
            return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!pos.pebbles_a[i]) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!pos.pebbles_a[j]) continue;
            const Vertex a1 = *pos.pebbles_a[i], a2 = *pos.pebbles_a[j];
            const Vertex b1 = *pos.pebbles_b[i], b2 = *pos.pebbles_b[j];
            if ((a1 == a2) != (b1 == b2)) return false;
            if (a1 != a2 && pos.a.has_edge(a1, a2) != pos.b.has_edge(b1, b2)) return false;
        }
    }
    return true;
}

GamePosition place_pebbles(const GamePosition& pos, const std::vector<std::size_t>& labels,
                           const std::vector<Vertex>& u, const std::vector<Vertex>& v) {
    if (labels.size() != u.size() || labels.size() != v.size()) throw std::invalid_argument("place_pebbles: size mismatch");
    GamePosition next = pos;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= pos.k) throw std::invalid_argument("place_pebbles: no such pebble");
        if (u[i] >= pos.a.num_vertices() || v[i] >= pos.b.num_vertices())
            throw std::invalid_argument("place_pebbles: vertex out of range");
        next.pebbles_a[labels[i]] = u[i];
        next.pebbles_b[labels[i]] = v[i];
    }
    return next;
}

namespace {

enum class Tri { no, yes, unknown };

// Positions up to renaming of pebbles: a sorted list of pebbled pairs.
using Pairs = std::vector<std::pair<Vertex, Vertex>>;

class TinySolver {
public:
    TinySolver(const Graph& a, const Graph& b, std::size_t k, const std::vector<std::uint32_t>& primes, std::uint64_t seed)
        : a_(a), b_(b), k_(k), primes_(primes), seed_(seed), n_(a.num_vertices()) {}

    Tri survives(Pairs pos, std::size_t rounds) {
        std::sort(pos.begin(), pos.end());
        if (!partial_iso(pos)) return Tri::no;
        if (rounds == 0) return Tri::yes;
        if (extends_to_isomorphism(pos)) return Tri::yes;
        auto key = std::make_pair(pos, rounds);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Tri result = Tri::yes;
        for (const Pairs& kept : pick_ups(pos)) {
            for (std::uint32_t p : primes_) {
                Tri t = respond(kept, rounds, p);
                if (t == Tri::no) {
                    result = Tri::no;
                    break;
                }
                if (t == Tri::unknown) result = Tri::unknown;
            }
            if (result == Tri::no) break;
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    bool partial_iso(const Pairs& pos) const {
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
                auto [a1, b1] = pos[i];
                auto [a2, b2] = pos[j];
                if ((a1 == a2) != (b1 == b2)) return false;
                if (a1 != a2 && a_.has_edge(a1, a2) != b_.has_edge(b1, b2)) return false;
            }
        return true;
    }

    bool extends_to_isomorphism(const Pairs& pos) const {
        ColoredDigraph da = to_digraph(a_), db = to_digraph(b_);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            da.vertex_color[pos[i].first] |= 1u << i;
            db.vertex_color[pos[i].second] |= 1u << i;
        }
        // Equal pebbled vertices on one side must be equal on the other.
        return find_isomorphism(da, db).has_value();
    }

    // Pebbled pairs left on the board after Spoiler lifts two pebbles.
    std::vector<Pairs> pick_ups(const Pairs& pos) const {
        const std::size_t off = k_ - pos.size();
        std::vector<Pairs> out;
        auto push = [&](Pairs p) {
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
        };
        if (off >= 2) push(pos);
        if (off >= 1)
            for (std::size_t i = 0; i < pos.size(); ++i) {
                Pairs p = pos;
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
                push(std::move(p));
            }
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
                Pairs p = pos;
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(j));
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
                push(std::move(p));
            }
        return out;
    }

    Tri respond(const Pairs& kept, std::size_t rounds, std::uint32_t p) {
        const std::size_t m = n_ * n_;
        // compat[x * m + y]: placing A-pair x against B-pair y keeps a
        // position Duplicator survives for rounds - 1 more rounds.
        std::vector<char> compat(m * m, 0);
        bool unknown = false;
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y) {
                Pairs next = kept;
                next.emplace_back(static_cast<Vertex>(x / n_), static_cast<Vertex>(y / n_));
                next.emplace_back(static_cast<Vertex>(x % n_), static_cast<Vertex>(y % n_));
                Tri t = survives(std::move(next), rounds - 1);
                if (t == Tri::yes) compat[x * m + y] = 1;
                if (t == Tri::unknown) unknown = true;
            }
        // Components of the bipartite compatibility relation.
        std::vector<std::size_t> parent(2 * m);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                if (compat[x * m + y]) parent[find(x)] = find(m + y);
        std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> comps;
        for (std::size_t x = 0; x < m; ++x) comps[find(x)].first.push_back(x);
        for (std::size_t y = 0; y < m; ++y) comps[find(m + y)].second.push_back(y);
        std::vector<std::pair<FpMatrix, FpMatrix>> mats;
        for (const auto& [root, sides] : comps) {
            const auto& [xs, ys] = sides;
            if (xs.empty() || ys.empty()) return unknown ? Tri::unknown : Tri::no;
            for (std::size_t x : xs)
                for (std::size_t y : ys)
                    if (!compat[x * m + y]) return Tri::unknown;
            FpMatrix ma(n_, n_, p), mb(n_, n_, p);
            for (std::size_t x : xs) ma(x / n_, x % n_) = 1;
            for (std::size_t y : ys) mb(y / n_, y % n_) = 1;
            mats.emplace_back(std::move(ma), std::move(mb));
        }
        // The coarsest admissible partition is the best one: a similarity
        // for any refinement is also one for the unions of its blocks.
        auto verdict = check_similarity(mats, p, 256, seed_);
        if (verdict.status == SimilarityStatus::witness) return unknown ? Tri::unknown : Tri::yes;
        if (verdict.status == SimilarityStatus::no_witness) return unknown ? Tri::unknown : Tri::no;
        return Tri::unknown;
    }

    const Graph& a_;
    const Graph& b_;
    std::size_t k_;
    std::vector<std::uint32_t> primes_;
    std::uint64_t seed_;
    std::size_t n_;
    std::map<std::pair<Pairs, std::size_t>, Tri> memo_;
};

} // namespace

GameVerdict solve_game_tiny(const Graph& a, const Graph& b, std::size_t k, std::size_t l_max,
                            const std::vector<std::uint32_t>& primes, std::size_t round_cap, std::uint64_t seed) {
    GameVerdict v;
    if (a.num_vertices() != b.num_vertices()) {
        v.status = GameStatus::spoiler_wins;
        v.rounds = 0;
        v.note = "structures differ in size";
        return v;
    }
    for (std::uint32_t p : primes) require_prime(p);
    if (primes.empty()) throw std::invalid_argument("solve_game_tiny: empty prime set");
    if (l_max != 1) {
        v.note = "only l = 1 is searched";
        if (l_max == 0) throw std::invalid_argument("solve_game_tiny: l_max must be at least 1");
    }
    const std::size_t n = a.num_vertices();
    if (n > caps().game_vertices || k > caps().game_pebbles) {
        v.status = GameStatus::inconclusive;
        v.note = "instance exceeds the game_vertices/game_pebbles caps";
        return v;
    }
    if (k < 2) {
        // No move with 2l <= k exists; the pebbles never move.
        v.status = GameStatus::duplicator_survives;
        v.rounds = round_cap;
        v.note = "k < 2: Spoiler cannot move";
        return v;
    }
    TinySolver solver(a, b, k, primes, seed);
    for (std::size_t r = 0; r <= round_cap; ++r) {
        Tri t = solver.survives({}, r);
        if (t == Tri::no) {
            v.status = GameStatus::spoiler_wins;
            v.rounds = r;
            return v;
        }
        if (t == Tri::unknown) {
            v.status = GameStatus::inconclusive;
            v.rounds = r;
            if (v.note.empty()) v.note = "search could not settle a Duplicator response";
            return v;
        }
    }
    v.status = GameStatus::duplicator_survives;
    v.rounds = round_cap;
    return v;
}

TranscriptReport replay_transcript(const nlohmann::json& t) {
    TranscriptReport rep;
    try {
        GamePosition pos = GamePosition::initial(graph_from_json(t.at("a")).graph, graph_from_json(t.at("b")).graph,
                                                 t.at("k").get<std::size_t>(),
                                                 t.at("primes").get<std::vector<std::uint32_t>>());
        if (pos.a.num_vertices() != pos.b.num_vertices()) {
            rep.valid = true;
            rep.spoiler_won = true;
            rep.reason = "structures differ in size: Spoiler wins immediately";
            return rep;
        }
        const std::size_t n = pos.a.num_vertices();
        for (const auto& round : t.at("rounds")) {
            const auto l = round.at("l").get<std::size_t>();
            const auto p = round.at("p").get<std::uint32_t>();
            const auto labels = round.at("pebbles").get<std::vector<std::size_t>>();
            if (labels.size() != 2 * l) {
                rep.reason = "round " + std::to_string(rep.rounds_checked) + ": Spoiler must lift 2l pebbles";
                return rep;
            }
            DuplicatorMove mv;
            mv.blocks_a = round.at("partition_a").get<std::vector<std::uint32_t>>();
            mv.blocks_b = round.at("partition_b").get<std::vector<std::uint32_t>>();
            mv.bijection = round.at("bijection").get<std::vector<std::uint32_t>>();
            const auto rows = round.at("s").get<std::vector<std::vector<std::uint32_t>>>();
            mv.s = FpMatrix(rows.size(), rows.empty() ? 0 : rows[0].size(), p);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < rows[i].size() && j < mv.s.cols(); ++j) mv.s(i, j) = rows[i][j] % p;
            MoveCheck mc = validate_move(pos, mv, l, p);
            if (!mc.valid) {
                rep.reason = "round " + std::to_string(rep.rounds_checked) + ": " + mc.reason;
                return rep;
            }
            const auto block = round.at("block").get<std::uint32_t>();
            const auto u = round.at("u").get<std::vector<Vertex>>();
            const auto v = round.at("v").get<std::vector<Vertex>>();
            if (u.size() != 2 * l || v.size() != 2 * l) {
                rep.reason = "round " + std::to_string(rep.rounds_checked) + ": u and v must have 2l entries";
                return rep;
            }
            auto index = [&](const std::vector<Vertex>& w) {
                std::size_t code = 0;
                for (Vertex x : w) code = code * n + x;
                return code;
            };
            for (Vertex x : u)
                if (x >= n) throw std::invalid_argument("u out of range");
            for (Vertex x : v)
                if (x >= n) throw std::invalid_argument("v out of range");
            if (block >= mv.bijection.size() || mv.blocks_a[index(u)] != block ||
                mv.blocks_b[index(v)] != mv.bijection[block]) {
                rep.reason = "round " + std::to_string(rep.rounds_checked) + ": u is not in P or v is not in f(P)";
                return rep;
            }
            pos = place_pebbles(pos, labels, u, v);
            ++rep.rounds_checked;
            if (!partial_isomorphism_check(pos)) {
                rep.valid = true;
                rep.spoiler_won = true;
                rep.reason = "pebbles no longer define a partial isomorphism";
                return rep;
            }
        }
        rep.valid = true;
        return rep;
    } catch (const std::exception& e) {
        rep.valid = false;
        rep.reason = std::string("malformed transcript: ") + e.what();
        return rep;
    }
}

} // namespace homlab

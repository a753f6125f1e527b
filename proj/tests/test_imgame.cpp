#include <doctest.h>

#include <random>

#include <json.hpp>

#include "homlab/equiv.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/imgame.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

FpMatrix from_code(std::uint32_t code, std::size_t d, std::uint32_t p) {
    FpMatrix m(d, d, p);
    for (std::size_t i = 0; i < d * d; ++i) {
        m(i / d, i % d) = code % p;
        code /= p;
    }
    return m;
}

std::uint32_t ipow(std::uint32_t b, std::size_t e) {
    std::uint32_t r = 1;
    while (e--) r *= b;
    return r;
}

// Exhaustive search for an invertible S with M_i S = S M'_i for every i.
bool similar_oracle(const std::vector<std::pair<FpMatrix, FpMatrix>>& mats, std::size_t d, std::uint32_t p) {
    for (std::uint32_t c = 0; c < ipow(p, d * d); ++c) {
        FpMatrix s = from_code(c, d, p);
        bool ok = true;
        for (const auto& [m, mp] : mats) ok = ok && m * s == s * mp;
        if (ok && fp_is_invertible(s)) return true;
    }
    return false;
}

} // namespace

TEST_CASE("similarity over F_3 agrees with exhaustive search") {
    const std::uint32_t p = 3;
    for (std::size_t d = 1; d <= 2; ++d) {
        const std::uint32_t total = ipow(p, d * d);
        for (std::uint32_t a = 0; a < total; ++a)
            for (std::uint32_t b = 0; b < total; ++b) {
                std::vector<std::pair<FpMatrix, FpMatrix>> mats{{from_code(a, d, p), from_code(b, d, p)}};
                SimilarityVerdict v = check_similarity(mats, p, 1000, a * total + b);
                const bool want = similar_oracle(mats, d, p);
                CHECK(v.status == (want ? SimilarityStatus::witness : SimilarityStatus::no_witness));
                if (v.s) {
                    CHECK(fp_is_invertible(*v.s));
                    CHECK(mats[0].first * *v.s == *v.s * mats[0].second);
                }
            }
    }
}

TEST_CASE("simultaneous similarity needs one common matrix") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; ++t) {
        const std::uint32_t p = 2;
        const std::size_t d = 1 + rng() % 3;
        const std::uint32_t total = ipow(p, d * d);
        std::vector<std::pair<FpMatrix, FpMatrix>> mats;
        for (int i = 0; i < 2; ++i)
            mats.emplace_back(from_code(rng() % total, d, p), from_code(rng() % total, d, p));
        if (t % 2) {
            // Force a solution by conjugating with a random invertible matrix.
            FpMatrix s;
            do s = from_code(rng() % total, d, p);
            while (!fp_is_invertible(s));
            FpMatrix inv = *fp_inverse(s);
            for (auto& [m, mp] : mats) mp = inv * m * s;
        }
        SimilarityVerdict v = check_similarity(mats, p, 1000, t);
        CHECK(v.status == (similar_oracle(mats, d, p) ? SimilarityStatus::witness : SimilarityStatus::no_witness));
    }
}

TEST_CASE("characteristic matrices") {
    std::vector<std::uint32_t> blocks{0, 1, 1, 0};
    FpMatrix c = characteristic_matrix(blocks, 1, 2, 2);
    CHECK(c == FpMatrix(2, {{0, 1}, {1, 0}}));
}

namespace {

DuplicatorMove orbit_move(const Graph& g) {
    const std::size_t n = g.num_vertices();
    TupleOrbits orbits = tuple_orbits(g, 2);
    DuplicatorMove mv{orbits.orbit_of, orbits.orbit_of, {}, FpMatrix::identity(n, 2)};
    for (std::uint32_t i = 0; i < orbits.count; ++i) mv.bijection.push_back(i);
    return mv;
}

} // namespace

TEST_CASE("move validation") {
    Graph g = petersen_graph();
    GamePosition pos = GamePosition::initial(g, g, 2, {2});
    DuplicatorMove mv = orbit_move(g);
    CHECK(validate_move(pos, mv, 1, 2).valid);

    DuplicatorMove singular = mv;
    singular.s = FpMatrix(10, 10, 2);
    CHECK_FALSE(validate_move(pos, singular, 1, 2).valid);

    DuplicatorMove swapped = mv;
    std::swap(swapped.bijection[0], swapped.bijection[1]);
    CHECK_FALSE(validate_move(pos, swapped, 1, 2).valid);

    DuplicatorMove short_blocks = mv;
    short_blocks.blocks_b.pop_back();
    CHECK_FALSE(validate_move(pos, short_blocks, 1, 2).valid);

    CHECK_FALSE(validate_move(pos, mv, 1, 3).valid);
    CHECK_FALSE(validate_move(pos, mv, 2, 2).valid);

    // A single block needs only S J = J S.
    GamePosition other = GamePosition::initial(complete_graph(3), path_graph(3), 2, {2});
    DuplicatorMove coarse{std::vector<std::uint32_t>(9, 0), std::vector<std::uint32_t>(9, 0), {0},
                          FpMatrix::identity(3, 2)};
    CHECK(validate_move(other, coarse, 1, 2).valid);
}

TEST_CASE("pebble placement and partial isomorphisms") {
    GamePosition pos = GamePosition::initial(complete_graph(3), path_graph(3), 2, {2});
    CHECK(partial_isomorphism_check(pos));
    GamePosition edge = place_pebbles(pos, {0, 1}, {0, 1}, {0, 1});
    CHECK(partial_isomorphism_check(edge));
    GamePosition broken = place_pebbles(pos, {0, 1}, {0, 1}, {0, 2});
    CHECK_FALSE(partial_isomorphism_check(broken));
    GamePosition collapsed = place_pebbles(pos, {0, 1}, {0, 0}, {0, 1});
    CHECK_FALSE(partial_isomorphism_check(collapsed));
}

TEST_CASE("tiny game solver") {
    auto solve = [](const Graph& a, const Graph& b, std::size_t k) { return solve_game_tiny(a, b, k, 1, {2}, 5, 0); };
    GameVerdict iso = solve(cycle_graph(5), cycle_graph(5).relabel(std::vector<Vertex>{2, 4, 1, 0, 3}), 3);
    CHECK(iso.status == GameStatus::duplicator_survives);
    CHECK(iso.rounds == 5);
    GameVerdict sizes = solve(complete_graph(3), complete_graph(4), 2);
    CHECK(sizes.status == GameStatus::spoiler_wins);
    CHECK(sizes.rounds == 0);
    GameVerdict k3p3 = solve(complete_graph(3), path_graph(3), 3);
    CHECK(k3p3.status == GameStatus::spoiler_wins);
    CHECK(k3p3.rounds >= 1);
    GameVerdict degrees = solve(cycle_graph(4), disjoint_union(complete_graph(2), complete_graph(2)), 2);
    CHECK(degrees.status == GameStatus::spoiler_wins);
    CHECK(solve(complete_graph(3), path_graph(3), 1).status == GameStatus::duplicator_survives);
    CHECK(solve(complete_graph(7), complete_graph(7), 2).status == GameStatus::inconclusive);
}

TEST_CASE("transcript replay") {
    Graph p3 = path_graph(3);
    DuplicatorMove mv = orbit_move(p3);
    auto rows = [](const FpMatrix& s) {
        std::vector<std::vector<std::uint32_t>> r(s.rows());
        for (std::size_t i = 0; i < s.rows(); ++i) r[i].assign(s.row(i), s.row(i) + s.cols());
        return r;
    };
    nlohmann::json round{{"pebbles", {0, 1}}, {"p", 2}, {"l", 1}, {"partition_a", mv.blocks_a},
                         {"partition_b", mv.blocks_b}, {"bijection", mv.bijection}, {"s", rows(mv.s)},
                         {"block", mv.blocks_a[0 * 3 + 1]}, {"u", {0, 1}}, {"v", {2, 1}}};
    nlohmann::json t{{"a", graph_to_json(p3)}, {"b", graph_to_json(p3)}, {"k", 2}, {"primes", {2}}, {"rounds", {round}}};
    TranscriptReport ok = replay_transcript(t);
    CHECK(ok.valid);
    CHECK(ok.rounds_checked == 1);
    CHECK_FALSE(ok.spoiler_won);

    nlohmann::json wrong = t;
    wrong["rounds"][0]["v"] = {1, 0};
    CHECK_FALSE(replay_transcript(wrong).valid);

    nlohmann::json malformed = t;
    malformed["rounds"][0].erase("s");
    TranscriptReport m = replay_transcript(malformed);
    CHECK_FALSE(m.valid);
    CHECK(m.reason.find("malformed") != std::string::npos);

    nlohmann::json coarse{{"pebbles", {0, 1}}, {"p", 2}, {"l", 1}, {"partition_a", std::vector<int>(9, 0)},
                          {"partition_b", std::vector<int>(9, 0)}, {"bijection", {0}},
                          {"s", rows(FpMatrix::identity(3, 2))}, {"block", 0}, {"u", {0, 1}}, {"v", {0, 2}}};
    nlohmann::json win{{"a", graph_to_json(complete_graph(3))}, {"b", graph_to_json(p3)}, {"k", 2}, {"primes", {2}},
                       {"rounds", {coarse}}};
    TranscriptReport w = replay_transcript(win);
    CHECK(w.valid);
    CHECK(w.spoiler_won);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homlab/fp_matrix.hpp"
#include "homlab/graph.hpp"

namespace homlab {

enum class SimilarityStatus { witness, no_witness, inconclusive };

struct SimilarityVerdict {
    SimilarityStatus status = SimilarityStatus::inconclusive;
    std::optional<FpMatrix> s;
    /// Dimension of {S : M_i S = S M'_i for all i} over F_p.
    std::size_t space_dimension = 0;
    /// True when every element of that space was examined.
    bool exhaustive = false;
};

/// Looks for one invertible S with M_i S = S M'_i for all pairs.  The
/// solution space is enumerated completely when it has at most
/// similarity_enumeration elements (the only case that can report
/// no_witness); otherwise `search_budget` seeded random elements are tried.
/// Any witness is re-verified.  Throws std::invalid_argument for non-square
/// or mismatched matrices or an empty list.
SimilarityVerdict check_similarity(const std::vector<std::pair<FpMatrix, FpMatrix>>& mats, std::uint32_t p,
                                   std::size_t search_budget, std::uint64_t seed = 0);

/// Pebble i (0-based) lies on pebbles_a[i] and pebbles_b[i], or beside
/// both structures.
struct GamePosition {
    Graph a;
    Graph b;
    std::size_t k = 0;
    std::vector<std::uint32_t> primes;
    std::vector<std::optional<Vertex>> pebbles_a;
    std::vector<std::optional<Vertex>> pebbles_b;

    /// k pebbles, all beside the structures.
    static GamePosition initial(Graph a, Graph b, std::size_t k, std::vector<std::uint32_t> primes);
};

/// Partitions of A^l x A^l and B^l x B^l as block ids per pair index
/// code(x) * n^l + code(y), code(x) = sum_i x_i n^(l-1-i); bijection maps
/// blocks of A to blocks of B; s is an n^l x n^l matrix over F_p.
struct DuplicatorMove {
    std::vector<std::uint32_t> blocks_a;
    std::vector<std::uint32_t> blocks_b;
    std::vector<std::uint32_t> bijection;
    FpMatrix s;
};

struct MoveCheck {
    bool valid = false;
    std::string reason;  ///< first violated condition, empty when valid
};

/// Checks 2l <= k, p in the position's primes, both partitions (dense block
/// ids, none empty), |P| = |P'|, f a bijection, S invertible and
/// chi^P S = S chi^{f(P)} for every block.
MoveCheck validate_move(const GamePosition& pos, const DuplicatorMove& mv, std::size_t l, std::uint32_t p);

/// Characteristic matrix of block `block` of a partition of A^l x A^l.
FpMatrix characteristic_matrix(const std::vector<std::uint32_t>& blocks, std::uint32_t block, std::size_t dim,
                               std::uint32_t p);

/// The pebbles define a partial isomorphism: placement agrees on both
/// sides, equalities and edges between pebbled vertices correspond.
bool partial_isomorphism_check(const GamePosition& pos);

/// Spoiler's placement after a move: pebbles labels[i] go to u[i] and v[i].
GamePosition place_pebbles(const GamePosition& pos, const std::vector<std::size_t>& labels,
                           const std::vector<Vertex>& u, const std::vector<Vertex>& v);

enum class GameStatus { spoiler_wins, duplicator_survives, inconclusive };

struct GameVerdict {
    GameStatus status = GameStatus::inconclusive;
    /// spoiler_wins: the least number of rounds; duplicator_survives: the cap.
    std::size_t rounds = 0;
    std::string note;
};

/// Exhaustive game search with l = 1 on graphs of at most game_vertices
/// vertices and k <= game_pebbles.  Duplicator's candidate partitions are
/// the components of the relation "placing this pair here keeps a
/// Duplicator-winning position"; when that relation is not a disjoint union
/// of complete bipartite blocks the verdict is inconclusive.
GameVerdict solve_game_tiny(const Graph& a, const Graph& b, std::size_t k, std::size_t l_max,
                            const std::vector<std::uint32_t>& primes, std::size_t round_cap, std::uint64_t seed = 0);

struct TranscriptReport {
    bool valid = false;
    std::size_t rounds_checked = 0;
    /// Spoiler won (partial isomorphism broken) after the last round.
    bool spoiler_won = false;
    std::string reason;
};

/// Replays {"a": graph, "b": graph, "k": int, "primes": [..], "rounds": [{
/// "pebbles": [labels], "p": int, "l": int, "partition_a": [..],
/// "partition_b": [..], "bijection": [..], "s": [[..]], "block": int,
/// "u": [..], "v": [..]}]} validating every move and placement.
TranscriptReport replay_transcript(const nlohmann::json& transcript);

} // namespace homlab

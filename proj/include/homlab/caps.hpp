#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homlab {

/// Raised when an exponential search would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& cap, std::size_t requested, std::size_t limit);

    const std::string& cap() const noexcept { return cap_; }

private:
    std::string cap_;
};

/// Size caps for the exponential procedures.
///
/// Defaults are desk-scale.  HOMLAB_CAP_OVERRIDE="name=value,name=value"
/// overrides individual entries; unknown names are rejected.
struct Caps {
    std::size_t nice_max_n = 2;
    std::size_t nice_max_c = 3;
    std::size_t nice_subsets = 2'000'000;
    std::size_t grid_component = 40;
    std::size_t hom_psi = 5'000'000;
    std::size_t aut_complete_vertices = 10;
    std::size_t aut_list = 4'000'000;
    std::size_t iso_vertices = 256;
    std::size_t wl_tuples = 4'000'000;
    std::size_t tw_vertices = 20;
    std::size_t orbit_tuples = 2'000'000;
    std::size_t combination_terms = 100'000;
    std::size_t similarity_enumeration = 1u << 16;
    std::size_t game_vertices = 6;
    std::size_t game_pebbles = 3;

    /// Defaults with HOMLAB_CAP_OVERRIDE applied.
    static Caps from_env();
    /// Applies "name=value,..." on top of *this.
    void apply_overrides(const std::string& spec);
};

/// Process-wide caps, read from the environment on first use.
const Caps& caps();

} // namespace homlab

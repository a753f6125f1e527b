#include "homlab/caps.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

namespace homlab {

CapExceeded::CapExceeded(const std::string& cap, std::size_t requested, std::size_t limit)
    : std::runtime_error("size cap '" + cap + "' exceeded: " + std::to_string(requested) + " > " +
                         std::to_string(limit) + " (raise it with HOMLAB_CAP_OVERRIDE=" + cap + "=N)"),
      cap_(cap) {}

void Caps::apply_overrides(const std::string& spec) {
    const std::map<std::string, std::size_t Caps::*> fields{
        {"nice_max_n", &Caps::nice_max_n},
        {"nice_max_c", &Caps::nice_max_c},
        {"nice_subsets", &Caps::nice_subsets},
        {"grid_component", &Caps::grid_component},
        {"hom_psi", &Caps::hom_psi},
        {"aut_complete_vertices", &Caps::aut_complete_vertices},
        {"aut_list", &Caps::aut_list},
        {"iso_vertices", &Caps::iso_vertices},
        {"wl_tuples", &Caps::wl_tuples},
        {"tw_vertices", &Caps::tw_vertices},
        {"orbit_tuples", &Caps::orbit_tuples},
        {"combination_terms", &Caps::combination_terms},
        {"similarity_enumeration", &Caps::similarity_enumeration},
        {"game_vertices", &Caps::game_vertices},
        {"game_pebbles", &Caps::game_pebbles},
    };
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("cap override '" + item + "' is not name=value");
        const std::string name = item.substr(0, eq);
        const auto it = fields.find(name);
        if (it == fields.end())
            throw std::invalid_argument("unknown cap '" + name + "'");
        const long long value = std::stoll(item.substr(eq + 1));
        if (value <= 0)
            throw std::invalid_argument("cap '" + name + "' must be positive");
        this->*(it->second) = static_cast<std::size_t>(value);
    }
}

Caps Caps::from_env() {
    Caps c;
    if (const char* env = std::getenv("HOMLAB_CAP_OVERRIDE"))
        c.apply_overrides(env);
    return c;
}

const Caps& caps() {
    static const Caps instance = Caps::from_env();
    return instance;
}

} // namespace homlab

// Runs every verification suite once and prints one PASS/FAIL line per
// criterion.  A criterion fails if any row fails or the time limit is hit.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "homlab/verify.hpp"

namespace {

struct Criterion {
    int number;
    std::string id;
    std::optional<double> limit_seconds;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "lem-iso", 60},          {2, "cfi-equivalence", 300},  {3, "hom-bijection", 300},
        {4, "solution-structure", {}}, {5, "coclique", 120},       {6, "categorical-power", {}},
        {7, "faben-jerrum", 600},    {8, "dvorak", 900},           {9, "treewidth-dp", {}},
        {10, "planar-witness", {}},  {11, "imgame", {}},           {12, "nice", 10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        homlab::VerifyReport rep;
        std::string error;
        try {
            rep = homlab::run_verification(c.id, {});
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::size_t passed = 0;
        for (const auto& r : rep.rows) passed += r.pass;
        const bool in_time = !c.limit_seconds || secs <= *c.limit_seconds;
        const bool ok = error.empty() && rep.pass() && in_time;
        failures += !ok;
        std::string limit = c.limit_seconds ? " limit " + std::to_string(static_cast<int>(*c.limit_seconds)) + "s" : "";
        std::printf("%s %2d %-20s %zu/%zu rows, %.2fs%s\n", ok ? "PASS" : "FAIL", c.number, c.id.c_str(), passed,
                    rep.rows.size(), secs, limit.c_str());
        if (!error.empty()) std::printf("     error: %s\n", error.c_str());
        if (!in_time) std::printf("     time limit exceeded\n");
        for (const auto& r : rep.rows)
            if (!r.pass)
                std::printf("     %s: expected %s, got %s\n", r.instance.c_str(), r.expected.c_str(), r.actual.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

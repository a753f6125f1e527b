#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace homlab {

/// One (check, instance) result.
struct CheckRow {
    std::string id;
    std::string instance;
    std::string expected;
    std::string actual;
    bool pass = false;
    double millis = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    /// Restrict the dvorak suite to one prime / one width.
    std::optional<std::uint32_t> p;
    std::optional<std::size_t> k;
    /// Record wall-clock milliseconds (otherwise 0, keeping reports
    /// byte-identical across runs).
    bool timing = false;
};

struct VerifyReport {
    std::string id;
    std::vector<CheckRow> rows;
    double millis = 0.0;

    bool pass() const;
};

/// lem-iso, cfi-equivalence, hom-bijection, solution-structure, coclique,
/// categorical-power, faben-jerrum, dvorak, treewidth-dp, planar-witness,
/// imgame, nice.
const std::vector<std::string>& verify_ids();
bool is_verify_id(const std::string& id);

/// Runs one suite.  Throws std::invalid_argument for an unknown id.  A check
/// that throws is reported as a failing row carrying the message.
VerifyReport run_verification(const std::string& id, const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);
/// Header id,instance,expected,actual,status,millis.
std::string to_csv(const std::vector<VerifyReport>& reports);

} // namespace homlab

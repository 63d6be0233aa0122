#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stepcim/array.hpp"
#include "stepcim/cell.hpp"
#include "stepcim/system.hpp"

namespace stepcim {

inline constexpr const char* kSchemaVersion = "1";

struct GlobalConfig {
    std::string schema_version = kSchemaVersion;
    DeviceParams device;
    CellParams cell;
    ArrayConfig array;
    VariationConfig variation;
    CostModel cost;
    std::vector<Organization> organizations;  // empty selects the derived defaults
    std::string output_dir = "out";
    std::uint64_t seed = 1;

    GlobalConfig();
    // Derives dependent fields and checks every rule, throwing ConfigError.
    void resolve();
    std::vector<Organization> orgs() const;
};

// Defaults merged with the file when one is given. Throws ConfigError.
GlobalConfig load_config(const std::optional<std::string>& path);
GlobalConfig parse_config(const std::string& text, const std::string& origin = "<string>");
std::string dump_config(const GlobalConfig& c);
void write_resolved_config(const GlobalConfig& c, const std::string& dir);

// Partial cost file with the same keys as the system.cost section.
CostModel load_cost(const std::string& path, const CostModel& base);
Suite load_suite(const std::string& path);
Suite parse_suite(const std::string& text, const std::string& origin = "<string>");
std::string dump_suite(const Suite& s);

}  // namespace stepcim

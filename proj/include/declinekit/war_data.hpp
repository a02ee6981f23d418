#pragma once

#include <istream>
#include <string>
#include <vector>

namespace declinekit {

enum class WarType { interstate, intrastate };

// One war: onset/end years and total battle-deaths over its full duration.
struct WarRecord {
    std::string id;
    std::string name;
    WarType war_type = WarType::interstate;
    int onset_year = 0;
    int end_year = 0;
    long long battle_deaths = 0;
};

// Dataset coverage window; onset years outside it are rejected at ingest.
inline constexpr int kCoverageFirstYear = 1816;
inline constexpr int kCoverageLastYear = 2007;

// Conventional inclusion floor of the source data; smaller wars are kept but
// flagged so extended user datasets still load.
inline constexpr long long kBattleDeathsFloor = 1000;

// Column mapping for war CSV files. Header matching is case-insensitive.
struct WarCsvSchema {
    std::string id = "id";
    std::string name = "name";
    std::string type = "type";
    std::string onset_year = "onset_year";
    std::string end_year = "end_year";
    std::string battle_deaths = "battle_deaths";
    char delimiter = ',';
};

struct IngestResult {
    std::vector<WarRecord> records;
    std::vector<std::string> warnings;
};

// Parses one war per data row. Rows below the battle-deaths floor produce a
// warning and are retained. Malformed rows and onset years outside the
// coverage window raise DataError naming the line; a missing required column
// raises SchemaError.
IngestResult ingest_wars(std::istream& source, const WarCsvSchema& schema = {});

const char* to_string(WarType type);

}  // namespace declinekit

#include "declinekit/war_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "declinekit/csv.hpp"
#include "declinekit/errors.hpp"

namespace declinekit {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

long long parse_integer(const std::string& raw, const char* what, long line) {
    const std::string s = trim(raw);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("line " + std::to_string(line) + ": " + what + " is not an integer: '" +
                        raw + "'");
    return value;
}

WarType parse_war_type(const std::string& raw, long line) {
    const std::string s = lower(trim(raw));
    if (s == "interstate") return WarType::interstate;
    if (s == "intrastate") return WarType::intrastate;
    throw DataError("line " + std::to_string(line) + ": unknown war type '" + raw +
                    "' (expected interstate or intrastate)");
}

}  // namespace

const char* to_string(WarType type) {
    return type == WarType::interstate ? "interstate" : "intrastate";
}

IngestResult ingest_wars(std::istream& source, const WarCsvSchema& schema) {
    csv::Reader reader(source, schema.delimiter);

    const auto require = [&](const std::string& name) {
        const auto idx = reader.column(name);
        if (!idx) throw SchemaError("missing required column '" + name + "'");
        return *idx;
    };
    const std::size_t col_id = require(schema.id);
    const std::size_t col_type = require(schema.type);
    const std::size_t col_onset = require(schema.onset_year);
    const std::size_t col_end = require(schema.end_year);
    const std::size_t col_deaths = require(schema.battle_deaths);
    const auto col_name = reader.column(schema.name);  // optional field

    IngestResult result;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        const long line = reader.line_number();
        const std::size_t needed =
            std::max({col_id, col_type, col_onset, col_end, col_deaths});
        if (fields.size() <= needed)
            throw DataError("line " + std::to_string(line) + ": expected at least " +
                            std::to_string(needed + 1) + " fields, got " +
                            std::to_string(fields.size()));

        WarRecord record;
        record.id = trim(fields[col_id]);
        if (col_name && *col_name < fields.size()) record.name = trim(fields[*col_name]);
        record.war_type = parse_war_type(fields[col_type], line);
        record.onset_year = static_cast<int>(parse_integer(fields[col_onset], "onset_year", line));
        record.end_year = static_cast<int>(parse_integer(fields[col_end], "end_year", line));
        record.battle_deaths = parse_integer(fields[col_deaths], "battle_deaths", line);

        if (record.onset_year < kCoverageFirstYear || record.onset_year > kCoverageLastYear)
            throw DataError("line " + std::to_string(line) + ": onset_year " +
                            std::to_string(record.onset_year) + " outside coverage window [" +
                            std::to_string(kCoverageFirstYear) + ", " +
                            std::to_string(kCoverageLastYear) + "]");
        if (record.end_year < record.onset_year)
            throw DataError("line " + std::to_string(line) + ": end_year " +
                            std::to_string(record.end_year) + " precedes onset_year " +
                            std::to_string(record.onset_year));
        if (record.battle_deaths < 1)
            throw DataError("line " + std::to_string(line) + ": battle_deaths must be >= 1, got " +
                            std::to_string(record.battle_deaths));
        if (record.battle_deaths < kBattleDeathsFloor)
            result.warnings.push_back("line " + std::to_string(line) + ": war '" + record.id +
                                      "' has battle_deaths " +
                                      std::to_string(record.battle_deaths) +
                                      " below the dataset floor of 1000 (retained)");

        result.records.push_back(std::move(record));
    }
    return result;
}

}  // namespace declinekit

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace declinekit::csv {

// Splits one CSV record. Supports quoted fields with doubled quotes and
// embedded delimiters; fields may not span lines. Trailing CR is stripped.
std::vector<std::string> split_record(const std::string& line, char delimiter);

// Header-aware reader over a delimited text stream.
class Reader {
public:
    Reader(std::istream& in, char delimiter = ',');

    const std::vector<std::string>& header() const { return header_; }

    // Case-insensitive header lookup.
    std::optional<std::size_t> column(const std::string& name) const;

    // Reads the next data row; empty lines are skipped. Returns false at EOF.
    bool next(std::vector<std::string>& fields);

    // 1-based line number of the row most recently returned by next().
    long line_number() const { return line_number_; }

private:
    std::istream& in_;
    char delimiter_;
    std::vector<std::string> header_;
    long line_number_ = 0;
};

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

std::string escape_field(const std::string& field, char delimiter = ',');

}  // namespace declinekit::csv

#include "declinekit/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "declinekit/errors.hpp"

namespace declinekit::csv {

std::vector<std::string> split_record(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

namespace {
std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}
}  // namespace

Reader::Reader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {
    std::string line;
    if (!std::getline(in_, line)) throw SchemaError("empty input: no header row");
    // Strip a UTF-8 BOM if present.
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line.erase(0, 3);
    header_ = split_record(line, delimiter_);
    line_number_ = 1;
}

std::optional<std::size_t> Reader::column(const std::string& name) const {
    const std::string want = lower(name);
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (lower(header_[i]) == want) return i;
    return std::nullopt;
}

bool Reader::next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_number_;
        if (line.empty() || line == "\r") continue;
        fields = split_record(line, delimiter_);
        return true;
    }
    return false;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw InternalError("format_double: to_chars failed");
    return std::string(buf, ptr);
}

std::string escape_field(const std::string& field, char delimiter) {
    const bool needs_quotes = field.find(delimiter) != std::string::npos ||
                              field.find('"') != std::string::npos ||
                              field.find('\n') != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace declinekit::csv

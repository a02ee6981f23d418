#pragma once

#include <stdexcept>
#include <string>

namespace declinekit {

// Input file or row content is unusable (bad values, missing years, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// The file layout itself is wrong (missing columns, empty header, ...).
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// A requested configuration is invalid (bad ranges, unsorted thresholds, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace declinekit

#pragma once

#include <stdexcept>
#include <string>

namespace campus {

// Bad arguments or unusable parameter combinations (CLI exit code 1).
class argument_error : public std::runtime_error {
public:
    explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable streams or malformed file structure (CLI exit code 2).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Too little data to compute the requested statistic (CLI exit code 3).
class insufficient_data_error : public std::runtime_error {
public:
    explicit insufficient_data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace campus

#pragma once

#include <stdexcept>
#include <string>

namespace webts {

struct degenerate_series_error : std::runtime_error {
    explicit degenerate_series_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct degenerate_residuals_error : std::runtime_error {
    explicit degenerate_residuals_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct insufficient_observations_error : std::runtime_error {
    explicit insufficient_observations_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct singular_design_error : std::runtime_error {
    explicit singular_design_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct configuration_error : std::runtime_error {
    explicit configuration_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// CSV ingestion failure with the offending line attached.
struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, long line_arg)
        : std::runtime_error(msg + " (line " + std::to_string(line_arg) + ")"), line(line_arg) {}
    long line;
};

}  // namespace webts

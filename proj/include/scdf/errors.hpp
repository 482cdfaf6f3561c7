#ifndef SCDF_ERRORS_HPP
#define SCDF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scdf {

// Bad user input: invalid configuration values, malformed files.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed its own accuracy contract.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Request is valid but not served by this code path (e.g. closed forms on
// non-i.i.d. configs); the message names the alternative.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would exceed a configured resource cap.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace scdf

#endif

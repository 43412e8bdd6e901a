#pragma once

#include <stdexcept>
#include <string>

namespace lcorpp {

// Bad user input: malformed files, out-of-range arguments, unknown names.
// CLI maps these to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration values (distributions not summing to 1, negative
// noise, ...).
class config_error : public input_error {
public:
    explicit config_error(const std::string& msg) : input_error(msg) {}
};

// Text that does not match a documented grammar; carries a 1-based line.
class parse_error : public input_error {
public:
    parse_error(const std::string& msg, int line)
        : input_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Non-finite intermediates, impossible observations and the like.
// CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Observed facts have zero probability under the knowledge base.
class inconsistency_error : public numerical_error {
public:
    explicit inconsistency_error(const std::string& msg) : numerical_error(msg) {}
};

}  // namespace lcorpp

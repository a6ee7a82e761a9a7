#pragma once

#include <stdexcept>
#include <string>

namespace wreathlab {

// Violated precondition or malformed input. CLI maps this to exit code 1;
// the message names the precondition that failed.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap (group closure cap, search cap) was exhausted.
// CLI maps this to exit code 2.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed. Unreachable for valid inputs; CLI maps this
// to exit code 3.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace wreathlab

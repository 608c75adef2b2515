#pragma once

#include <stdexcept>
#include <string>

namespace unram {

// Bad argument: dimension/tag mismatch, non-prime modulus, index out of range.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured enumeration cap would be exceeded. Message names the cap.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, unsigned long long cap)
        : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

    unsigned long long cap() const { return cap_; }

private:
    unsigned long long cap_;
};

// A search that is guaranteed to succeed for pipeline inputs failed anyway.
// Carries the size of the exhausted search frontier.
class construction_error : public std::runtime_error {
public:
    construction_error(const std::string& what, unsigned long long frontier)
        : std::runtime_error(what + " (search frontier " + std::to_string(frontier) + ")"),
          frontier_(frontier) {}

    unsigned long long frontier() const { return frontier_; }

private:
    unsigned long long frontier_;
};

// Malformed text input (symbol syntax, form lists, documents).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unram

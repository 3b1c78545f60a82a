#pragma once

#include <stdexcept>
#include <string>

namespace spisep {

/// Input violates a documented precondition (odd order, non-PD, bad pattern, ...).
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine did not reach its contractual accuracy.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or text.
class parse_error : public invalid_input {
public:
    explicit parse_error(const std::string& what) : invalid_input(what) {}
};

/// An exhaustive enumeration would exceed its size guard.
class size_guard_error : public invalid_input {
public:
    explicit size_guard_error(const std::string& what) : invalid_input(what) {}
};

} // namespace spisep

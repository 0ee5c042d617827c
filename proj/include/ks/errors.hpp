#pragma once

#include <stdexcept>
#include <string>

namespace ks {

// Violated precondition or invariant on caller-supplied data.
// The CLI maps this to exit code 2.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (form specs, element expressions, JSON documents).
// The CLI maps this to exit code 1.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A condition the library guarantees can never occur on valid input,
// e.g. an oracle cross-check disagreeing with a closed-form result.
// The CLI maps this to exit code 3.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ks

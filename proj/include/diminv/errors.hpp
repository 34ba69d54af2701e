#pragma once

#include <stdexcept>
#include <string>

namespace diminv {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or non-conforming input (bad JSON, schema mismatch).
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// A precondition or mathematical hypothesis of an operation is violated
// (division by zero, non-coprime inputs, non-monic polynomial, ...).
class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

// A bounded search or enumeration budget was exhausted before an answer
// was found. The message reports the bound that was hit.
class SearchExhausted : public Error {
public:
    explicit SearchExhausted(const std::string& msg) : Error(msg) {}
};

// A sign or ordering decision could not be certified at the available
// enclosure precision and the enclosures cannot be refined further.
class RefinementNeeded : public SearchExhausted {
public:
    explicit RefinementNeeded(const std::string& msg) : SearchExhausted(msg) {}
};

} // namespace diminv

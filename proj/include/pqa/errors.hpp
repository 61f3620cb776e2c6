#pragma once

#include <stdexcept>
#include <string>

namespace pqa {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid model input: empty choice sets, broken invariants, impossible
// conditioning and the like.
class ModelError : public Error {
public:
    using Error::Error;
};

// Corpus files or utility tables that do not satisfy the schema.
class CorpusError : public Error {
public:
    using Error::Error;
};

// LLM output that could not be turned into a value.
class ParseError : public Error {
public:
    using Error::Error;
};

// Network-level failure after retries were exhausted, or a cache miss in
// offline mode.
class TransportError : public Error {
public:
    using Error::Error;
};

// Bad endpoint, bad key, bad flags: the request can never succeed as
// configured.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace pqa

#pragma once

#include <stdexcept>
#include <string>

namespace cuprank {

/// Base class for all cuprank failures. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent schema / vocabulary definitions.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

/// Bad input data: unparseable records, unknown categories, empty corpora.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

/// Model artifact problems: version mismatch, checksum failure, truncation.
class ModelError : public Error {
public:
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

/// Invalid configuration (scenario files, option ranges).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace cuprank

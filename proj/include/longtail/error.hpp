#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace longtail {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or record.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Input that parses but violates a data contract (conflicting mappings,
/// out-of-range coordinates, too few playlists for the requested folds...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Reference to a city, model or id that does not exist.
class UnknownEntity : public Error {
public:
    using Error::Error;
};

/// Ill-conditioned solve or non-finite values.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace longtail

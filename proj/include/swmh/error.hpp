#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swmh {

/// Malformed input file. Carries the source (path or stream name) and the
/// 1-based line the problem was found on (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : std::runtime_error(format(source, line, what)),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line,
                              const std::string& what) {
        if (line == 0) return source + ": " + what;
        return source + ":" + std::to_string(line) + ": " + what;
    }

    std::string source_;
    std::size_t line_;
};

/// An id in the file lies outside the bounds declared by its header.
class RangeError : public ParseError {
public:
    using ParseError::ParseError;
};

/// A syntactically valid field holds a semantically invalid value.
class ValueError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Filesystem-level failure (missing file, unwritable directory, ...).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace swmh

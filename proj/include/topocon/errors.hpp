#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace topocon {

enum class Errc {
    parse,
    invalid_argument,
    unbound_variable,
    frame_mismatch,
    cap_exceeded,
    geometry,
    io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Syntax error in formula source; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

} // namespace topocon

#pragma once

#include <stdexcept>
#include <string>

namespace raes {

enum class ErrorCode {
    invalid_argument = 1,
    domain = 2,
    rejected_cut = 3,
    numeric = 4,
    config = 5,
    io = 6,
    parse = 7,
    invariant = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

struct RejectedCut : Error {
    explicit RejectedCut(const std::string& w) : Error(ErrorCode::rejected_cut, w) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(ErrorCode::numeric, w) {}
};

struct ConfigError : Error {
    ConfigError(std::string field, const std::string& w)
        : Error(ErrorCode::config, field + ": " + w), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};

struct ParseError : Error {
    ParseError(std::size_t row, const std::string& w)
        : Error(ErrorCode::parse, "row " + std::to_string(row) + ": " + w), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

struct InvariantError : Error {
    explicit InvariantError(const std::string& w) : Error(ErrorCode::invariant, w) {}
};

} // namespace raes

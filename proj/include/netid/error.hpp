#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netid {

/// Failure classes raised by the identification library.
enum class ErrorKind {
    Parse,
    Validation,
    InvalidArgument,
    NonFinite,
    RankDeficient,
    DegenerateData,
    RankSelectionFailed,
    SingularPartition,
    NotNetworkConsistent,
    RankDropAfterRounding,
    InputRankDeficient,
    NotGraphic,
    Inconclusive,
    CoefficientNotUnit,
    SignConflict,
    LabelMismatch,
    InfeasibleShape,
    Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message);

    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NotNetworkConsistentError : public Error {
public:
    NotNetworkConsistentError(double max_deviation, std::ptrdiff_t row, std::ptrdiff_t edge);

    double max_deviation() const noexcept { return max_deviation_; }
    std::ptrdiff_t row() const noexcept { return row_; }
    std::ptrdiff_t edge() const noexcept { return edge_; }

private:
    double max_deviation_;
    std::ptrdiff_t row_;
    std::ptrdiff_t edge_;
};

class CoefficientNotUnitError : public Error {
public:
    CoefficientNotUnitError(std::ptrdiff_t row, std::ptrdiff_t edge, double beta);

    std::ptrdiff_t row() const noexcept { return row_; }
    std::ptrdiff_t edge() const noexcept { return edge_; }
    double beta() const noexcept { return beta_; }

private:
    std::ptrdiff_t row_;
    std::ptrdiff_t edge_;
    double beta_;
};

class SignConflictError : public Error {
public:
    explicit SignConflictError(std::ptrdiff_t edge);

    std::ptrdiff_t edge() const noexcept { return edge_; }

private:
    std::ptrdiff_t edge_;
};

} // namespace netid

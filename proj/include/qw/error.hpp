#pragma once

#include <stdexcept>
#include <string>

namespace qw {

// Every failure raised by the library carries one of these kinds so that
// callers (and the CLI) can react without parsing messages.
enum class ErrorKind {
    DivisionByZero,
    ZeroDivisor,
    BadApproxRoot,
    IncompatibleTowers,
    RingMismatch,
    NonHomogeneous,
    MissingGenerator,
    DimensionMismatch,
    DegreeMismatch,
    NotUnitPoint,
    UnsupportedExponent,
    UnsupportedN,
    OutOfRange,
    Parse,
    Precision,
};

const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace qw

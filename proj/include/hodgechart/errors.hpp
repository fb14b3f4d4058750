#pragma once

#include <stdexcept>
#include <string>

namespace hodgechart {

enum class ErrorKind {
    Internal,
    Schema,
    ConeTooLarge,
    NumericDomain,
    NotNilpotent,
    NotInvariant,
    NotFiltrationCompatible,
    InvalidSplit,
    SeparationFailure,
    SampleInconsistent,
    IncidenceError,
    NotAComplex,
    Disconnected,
    PoorFit,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

// Numeric domain failures keep their own label (NotPolarized, PZero,
// NotInDomain) but share one error code.
class DomainError : public Error {
  public:
    DomainError(std::string label, const std::string& what)
        : Error(ErrorKind::NumericDomain, label + ": " + what), label_(std::move(label)) {}
    const std::string& label() const { return label_; }

  private:
    std::string label_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, std::string(error_kind_name(kind)) + ": " + what);
}

}  // namespace hodgechart

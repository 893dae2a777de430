#pragma once

#include <stdexcept>
#include <string>

namespace kforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define KFORGE_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

KFORGE_DEFINE_ERROR(DivisionByZero);
KFORGE_DEFINE_ERROR(OrderMismatch);
KFORGE_DEFINE_ERROR(NonInvertibleConstantTerm);
KFORGE_DEFINE_ERROR(NonNilpotentArgument);
KFORGE_DEFINE_ERROR(ConstantTermNotOne);
KFORGE_DEFINE_ERROR(DivisibilityError);
KFORGE_DEFINE_ERROR(DimMismatch);
KFORGE_DEFINE_ERROR(DegreeOverflow);
KFORGE_DEFINE_ERROR(NonInvertibleTensor);
KFORGE_DEFINE_ERROR(InvalidSpec);
KFORGE_DEFINE_ERROR(UnknownGenerator);
KFORGE_DEFINE_ERROR(NonUnitPsiConstantTerm);
KFORGE_DEFINE_ERROR(DomainViolation);
KFORGE_DEFINE_ERROR(NoSignChange);
KFORGE_DEFINE_ERROR(IOFailure);
KFORGE_DEFINE_ERROR(UnknownSymbol);
KFORGE_DEFINE_ERROR(IndexOutOfRange);

#undef KFORGE_DEFINE_ERROR

/// Parse error at a 1-based line and column.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string &what, int line, int column)
      : Error("SyntaxError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

} // namespace kforge

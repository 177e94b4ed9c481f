#pragma once

#include <stdexcept>
#include <string>

namespace dgpd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table refers to an id that does not exist, repeats an id, or lists a
/// composition for a pair that is not composable.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Lookup of an object, arrow, group element or representation that is not present.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// compose(a, b) with source(a) != target(b).
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different arrow sets or different function models.
class ContextMismatchError : public Error {
 public:
  using Error::Error;
};

/// A truncated level band is too small to hold a result.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Preconditions of an operation are not met (invalid Haar data, index out of
/// range, non-group input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree by theorem disagree; signals an implementation bug.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or value; the message carries line/column when known.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad invocation: unknown check or parameter, invalid value, tolerance ≤ 0.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgpd

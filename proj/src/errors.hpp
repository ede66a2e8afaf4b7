#ifndef SMALLROOTS_ERRORS_HPP
#define SMALLROOTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smallroots {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments, out-of-range parameters, malformed input files.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A lattice operation received rationally dependent rows.
class DependentRowsError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed (e.g. inexact unscaling division).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace smallroots

#endif

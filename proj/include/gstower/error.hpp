#ifndef GSTOWER_ERROR_HPP
#define GSTOWER_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gstower {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or out-of-domain parameters (d, N, p, t, tolerances, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Request exceeds the desk-scale budget of the truncated algebra.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Inverse requested for a series with zero constant term.
class NonUnitError : public Error {
 public:
  using Error::Error;
};

// Malformed word text. position() is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at column " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A relator of depth 1 was supplied.
class NonMinimalPresentationError : public Error {
 public:
  using Error::Error;
};

// A computation could not reach a definite answer (unresolved depth,
// resolution floor hit, ...). Distinct from a definite negative answer.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// A cutting datum contained an element of depth < 2.
class InadmissibleCutError : public Error {
 public:
  using Error::Error;
};

// Tower / decomposition / class-group model violates its invariants.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Tower hypotheses fail; the message lists the failing comparisons.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace gstower

#endif  // GSTOWER_ERROR_HPP

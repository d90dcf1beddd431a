#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace incidence {

using ObjectId = std::int32_t;
using MorphismId = std::int32_t;

inline constexpr ObjectId kNoObject = -1;
inline constexpr MorphismId kNoMorphism = -1;

/// Orientation of a rank-difference-1 incidence, or of a signed point.
class Sign {
 public:
  constexpr Sign() = default;

  static constexpr Sign plus() { return Sign(1); }
  static constexpr Sign minus() { return Sign(-1); }
  static constexpr Sign from_int(int v) { return v < 0 ? minus() : plus(); }

  constexpr int value() const { return value_; }
  constexpr bool positive() const { return value_ > 0; }
  constexpr Sign flipped() const { return Sign(-value_); }

  constexpr Sign operator*(Sign other) const {
    return Sign(value_ * other.value_);
  }
  constexpr Sign operator-() const { return flipped(); }
  constexpr bool operator==(const Sign&) const = default;

  char symbol() const { return positive() ? '+' : '-'; }

 private:
  constexpr explicit Sign(int v) : value_(v) {}
  int value_ = 1;
};

using OptSign = std::optional<Sign>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed category text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A presentation that violates its own invariants (ranks, relations, signs).
class PresentationError : public Error {
 public:
  using Error::Error;
};

/// Lookup of an object, morphism or fixture that does not exist.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its precondition (non-composable pair, bad index).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A sign-dependent operation met an incidence that carries no sign.
class SignError : public Error {
 public:
  using Error::Error;
};

}  // namespace incidence

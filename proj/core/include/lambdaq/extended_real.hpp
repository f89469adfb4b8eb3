#pragma once

#include <compare>
#include <string>

namespace lambdaq {

// A point of the extended real line R u {-inf, +inf}.
//
// Quantile operations return infinities as values of this type and never as
// IEEE infinities, so finite() rejects non-finite input.
class ExtendedReal {
 public:
  enum class Kind { neg_infinity, finite, pos_infinity };

  static ExtendedReal finite(double value);
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_infinity, 0.0); }
  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_infinity, 0.0); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_infinity; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_infinity; }

  // Throws std::logic_error when the value is infinite.
  double value() const;

  // IEEE view: +-infinity for the infinite kinds.
  double to_double() const;

  friend constexpr bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b);

 private:
  constexpr ExtendedReal(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

// Shortest round-trip decimal for finite values, "+inf" / "-inf" otherwise.
std::string to_string(const ExtendedReal& x);
std::string format_double(double x);

// Inverse of to_string; accepts the "+inf"/"-inf" tokens and decimal numbers.
ExtendedReal parse_extended(const std::string& text);

inline const ExtendedReal& min(const ExtendedReal& a, const ExtendedReal& b) { return b < a ? b : a; }
inline const ExtendedReal& max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

}  // namespace lambdaq

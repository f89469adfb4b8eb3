#include "lambdaq/extended_real.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

#include "lambdaq/errors.hpp"

namespace lambdaq {

ExtendedReal ExtendedReal::finite(double value) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("ExtendedReal::finite requires a finite value");
  }
  // -0.0 and 0.0 must compare and print identically.
  return ExtendedReal(Kind::finite, value == 0.0 ? 0.0 : value);
}

double ExtendedReal::value() const {
  if (kind_ != Kind::finite) throw std::logic_error("ExtendedReal::value on infinite value");
  return value_;
}

double ExtendedReal::to_double() const {
  switch (kind_) {
    case Kind::neg_infinity:
      return -std::numeric_limits<double>::infinity();
    case Kind::pos_infinity:
      return std::numeric_limits<double>::infinity();
    case Kind::finite:
      break;
  }
  return value_;
}

std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != ExtendedReal::Kind::finite) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string to_string(const ExtendedReal& x) {
  if (x.is_neg_inf()) return "-inf";
  if (x.is_pos_inf()) return "+inf";
  return format_double(x.value());
}

ExtendedReal parse_extended(const std::string& text) {
  if (text == "+inf" || text == "inf") return ExtendedReal::pos_inf();
  if (text == "-inf") return ExtendedReal::neg_inf();
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("not an extended real: '" + text + "'");
  }
  return ExtendedReal::finite(v);
}

}  // namespace lambdaq

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fup {

/// Exact rational number with a positive denominator, always in lowest terms.
///
/// Arithmetic is carried out in 128-bit intermediates and throws
/// CapacityError if a reduced result does not fit in 64 bits.
class ExactRational {
 public:
  constexpr ExactRational() = default;
  ExactRational(std::int64_t numerator, std::int64_t denominator = 1);

  /// Parses "p/r", "p" or a decimal-free integer. Whitespace is not allowed.
  static ExactRational parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  ExactRational operator-() const;
  friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);

  friend bool operator==(const ExactRational& a, const ExactRational& b) = default;
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

ExactRational abs(const ExactRational& x);

}  // namespace fup

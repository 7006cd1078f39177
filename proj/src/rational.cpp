#include "fup/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "fup/error.hpp"

namespace fup {
namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

ExactRational make_reduced(i128 num, i128 den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw CapacityError("rational overflows 64-bit range");
  return ExactRational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ParameterError("malformed rational component: '" + std::string(s) + "'");
  return v;
}

}  // namespace

ExactRational::ExactRational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw ParameterError("rational with zero denominator");
  constexpr auto lowest = std::numeric_limits<std::int64_t>::min();
  if (numerator == lowest || denominator == lowest) throw CapacityError("rational overflows 64-bit range");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

ExactRational ExactRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRational(parse_int(text), 1);
  return ExactRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::int64_t ExactRational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t ExactRational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string ExactRational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ExactRational ExactRational::operator-() const { return make_reduced(-static_cast<i128>(num_), den_); }

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) { return a + (-b); }

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.num_ == 0) throw ParameterError("division by zero rational");
  return make_reduced(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactRational abs(const ExactRational& x) { return x < ExactRational(0) ? -x : x; }

}  // namespace fup

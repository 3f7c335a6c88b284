#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbitforge {

using BigInt = boost::multiprecision::cpp_int;

BigInt pow(const BigInt& base, std::uint64_t exponent);
BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);
// n (n-1) ... (n-k+1); zero when k > n.
BigInt falling_factorial(std::uint64_t n, std::uint64_t k);

std::string to_string(const BigInt& value);

/// Exact rational with a positive denominator, always kept in lowest terms.
/// Used for exponents and constants in the growth inequalities, which are
/// small; the comparisons themselves run in BigInt.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  /// Accepts "a/b" or "a".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool positive() const { return num_ > 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace orbitforge

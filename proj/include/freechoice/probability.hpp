#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

namespace freechoice {

/// Tolerance band accepted around [0,1] for approximate values before clamping.
inline constexpr double kApproxClampSlack = 1e-12;

/// A probability that is either an exact rational in lowest terms or an
/// approximate double. Both forms are always within [0,1].
class Probability {
 public:
  Probability() : value_(mpq_class(0)) {}

  static Probability exact(mpq_class q);
  static Probability exact(long numerator, unsigned long denominator);
  static Probability approx(double value);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }

  /// Exact value; throws std::logic_error on an approximate probability.
  const mpq_class& rational() const;
  double value() const;

  /// "n/d" for exact values, shortest round-trip decimal for approximate ones.
  std::string to_string() const;

  friend bool operator==(const Probability& a, const Probability& b);

 private:
  explicit Probability(mpq_class q) : value_(std::move(q)) {}
  explicit Probability(double v) : value_(v) {}

  std::variant<mpq_class, double> value_;
};

/// Formats a rational as "n/d" (always with a denominator).
std::string rational_string(const mpq_class& q);

}  // namespace freechoice

#include "freechoice/probability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "freechoice/error.hpp"

namespace freechoice {

Probability Probability::exact(mpq_class q) {
  q.canonicalize();
  if (sgn(q) < 0) {
    throw Error(ErrorCode::NegativeProbability, rational_string(q));
  }
  if (q > 1) {
    throw Error(ErrorCode::InvalidProbability, rational_string(q) + " exceeds 1");
  }
  return Probability(std::move(q));
}

Probability Probability::exact(long numerator, unsigned long denominator) {
  if (denominator == 0) {
    throw Error(ErrorCode::InvalidProbability, "zero denominator");
  }
  return exact(mpq_class(numerator, denominator));
}

Probability Probability::approx(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidProbability, "non-finite value");
  }
  if (value < -kApproxClampSlack) {
    throw Error(ErrorCode::NegativeProbability, std::to_string(value));
  }
  if (value > 1.0 + kApproxClampSlack) {
    throw Error(ErrorCode::InvalidProbability, std::to_string(value) + " exceeds 1");
  }
  return Probability(std::clamp(value, 0.0, 1.0));
}

const mpq_class& Probability::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) {
    return *q;
  }
  throw std::logic_error("approximate probability has no exact value");
}

double Probability::value() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) {
    return q->get_d();
  }
  return std::get<double>(value_);
}

std::string Probability::to_string() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) {
    return rational_string(*q);
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
  return std::string(buf, res.ptr);
}

bool operator==(const Probability& a, const Probability& b) {
  if (a.is_exact() != b.is_exact()) {
    return false;
  }
  if (a.is_exact()) {
    return a.rational() == b.rational();
  }
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace freechoice

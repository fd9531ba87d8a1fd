#pragma once

#include <stdexcept>
#include <string>

#include "qcverify/rational.hpp"

namespace qcv {

// Dual-track scalar: exact rational or binary float. Mixing the two promotes
// to float; whether a value is still exact is queryable so reports can state
// "exact" vs "numeric" verdicts truthfully.
class Scalar {
 public:
  Scalar() : exact_(true), q_(0) {}
  Scalar(const Rational& q) : exact_(true), q_(q) {}
  Scalar(long n) : exact_(true), q_(n) {}
  static Scalar flt(double x) {
    Scalar s;
    s.exact_ = false;
    s.f_ = x;
    return s;
  }

  bool exact() const { return exact_; }
  const Rational& rational() const {
    if (!exact_) throw std::logic_error("Scalar: float value has no exact rational");
    return q_;
  }
  double value() const { return exact_ ? q_.get_d() : f_; }

  bool is_zero() const { return exact_ ? qcv::is_zero(q_) : f_ == 0.0; }

  Scalar operator-() const {
    if (exact_) return Scalar(Rational(-q_));
    return flt(-f_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(Rational(a.q_ + b.q_));
    return flt(a.value() + b.value());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(Rational(a.q_ * b.q_));
    return flt(a.value() * b.value());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (a.exact_ && b.exact_) return Scalar(Rational(a.q_ / b.q_));
    return flt(a.value() / b.value());
  }

  // Equality for exact pairs is exact; any float operand compares under tol.
  static bool eq(const Scalar& a, const Scalar& b, double tol) {
    if (a.exact_ && b.exact_) return a.q_ == b.q_;
    double d = a.value() - b.value();
    return (d < 0 ? -d : d) <= tol;
  }

  std::string str() const;

 private:
  bool exact_;
  Rational q_;
  double f_ = 0.0;
};

// Shortest round-trip decimal for a double.
std::string double_str(double x);

}  // namespace qcv

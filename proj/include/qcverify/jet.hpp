#pragma once

#include <cmath>

namespace qcv {

// First-order dual number: value and derivative with respect to the family
// parameter. Keeps the closed-form solution families' derivatives exact to
// machine precision (no finite differencing of the evaluators).
struct Jet {
  double v = 0.0;
  double d = 0.0;

  Jet() = default;
  Jet(double value) : v(value), d(0.0) {}
  Jet(double value, double deriv) : v(value), d(deriv) {}
  static Jet var(double value) { return Jet(value, 1.0); }
};

inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
inline Jet operator-(Jet a) { return {-a.v, -a.d}; }
inline Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Jet operator/(Jet a, Jet b) {
  double inv = 1.0 / b.v;
  return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}
inline Jet jpow(Jet a, double p) {
  double w = std::pow(a.v, p);
  return {w, p * w / a.v * a.d};
}
inline Jet jsqrt(Jet a) {
  double s = std::sqrt(a.v);
  return {s, 0.5 / s * a.d};
}
inline Jet jexp(Jet a) {
  double e = std::exp(a.v);
  return {e, e * a.d};
}
inline Jet jlog(Jet a) { return {std::log(a.v), a.d / a.v}; }
inline Jet jsin(Jet a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Jet jcos(Jet a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Jet jsinh(Jet a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Jet jcosh(Jet a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }

}  // namespace qcv

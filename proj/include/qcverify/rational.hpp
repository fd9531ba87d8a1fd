#pragma once

#include <gmpxx.h>
#include <string>

namespace qcv {

// Exact rational scalar. All structure constants, connection coefficients and
// curvature components of the left-invariant machinery live here.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat_parse(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace qcv

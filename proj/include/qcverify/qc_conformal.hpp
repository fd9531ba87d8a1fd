#pragma once

#include "qcverify/biquard.hpp"

namespace qcv {

// Horizontal curvature-type 4-tensor with exact entries, indexed by positions
// in the horizontal block (0-based).
struct HTensor4 {
  int h = 0;
  std::vector<Rational> a;
  explicit HTensor4(int hh = 0) : h(hh), a(size_t(hh) * hh * hh * hh, Rational(0)) {}
  Rational& at(int x, int y, int z, int v) {
    return a[((size_t(x) * h + y) * h + z) * h + v];
  }
  const Rational& at(int x, int y, int z, int v) const {
    return a[((size_t(x) * h + y) * h + z) * h + v];
  }
  bool is_zero() const {
    for (auto& q : a)
      if (sgn(q) != 0) return false;
    return true;
  }
};

// The qc-conformal curvature in its computational form: vanishing of this
// tensor is equivalent to local qc-conformal flatness.
HTensor4 wr_tensor(const CurvatureTensor& R, const TorsionDecomp& d, const QcStructure& q);

// The invariantly projected form of the same obstruction; vanishes exactly
// when wr_tensor does (cross-validation of the two routes).
HTensor4 wqc_tensor(const CurvatureTensor& R, const TorsionDecomp& d, const QcStructure& q);

struct FlatnessVerdict {
  bool flat = false;
  // 1-based horizontal witness quadruple for a nonzero component
  std::array<int, 4> witness{0, 0, 0, 0};
  Rational witness_value;
  Rational S;
  bool torsion_zero = false;
};

// Runs the full pipeline (validation, connection, curvature, torsion, WR).
FlatnessVerdict flatness_verdict(const QcStructure& q);

}  // namespace qcv

#pragma once

#include <optional>
#include <vector>

#include "qcverify/rational.hpp"

namespace qcv {

// Dense matrix over the rationals; just enough for the constrained solves and
// span computations the connection assembly needs.
struct MatQ {
  int rows = 0, cols = 0;
  std::vector<Rational> a;
  MatQ(int r = 0, int c = 0) : rows(r), cols(c), a(size_t(r) * c, Rational(0)) {}
  Rational& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[size_t(i) * cols + j]; }
  static MatQ identity(int n);
  MatQ operator*(const MatQ& o) const;
  MatQ operator+(const MatQ& o) const;
  MatQ operator-(const MatQ& o) const;
  MatQ operator*(const Rational& c) const;
  MatQ transposed() const;
  bool is_zero() const;
  static MatQ commutator(const MatQ& x, const MatQ& y);  // xy - yx
  // <A,B> = sum_i g(A e_i, B e_i) = tr(A^T B) for the orthonormal frame.
  static Rational inner(const MatQ& x, const MatQ& y);
};

int rank_exact(MatQ m);

// Least-structure exact solve of A x = b. Returns nullopt when inconsistent;
// asserts nothing about uniqueness (check rank separately when needed).
std::optional<std::vector<Rational>> solve_exact(MatQ a, std::vector<Rational> b);

// Basis of the nullspace of A (as column vectors).
std::vector<std::vector<Rational>> nullspace_exact(MatQ a);

}  // namespace qcv

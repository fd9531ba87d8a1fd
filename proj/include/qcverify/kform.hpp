#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcverify/scalar.hpp"

namespace qcv {

// Frame index sets are bitmasks over e^1..e^n (bit i-1 <-> e^i), n <= 32.
using IndexMask = uint32_t;

int mask_degree(IndexMask m);
// Sign of e^A ^ e^B for disjoint sorted index sets; 0 if they intersect.
int merge_sign(IndexMask a, IndexMask b);
std::string mask_str(IndexMask m);
IndexMask mask_of(std::initializer_list<int> one_based);

// Diagonal +-1 metric on the frame together with the volume orientation:
// orientation +1 means vol = +e^{1...n}, -1 the reversed one.
struct Signature {
  int dim = 0;
  std::vector<int> diag;  // entries +1 / -1, size dim
  int orientation = +1;

  static Signature euclidean(int n) {
    Signature s;
    s.dim = n;
    s.diag.assign(n, +1);
    return s;
  }
  static Signature neutral22() {
    Signature s;
    s.dim = 4;
    s.diag = {+1, +1, -1, -1};
    return s;
  }
  int det_sign() const {
    int d = 1;
    for (int e : diag) d *= e;
    return d;
  }
};

// Sparse antisymmetric k-form on an n-frame: strictly increasing multi-indices
// only, zero coefficients dropped.
class KForm {
 public:
  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {}

  static KForm zero(int dim, int degree) { return KForm(dim, degree); }
  static KForm basis(int dim, std::initializer_list<int> idx_one_based,
                     Scalar coeff = Scalar(1));
  // constant (degree-0) form
  static KForm constant(int dim, Scalar c);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  bool exact() const;
  const std::map<IndexMask, Scalar>& terms() const { return terms_; }

  Scalar coeff(IndexMask m) const;
  Scalar coeff(std::initializer_list<int> idx_one_based) const;
  void set(IndexMask m, const Scalar& c);
  void add(IndexMask m, const Scalar& c);

  KForm operator-() const;
  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm operator*(const Scalar& c) const;

  // Largest |coefficient| (0 for the zero form).
  double max_abs() const;
  // Exact equality when both sides are exact; otherwise coefficient-wise
  // comparison under tol.
  static bool eq(const KForm& a, const KForm& b, double tol = 0.0);

  std::string str() const;

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<IndexMask, Scalar> terms_;
};

// Graded product. Throws std::invalid_argument on frame dimension mismatch.
KForm wedge(const KForm& a, const KForm& b);

// Interior multiplication v ⌟ a with the frame vector e_v (1-based index).
// Throws std::domain_error on degree-0 input.
KForm interior(int v_one_based, const KForm& a);

// Hodge star for a diagonal +-1 metric and the signature's orientation.
KForm hodge_star(const KForm& a, const Signature& sig);

// Dense rank-2 tensor on the frame, used by the Kulkarni-Nomizu product and
// by the curvature formulas.
struct Tensor2 {
  int dim = 0;
  std::vector<Scalar> a;  // row-major dim*dim
  explicit Tensor2(int n = 0) : dim(n), a(n * n, Scalar(0)) {}
  Scalar& at(int i, int j) { return a[i * dim + j]; }
  const Scalar& at(int i, int j) const { return a[i * dim + j]; }
  bool symmetric() const;
  bool antisymmetric() const;
};

// Dense rank-4 tensor (curvature-type) on the frame.
struct Tensor4 {
  int dim = 0;
  std::vector<Scalar> a;
  explicit Tensor4(int n = 0) : dim(n), a(size_t(n) * n * n * n, Scalar(0)) {}
  Scalar& at(int i, int j, int k, int l) {
    return a[((size_t(i) * dim + j) * dim + k) * dim + l];
  }
  const Scalar& at(int i, int j, int k, int l) const {
    return a[((size_t(i) * dim + j) * dim + k) * dim + l];
  }
  double max_abs() const;
};

// Kulkarni-Nomizu product (h ⊘ k)(X,Y,Z,V) = h(X,Z)k(Y,V) + h(Y,V)k(X,Z)
// - h(Y,Z)k(X,V) - h(X,V)k(Y,Z). Both arguments must be symmetric or both
// antisymmetric; throws std::invalid_argument otherwise.
Tensor4 kn_product(const Tensor2& h, const Tensor2& k);

}  // namespace qcv

#pragma once

#include <string>
#include <vector>

#include "qcverify/kform.hpp"
#include "qcverify/linalg_exact.hpp"

namespace qcv {

// Left-invariant coframe data: the exterior derivative of every basis 1-form
// as an exact 2-form. Structure constants follow the convention
// de^k = sum_{i<j} q^k_{ij} e^{ij},   [e_i, e_j] = -sum_k q^k_{ij} e_k.
class LieFrame {
 public:
  LieFrame() = default;
  LieFrame(std::string name, int dim) : name_(std::move(name)), dim_(dim) {
    d1_.assign(dim, KForm(dim, 2));
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  // de^k (k one-based).
  const KForm& d_basis(int k) const { return d1_[k - 1]; }
  void set_d_basis(int k, const KForm& f);

  // Bracket coefficient: [e_i, e_j] = sum_k c(k,i,j) e_k.
  Rational c(int k, int i, int j) const;
  // Bracket of frame vectors as a coefficient vector.
  std::vector<Rational> bracket(int i, int j) const;

  // Exterior derivative of any form over this frame (Leibniz over terms).
  KForm d(const KForm& a) const;

  // Dimensions of the derived series terms [g,g], [[g,g],[g,g]], ...
  std::vector<int> derived_series_dims(int depth = 2) const;

 private:
  std::string name_;
  int dim_ = 0;
  std::vector<KForm> d1_;
};

struct JacobiEntry {
  int k;           // basis index
  KForm residual;  // d(d(e^k)); zero iff Jacobi holds for that slot
};

struct JacobiReport {
  std::string algebra;
  bool pass = true;
  std::vector<JacobiEntry> failures;
};

JacobiReport jacobi_check(const LieFrame& L);

// Plain-text algebra files: one line per non-closed basis form, e.g.
//   de5 = 2 e12 + 2 e34 - 1/2 e67
// Omitted forms are closed. Dimension is the largest index mentioned, or an
// explicit "dim N" first line.
LieFrame parse_algebra_file(const std::string& path);
LieFrame parse_algebra_text(const std::string& text, const std::string& name);

}  // namespace qcv

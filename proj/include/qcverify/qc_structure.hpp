#pragma once

#include <array>
#include <string>
#include <vector>

#include "qcverify/lie_frame.hpp"

namespace qcv {

// Quaternionic contact data on a left-invariant frame: a 4n/3 split with
// contact forms eta_s, fundamental 2-forms omega_s and the induced almost
// complex structures I_s on the horizontal block. The frame metric is the
// orthonormal one.
struct QcStructure {
  const LieFrame* frame = nullptr;
  std::vector<int> H;      // horizontal frame indices (one-based), size 4n
  std::array<int, 3> V{};  // vertical (Reeb) frame indices, one-based
  std::array<KForm, 3> eta;
  std::array<KForm, 3> omega;

  int n() const { return int(H.size()) / 4; }
  int hdim() const { return int(H.size()); }

  // Almost complex structure on H as a matrix in the horizontal frame basis:
  // column a holds I_s e_{H[a]}. Derived from omega via omega_s(X,Y)=g(I_sX,Y).
  MatQ complex_structure(int s) const;

  // adjoint action of the Reeb field on H, projected to H
  MatQ ad_horizontal(int s) const;

  // omega_s as an antisymmetric matrix over the horizontal indices
  MatQ omega_matrix(int s) const;
};

struct CheckItem {
  std::string name;
  bool pass = true;
  bool exact = true;
  std::string detail;  // residual form / witness, empty when clean
};

struct CheckReport {
  std::string subject;
  std::vector<CheckItem> items;
  bool pass() const {
    for (auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  void add(const std::string& name, bool ok, const std::string& detail = "", bool exact = true) {
    items.push_back({name, ok, exact, detail});
  }
};

// Axiom-by-axiom validation: quaternion identities, hermitian compatibility,
// d eta restricted to H against 2 omega, and the Reeb conditions. All exact.
CheckReport validate_qc(const QcStructure& q);

}  // namespace qcv

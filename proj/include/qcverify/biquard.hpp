#pragma once

#include <array>

#include "qcverify/qc_structure.hpp"

namespace qcv {

// The canonical connection of a qc structure, assembled in two stages:
// the horizontal part from metric compatibility plus the prescribed purely
// vertical horizontal torsion (a closed-form Koszul solve), and the
// vertical-direction part from the exactly solved linear system
// { skew-symmetry, sp(1)-consistency of the covariant derivative of the
//   complex structures, vanishing of the sp(n)+sp(1) projection of the
//   torsion endomorphism }.
// All coefficients exact rationals.
struct BiquardConnection {
  const QcStructure* q = nullptr;
  int dim = 0;
  std::vector<Rational> gamma;  // Gamma^c_{ab}, nabla_{e_a} e_b = Gamma^c_{ab} e_c
  // sp(1) connection 1-forms on the full frame: alpha[s][a] = alpha_{s+1}(e_{a+1})
  std::array<std::vector<Rational>, 3> alpha;

  Rational Gamma(int a, int b, int c) const {  // one-based, value index c
    return gamma[((size_t(a) - 1) * dim + (b - 1)) * dim + (c - 1)];
  }
  Rational& Gamma(int a, int b, int c) {
    return gamma[((size_t(a) - 1) * dim + (b - 1)) * dim + (c - 1)];
  }
  // nabla_{e_a} applied to the span of H, as a matrix over the horizontal block
  MatQ horizontal_block(int a) const;
};

// Full (0,4) curvature R(e_a,e_b,e_c,e_d) = g(R(e_a,e_b)e_c, e_d) of a
// left-invariant connection, exact.
struct CurvatureTensor {
  int dim = 0;
  std::vector<Rational> r;
  Rational at(int a, int b, int c, int d) const {
    return r[(((size_t(a) - 1) * dim + (b - 1)) * dim + (c - 1)) * dim + (d - 1)];
  }
  Rational& at(int a, int b, int c, int d) {
    return r[(((size_t(a) - 1) * dim + (b - 1)) * dim + (c - 1)) * dim + (d - 1)];
  }
};

// Torsion data of the connection split into its invariant pieces.
struct TorsionDecomp {
  int hdim = 0;
  std::array<MatQ, 3> t_xi;     // torsion endomorphisms T_{xi_s} on H
  std::array<MatQ, 3> t0_xi;    // symmetric parts
  std::array<MatQ, 3> b_xi;     // skew parts
  MatQ T0;                      // T0(X,Y) as a symmetric 2-tensor on H
  MatQ U;                       // U(X,Y); vanishes identically when n = 1
  MatQ u;                       // the commuting symmetric tensor with b_xi = I_s u
  Rational S;                   // normalized qc scalar curvature
  std::array<MatQ, 3> rho;      // qc-Ricci 2-forms on H (as matrices)
  bool torsion_zero() const {
    for (auto& t : t_xi)
      if (!t.is_zero()) return false;
    return true;
  }
};

// Throws std::runtime_error when the constraint system is rank-deficient or
// the input fails an axiom mid-solve (signals an invalid qc structure).
BiquardConnection solve_biquard(const QcStructure& q);

CurvatureTensor curvature(const BiquardConnection& c);

TorsionDecomp torsion_decompose(const QcStructure& q, const BiquardConnection& c,
                                const CurvatureTensor& R);

// Residuals of the structure equations
//   2 omega_i = d eta_i + eta_j ^ alpha_k - eta_k ^ alpha_j + S eta_j ^ eta_k
// plus the 3-Sasakian criterion 2 omega_i = d eta_i - 2 eta_j ^ eta_k.
struct StructureEqReport {
  std::array<KForm, 3> residual;
  bool pass = false;
  bool three_sasakian = false;
};
StructureEqReport structure_eq_check(const QcStructure& q, const BiquardConnection& c,
                                     const TorsionDecomp& d);

// Exact verification of the derived torsion/curvature identities (trace
// conditions, invariant-piece properties, the Ricci-form comparison, the
// sp(1)-curvature identity and the connection-form cross-formulas).
CheckReport biquard_identities(const QcStructure& q, const BiquardConnection& c,
                               const CurvatureTensor& R, const TorsionDecomp& d);

// Basis of sp(n) (skew, commuting with all I_s) inside End(H).
std::vector<MatQ> spn_basis(const QcStructure& q);

}  // namespace qcv

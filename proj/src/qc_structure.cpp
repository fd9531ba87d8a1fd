#include "qcverify/qc_structure.hpp"

#include <stdexcept>

namespace qcv {

namespace {

Rational form2_eval(const KForm& w, int i, int j) {
  // w(e_i, e_j) for a 2-form with exact coefficients
  if (i == j) return 0;
  Scalar c = (i < j) ? w.coeff(mask_of({i, j})) : w.coeff(mask_of({j, i}));
  Rational r = c.rational();
  return (i < j) ? r : Rational(-r);
}

}  // namespace

MatQ QcStructure::omega_matrix(int s) const {
  int h = hdim();
  MatQ W(h, h);
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < h; ++b) W.at(a, b) = form2_eval(omega[s - 1], H[a], H[b]);
  return W;
}

MatQ QcStructure::complex_structure(int s) const {
  // g(I_s e_a, e_b) = omega_s(e_a, e_b)  =>  column a of I_s is W(a,.)
  MatQ W = omega_matrix(s);
  int h = hdim();
  MatQ M(h, h);
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < h; ++b) M.at(b, a) = W.at(a, b);
  return M;
}

MatQ QcStructure::ad_horizontal(int s) const {
  int h = hdim();
  MatQ M(h, h);
  for (int b = 0; b < h; ++b) {
    auto br = frame->bracket(V[s - 1], H[b]);
    for (int a = 0; a < h; ++a) M.at(a, b) = br[H[a] - 1];
  }
  return M;
}

CheckReport validate_qc(const QcStructure& q) {
  CheckReport rep;
  rep.subject = q.frame->name();
  const int h = q.hdim();
  if (h % 4 != 0 || int(q.H.size()) + 3 != q.frame->dim())
    throw std::invalid_argument("validate_qc: H/V split does not fit the frame");

  MatQ I1 = q.complex_structure(1), I2 = q.complex_structure(2), I3 = q.complex_structure(3);
  MatQ id = MatQ::identity(h);

  auto mat_ok = [&](const MatQ& m) { return m.is_zero(); };
  rep.add("I1*I2 == I3", mat_ok(I1 * I2 - I3));
  rep.add("I2*I1 == -I3", mat_ok(I2 * I1 + I3));
  rep.add("I_s^2 == -id", mat_ok(I1 * I1 + id) && mat_ok(I2 * I2 + id) && mat_ok(I3 * I3 + id));
  rep.add("I1*I2*I3 == -id", mat_ok(I1 * I2 * I3 + id));
  // hermitian compatibility g(I_s X, I_s Y) = g(X,Y): I_s orthogonal (and skew)
  bool herm = true;
  for (auto* I : {&I1, &I2, &I3}) {
    if (!(I->transposed() * (*I) - id).is_zero()) herm = false;
    if (!(I->transposed() + *I).is_zero()) herm = false;
  }
  rep.add("g(I_s.,I_s.) == g(.,.)", herm);

  // d eta_s restricted to H equals 2 omega_s
  for (int s = 1; s <= 3; ++s) {
    KForm de = q.frame->d(q.eta[s - 1]);
    KForm resid(q.frame->dim(), 2);
    for (int a = 0; a < h; ++a)
      for (int b = a + 1; b < h; ++b) {
        Rational r = form2_eval(de, q.H[a], q.H[b]) - 2 * form2_eval(q.omega[s - 1], q.H[a], q.H[b]);
        if (sgn(r) != 0) resid.add(mask_of({q.H[a], q.H[b]}), Scalar(r));
      }
    rep.add("d(eta_" + std::to_string(s) + ")|_H == 2 omega_" + std::to_string(s),
            resid.is_zero(), resid.is_zero() ? "" : resid.str());
  }

  // Reeb conditions: eta_s(xi_k) = delta_sk
  bool delta_ok = true;
  for (int s = 1; s <= 3; ++s)
    for (int k = 1; k <= 3; ++k) {
      Scalar c = q.eta[s - 1].coeff(IndexMask(1) << (q.V[k - 1] - 1));
      Rational want = (s == k) ? 1 : 0;
      if (!(c.exact() && c.rational() == want)) delta_ok = false;
    }
  // eta_s must also annihilate H
  for (int s = 1; s <= 3; ++s)
    for (int a : q.H)
      if (!q.eta[s - 1].coeff(IndexMask(1) << (a - 1)).is_zero()) delta_ok = false;
  rep.add("eta_s(xi_k) == delta_sk, eta_s|_H == 0", delta_ok);

  // (xi_s ⌟ d eta_s)|_H = 0 and (xi_s ⌟ d eta_k)|_H = -(xi_k ⌟ d eta_s)|_H
  auto horiz_part = [&](const KForm& f) {
    KForm r(f.dim(), f.degree());
    IndexMask vmask = 0;
    for (int s = 0; s < 3; ++s) vmask |= IndexMask(1) << (q.V[s] - 1);
    for (auto& [m, c] : f.terms())
      if (!(m & vmask)) r.add(m, c);
    return r;
  };
  for (int s = 1; s <= 3; ++s) {
    KForm r = horiz_part(interior(q.V[s - 1], q.frame->d(q.eta[s - 1])));
    rep.add("(xi_" + std::to_string(s) + " ⌟ d eta_" + std::to_string(s) + ")|_H == 0",
            r.is_zero(), r.is_zero() ? "" : r.str());
  }
  for (int s = 1; s <= 3; ++s)
    for (int k = s + 1; k <= 3; ++k) {
      KForm r = horiz_part(interior(q.V[s - 1], q.frame->d(q.eta[k - 1])) +
                           interior(q.V[k - 1], q.frame->d(q.eta[s - 1])));
      rep.add("(xi_" + std::to_string(s) + " ⌟ d eta_" + std::to_string(k) +
                  ")|_H antisymmetry",
              r.is_zero(), r.is_zero() ? "" : r.str());
    }
  return rep;
}

}  // namespace qcv

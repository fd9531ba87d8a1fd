#include "qcverify/qc_conformal.hpp"

namespace qcv {

namespace {

// raw Kulkarni-Nomizu expansion; no symmetry requirement (the invariant
// summands of the conformal-curvature formula mix symmetry types)
inline Rational kn4(const MatQ& A, const MatQ& B, int x, int y, int z, int v) {
  return A.at(x, z) * B.at(y, v) + A.at(y, v) * B.at(x, z) - A.at(y, z) * B.at(x, v) -
         A.at(x, v) * B.at(y, z);
}

struct Ctx {
  int h;
  MatQ g;                    // identity (orthonormal frame)
  std::array<MatQ, 3> I;     // complex structures
  std::array<MatQ, 3> W;     // omega_s as index-pair tables (cached)
  MatQ T0, U, L0;            // bilinear-form matrices
  std::array<MatQ, 3> IsL0;  // (I_s L0)(X,Y) = -L0(X, I_s Y)
  std::array<MatQ, 3> IsU;
  std::array<MatQ, 3> T0Is;  // T0(X, I_s Y)
  std::array<MatQ, 3> IsT0;  // T0(I_s X, Y)
  Rational S;
};

Ctx make_ctx(const TorsionDecomp& d, const QcStructure& q) {
  Ctx c{q.hdim(), MatQ::identity(q.hdim()), {}, {}, d.T0, d.U, MatQ(), {}, {}, {}, {}, d.S};
  for (int s = 0; s < 3; ++s) {
    c.I[s] = q.complex_structure(s + 1);
    c.W[s] = q.omega_matrix(s + 1);
  }
  c.L0 = d.T0 * rat(1, 2) + d.U;
  for (int s = 0; s < 3; ++s) {
    // I_s L0 enters a Kulkarni-Nomizu pairing against the 2-form omega_s, so
    // only its 2-form part is meaningful: the piece of L0 anticommuting with
    // I_s produces a symmetric tensor and is dropped.
    MatQ m = (c.L0 * c.I[s]) * rat(-1);  // -L0(X, I_s Y)
    c.IsL0[s] = (m - m.transposed()) * rat(1, 2);
    c.IsU[s] = (c.U * c.I[s]) * rat(-1);
    c.T0Is[s] = c.T0 * c.I[s];                 // T0(X, I_s Y)
    c.IsT0[s] = c.I[s].transposed() * c.T0;    // T0(I_s X, Y)
  }
  return c;
}

// curvature restricted to the horizontal block, positions 0-based
HTensor4 horiz_R(const CurvatureTensor& R, const QcStructure& q) {
  int h = q.hdim();
  HTensor4 r(h);
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < h; ++y)
      for (int z = 0; z < h; ++z)
        for (int v = 0; v < h; ++v) r.at(x, y, z, v) = R.at(q.H[x], q.H[y], q.H[z], q.H[v]);
  return r;
}

}  // namespace

HTensor4 wr_tensor(const CurvatureTensor& R, const TorsionDecomp& d, const QcStructure& q) {
  Ctx c = make_ctx(d, q);
  HTensor4 hr = horiz_R(R, q);
  int h = c.h;
  HTensor4 out(h);
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < h; ++y)
      for (int z = 0; z < h; ++z)
        for (int v = 0; v < h; ++v) {
          Rational val = hr.at(x, y, z, v);
          val += kn4(c.g, c.L0, x, y, z, v);
          for (int s = 0; s < 3; ++s) val += kn4(c.W[s], c.IsL0[s], x, y, z, v);
          for (int s = 0; s < 3; ++s) {
            // U(X, I_s Y) = -(I_s U)(X,Y)
            val -= (c.W[s].at(x, y) * (c.T0Is[s].at(z, v) - c.IsT0[s].at(z, v)) +
                    c.W[s].at(z, v) * (c.T0Is[s].at(x, y) - c.IsT0[s].at(x, y) +
                                       4 * c.IsU[s].at(x, y))) /
                   2;
          }
          Rational sblock = kn4(c.g, c.g, x, y, z, v);
          for (int s = 0; s < 3; ++s)
            sblock += kn4(c.W[s], c.W[s], x, y, z, v) + 4 * c.W[s].at(x, y) * c.W[s].at(z, v);
          val += c.S / 4 * sblock;
          out.at(x, y, z, v) = val;
        }
  return out;
}

HTensor4 wqc_tensor(const CurvatureTensor& R, const TorsionDecomp& d, const QcStructure& q) {
  Ctx c = make_ctx(d, q);
  HTensor4 hr = horiz_R(R, q);
  int h = c.h;
  HTensor4 out(h);
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < h; ++y)
      for (int z = 0; z < h; ++z)
        for (int v = 0; v < h; ++v) {
          Rational rsum = hr.at(x, y, z, v);
          for (int s = 0; s < 3; ++s) {
            // R(I_s X, I_s Y, Z, V): contract the first two slots
            Rational t = 0;
            for (int a = 0; a < h; ++a) {
              const Rational& ia = c.I[s].at(a, x);
              if (sgn(ia) == 0) continue;
              for (int b = 0; b < h; ++b) {
                const Rational& ib = c.I[s].at(b, y);
                if (sgn(ib) != 0) t += ia * ib * hr.at(a, b, z, v);
              }
            }
            rsum += t;
          }
          Rational val = rsum / 4;
          val += kn4(c.g, c.U, x, y, z, v);
          for (int s = 0; s < 3; ++s) val += kn4(c.W[s], c.IsU[s], x, y, z, v);
          // torsion block symmetrized over the two index pairs, mirroring the
          // computational tensor (the one-sided version misses the obstruction
          // carried by the first pair when the torsion is nonzero)
          for (int s = 0; s < 3; ++s)
            val -= (c.W[s].at(z, v) * (c.T0Is[s].at(x, y) - c.IsT0[s].at(x, y)) +
                    c.W[s].at(x, y) * (c.T0Is[s].at(z, v) - c.IsT0[s].at(z, v))) /
                   2;
          Rational sblock = kn4(c.g, c.g, x, y, z, v);
          for (int s = 0; s < 3; ++s) sblock += kn4(c.W[s], c.W[s], x, y, z, v);
          val += c.S / 4 * sblock;
          out.at(x, y, z, v) = val;
        }
  return out;
}

FlatnessVerdict flatness_verdict(const QcStructure& q) {
  BiquardConnection conn = solve_biquard(q);
  CurvatureTensor R = curvature(conn);
  TorsionDecomp d = torsion_decompose(q, conn, R);
  HTensor4 wr = wr_tensor(R, d, q);
  FlatnessVerdict v;
  v.S = d.S;
  v.torsion_zero = d.torsion_zero();
  v.flat = true;
  int h = q.hdim();
  // prefer a strictly increasing witness quadruple, then fall back to any
  for (int x = 0; x < h && v.flat; ++x)
    for (int y = x + 1; y < h && v.flat; ++y)
      for (int z = y + 1; z < h && v.flat; ++z)
        for (int w = z + 1; w < h; ++w)
          if (sgn(wr.at(x, y, z, w)) != 0) {
            v.flat = false;
            v.witness = {x + 1, y + 1, z + 1, w + 1};
            v.witness_value = wr.at(x, y, z, w);
            break;
          }
  for (int x = 0; x < h && v.flat; ++x)
    for (int y = 0; y < h && v.flat; ++y)
      for (int z = 0; z < h && v.flat; ++z)
        for (int w = 0; w < h; ++w)
          if (sgn(wr.at(x, y, z, w)) != 0) {
            v.flat = false;
            v.witness = {x + 1, y + 1, z + 1, w + 1};
            v.witness_value = wr.at(x, y, z, w);
            break;
          }
  return v;
}

}  // namespace qcv

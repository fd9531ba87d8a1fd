#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcverify/qc_conformal.hpp"
#include "qcverify/registry.hpp"

using namespace qcv;

namespace {

struct Pipe {
  QcStructure q;
  BiquardConnection conn;
  CurvatureTensor R;
  TorsionDecomp dec;
};

Pipe run(const std::string& name) {
  Pipe p;
  p.q = standard_qc(name);
  p.conn = solve_biquard(p.q);
  p.R = curvature(p.conn);
  p.dec = torsion_decompose(p.q, p.conn, p.R);
  return p;
}

// the torsion-free two-line reduction of the conformal curvature
HTensor4 wr_torsion_free(const Pipe& p) {
  int h = p.q.hdim();
  HTensor4 out(h);
  MatQ g = MatQ::identity(h);
  std::array<MatQ, 3> W = {p.q.omega_matrix(1), p.q.omega_matrix(2), p.q.omega_matrix(3)};
  auto kn = [](const MatQ& A, const MatQ& B, int x, int y, int z, int v) -> Rational {
    return A.at(x, z) * B.at(y, v) + A.at(y, v) * B.at(x, z) - A.at(y, z) * B.at(x, v) -
           A.at(x, v) * B.at(y, z);
  };
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < h; ++y)
      for (int z = 0; z < h; ++z)
        for (int v = 0; v < h; ++v) {
          Rational val = p.R.at(p.q.H[x], p.q.H[y], p.q.H[z], p.q.H[v]);
          Rational block = kn(g, g, x, y, z, v);
          for (int s = 0; s < 3; ++s)
            block += kn(W[s], W[s], x, y, z, v) + 4 * W[s].at(x, y) * W[s].at(z, v);
          val += p.dec.S / 4 * block;
          out.at(x, y, z, v) = val;
        }
  return out;
}

}  // namespace

TEST_CASE("conformal curvature verdicts on the four built-in structures") {
  {
    Pipe p = run("l1");
    CHECK(wr_tensor(p.R, p.dec, p.q).is_zero());
    CHECK(wqc_tensor(p.R, p.dec, p.q).is_zero());
    // WR(e_a,e_b,e_a,e_b) = 1 - 2/8 - 6/8 expansion collapses to zero
  }
  {
    Pipe p = run("l2");
    HTensor4 wr = wr_tensor(p.R, p.dec, p.q);
    CHECK(!wr.is_zero());
    CHECK(wr.at(0, 1, 2, 3) == rat(-1, 2));
    CHECK(!wqc_tensor(p.R, p.dec, p.q).is_zero());
  }
  {
    Pipe p = run("l3");
    HTensor4 wr = wr_tensor(p.R, p.dec, p.q);
    CHECK(!wr.is_zero());
    CHECK(wr.at(0, 1, 2, 3) == rat(-1, 2));
    CHECK(!wqc_tensor(p.R, p.dec, p.q).is_zero());
  }
  {
    Pipe p = run("heis7");
    CHECK(wr_tensor(p.R, p.dec, p.q).is_zero());
    CHECK(wqc_tensor(p.R, p.dec, p.q).is_zero());
  }
}

TEST_CASE("the two obstruction tensors vanish together") {
  for (auto name : {"l1", "l2", "l3", "heis7"}) {
    INFO(name);
    Pipe p = run(name);
    CHECK(wr_tensor(p.R, p.dec, p.q).is_zero() == wqc_tensor(p.R, p.dec, p.q).is_zero());
  }
}

TEST_CASE("torsion-free reduction agrees entrywise") {
  for (auto name : {"l1", "l2"}) {
    INFO(name);
    Pipe p = run(name);
    REQUIRE(p.dec.torsion_zero());
    HTensor4 full = wr_tensor(p.R, p.dec, p.q);
    HTensor4 reduced = wr_torsion_free(p);
    int h = p.q.hdim();
    for (int x = 0; x < h; ++x)
      for (int y = 0; y < h; ++y)
        for (int z = 0; z < h; ++z)
          for (int v = 0; v < h; ++v) CHECK(full.at(x, y, z, v) == reduced.at(x, y, z, v));
  }
}

TEST_CASE("flatness verdicts with witnesses") {
  CHECK(flatness_verdict(standard_qc("l1")).flat);
  CHECK(flatness_verdict(standard_qc("heis7")).flat);
  FlatnessVerdict v2 = flatness_verdict(standard_qc("l2"));
  CHECK(!v2.flat);
  CHECK(v2.witness == std::array<int, 4>{1, 2, 3, 4});
  FlatnessVerdict v3 = flatness_verdict(standard_qc("l3"));
  CHECK(!v3.flat);
  CHECK(v3.witness == std::array<int, 4>{1, 2, 3, 4});
  CHECK(v3.witness_value == rat(-1, 2));
}

TEST_CASE("antisymmetry of the obstruction tensor in both pairs") {
  Pipe p = run("l3");
  HTensor4 wr = wr_tensor(p.R, p.dec, p.q);
  int h = p.q.hdim();
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < h; ++y)
      for (int z = 0; z < h; ++z)
        for (int v = 0; v < h; ++v) {
          CHECK(wr.at(x, y, z, v) == -wr.at(y, x, z, v));
          CHECK(wr.at(x, y, z, v) == -wr.at(x, y, v, z));
        }
}

TEST_CASE("the dimension-11 flat model is conformally flat through the n=2 path") {
  Pipe p = run("heis11");
  CHECK(p.q.n() == 2);
  CHECK(wr_tensor(p.R, p.dec, p.q).is_zero());
  CHECK(wqc_tensor(p.R, p.dec, p.q).is_zero());
}

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

}  // namespace

TEST_CASE("validation passes on the registry qc structures") {
  for (auto name : {"l1", "l2", "l3", "heis7", "heis11"}) {
    INFO(name);
    CHECK(validate_qc(standard_qc(name)).pass());
  }
}

TEST_CASE("validation rejects broken data") {
  QcStructure q = standard_qc("l1");
  q.omega[1] = -q.omega[1];  // breaks I1 I2 = I3
  CHECK(!validate_qc(q).pass());
  CHECK_THROWS_AS(solve_biquard(q), std::runtime_error);
}

TEST_CASE("zero torsion qc-flat example") {
  Pipe p = run("l1");
  CHECK(p.dec.S == rat(-1, 2));
  CHECK(p.dec.torsion_zero());
  CHECK(p.dec.U.is_zero());
  // spot Christoffels from the table
  CHECK(p.conn.Gamma(2, 2, 1) == rat(1));
  CHECK(p.conn.Gamma(2, 1, 2) == rat(-1));
  CHECK(p.conn.Gamma(5, 3, 4) == rat(1, 2));
  CHECK(p.conn.Gamma(5, 6, 7) == rat(1, 2));
  CHECK(p.conn.Gamma(7, 5, 6) == rat(1, 2));
  CHECK(p.R.at(1, 2, 1, 2) == rat(1));
  CHECK(p.R.at(1, 3, 1, 3) == rat(1));
  CHECK(p.R.at(1, 2, 3, 4) == rat(0));
  CHECK(biquard_identities(p.q, p.conn, p.R, p.dec).pass());
  StructureEqReport se = structure_eq_check(p.q, p.conn, p.dec);
  CHECK(se.pass);
  CHECK(!se.three_sasakian);
}

TEST_CASE("zero torsion qc-non-flat example") {
  Pipe p = run("l2");
  CHECK(p.dec.S == rat(-1, 4));
  CHECK(p.dec.torsion_zero());
  CHECK(p.R.at(1, 2, 3, 4) == rat(-1, 2));
  // the axioms-derived vertical rows differ from l1's: the connection is
  // uniquely pinned by the constraint solve and satisfies the alpha formulas
  CHECK(p.conn.Gamma(5, 3, 4) == rat(0));
  CHECK(p.conn.Gamma(5, 6, 7) == rat(0));
  CHECK(p.conn.alpha[0][1] == rat(-1, 2));  // alpha_1 = -e^2/2
  CHECK(p.conn.alpha[1][2] == rat(-1));     // alpha_2 = -e^3
  CHECK(p.conn.alpha[2][3] == rat(-1));     // alpha_3 = -e^4
  CHECK(p.conn.alpha[0][4] == rat(0));      // vertical parts vanish at S = -1/4
  CHECK(biquard_identities(p.q, p.conn, p.R, p.dec).pass());
  CHECK(structure_eq_check(p.q, p.conn, p.dec).pass);
  // frozen axioms-derived table (regression oracle for the solver)
  struct E {
    int a, b, c;
    Rational want;
  };
  std::vector<E> table = {
      {2, 1, 2, rat(-1)},    {2, 2, 1, rat(1)},     {2, 3, 4, rat(1, 2)},
      {2, 4, 3, rat(-1, 2)}, {2, 6, 7, rat(-1, 2)}, {2, 7, 6, rat(1, 2)},
      {3, 1, 3, rat(-1, 2)}, {3, 2, 4, rat(1, 2)},  {3, 3, 1, rat(1, 2)},
      {3, 4, 2, rat(-1, 2)}, {3, 5, 7, rat(1)},     {3, 7, 5, rat(-1)},
      {4, 1, 4, rat(-1, 2)}, {4, 2, 3, rat(-1, 2)}, {4, 3, 2, rat(1, 2)},
      {4, 4, 1, rat(1, 2)},  {4, 5, 6, rat(-1)},    {4, 6, 5, rat(1)},
  };
  auto listed = [&](int a, int b, int c) -> Rational {
    for (auto& e : table)
      if (e.a == a && e.b == b && e.c == c) return e.want;
    return 0;
  };
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c) CHECK(p.conn.Gamma(a, b, c) == listed(a, b, c));
}

TEST_CASE("qc-Ricci 2-forms are proportional to the fundamental forms on the "
          "zero-torsion examples") {
  {
    Pipe p = run("l1");  // rho_i = (1/4 - S/2) omega_i = omega_i / 2
    for (int s = 0; s < 3; ++s)
      CHECK((p.dec.rho[s] - p.q.omega_matrix(s + 1) * rat(1, 2)).is_zero());
  }
  {
    Pipe p = run("l2");  // rho_i = (1/8 - S/2) omega_i = omega_i / 4
    for (int s = 0; s < 3; ++s)
      CHECK((p.dec.rho[s] - p.q.omega_matrix(s + 1) * rat(1, 4)).is_zero());
  }
}

TEST_CASE("non-zero torsion example") {
  Pipe p = run("l3");
  CHECK(p.dec.S == rat(-1));
  CHECK(!p.dec.torsion_zero());
  CHECK(p.dec.U.is_zero());  // dimension seven
  // full Christoffel table of the proof
  struct E {
    int a, b, c;
    Rational want;
  };
  std::vector<E> table = {
      {1, 3, 1, rat(3, 2)},  {1, 1, 3, rat(-3, 2)}, {2, 2, 3, rat(-3, 2)}, {2, 3, 2, rat(3, 2)},
      {1, 2, 4, rat(-1, 2)}, {1, 4, 2, rat(1, 2)},  {2, 1, 4, rat(1, 2)},  {2, 4, 1, rat(-1, 2)},
      {5, 1, 2, rat(3, 4)},  {5, 2, 1, rat(-3, 4)}, {5, 6, 7, rat(3, 4)},  {5, 7, 6, rat(-3, 4)},
      {6, 1, 3, rat(-1, 8)}, {6, 3, 1, rat(1, 8)},  {7, 2, 3, rat(-1, 8)}, {7, 3, 2, rat(1, 8)},
      {6, 5, 7, rat(-1, 4)}, {6, 7, 5, rat(1, 4)},  {7, 5, 6, rat(1, 4)},  {7, 6, 5, rat(-1, 4)},
      {6, 2, 4, rat(-3, 8)}, {6, 4, 2, rat(3, 8)},  {7, 1, 4, rat(3, 8)},  {7, 4, 1, rat(-3, 8)},
      {1, 5, 7, rat(1)},     {1, 7, 5, rat(-1)},    {2, 5, 6, rat(-1)},    {2, 6, 5, rat(1)},
      {4, 1, 2, rat(-1)},    {4, 2, 1, rat(1)},     {4, 3, 4, rat(1)},     {4, 4, 3, rat(-1)},
  };
  auto listed = [&](int a, int b, int c) -> Rational {
    for (auto& e : table)
      if (e.a == a && e.b == b && e.c == c) return e.want;
    return 0;
  };
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c) {
        INFO(a << " " << b << " " << c);
        CHECK(p.conn.Gamma(a, b, c) == listed(a, b, c));
      }
  CHECK(p.R.at(1, 2, 3, 4) == rat(-1, 2));
  // torsion endomorphism relation g(T(xi_s, X), Y) from the symmetric part
  CHECK((p.dec.t_xi[0]).is_zero());
  CHECK(!(p.dec.t_xi[1]).is_zero());
  // rho_1 = (e^{12} - e^{34})/4 + (1 - S)/2 omega_1, rho_2,3 = (1 - S)/2 omega_2,3
  MatQ skew14(4, 4);
  skew14.at(0, 1) = rat(1, 4);
  skew14.at(1, 0) = rat(-1, 4);
  skew14.at(2, 3) = rat(-1, 4);
  skew14.at(3, 2) = rat(1, 4);
  CHECK((p.dec.rho[0] - skew14 - p.q.omega_matrix(1)).is_zero());
  CHECK((p.dec.rho[1] - p.q.omega_matrix(2)).is_zero());
  CHECK((p.dec.rho[2] - p.q.omega_matrix(3)).is_zero());
  CHECK(biquard_identities(p.q, p.conn, p.R, p.dec).pass());
  CHECK(structure_eq_check(p.q, p.conn, p.dec).pass);
}

TEST_CASE("flat model has vanishing connection, curvature and torsion") {
  Pipe p = run("heis7");
  for (auto& g : p.conn.gamma) CHECK(sgn(g) == 0);
  for (auto& r : p.R.r) CHECK(sgn(r) == 0);
  CHECK(sgn(p.dec.S) == 0);
  CHECK(p.dec.torsion_zero());
  CHECK(biquard_identities(p.q, p.conn, p.R, p.dec).pass());
}

TEST_CASE("dimension-11 quaternionic Heisenberg solves and is flat") {
  Pipe p = run("heis11");
  for (auto& r : p.R.r) CHECK(sgn(r) == 0);
  CHECK(sgn(p.dec.S) == 0);
  CHECK(p.dec.torsion_zero());
  CHECK(p.dec.U.is_zero());
  CHECK(biquard_identities(p.q, p.conn, p.R, p.dec).pass());
}

TEST_CASE("sp(n) basis has the right dimension") {
  CHECK(spn_basis(standard_qc("l1")).size() == 3);    // sp(1), n = 1
  CHECK(spn_basis(standard_qc("heis11")).size() == 10);  // sp(2), n = 2
}

TEST_CASE("standard qc data is tied to the adapted presentations") {
  // the isomorphic presentations use a different coframe, on which the
  // standard (eta_s, omega_s) assignment violates d eta|_H = 2 omega
  for (auto name : {"l1_tilde", "l3_tilde"}) {
    INFO(name);
    CHECK(!validate_qc(standard_qc(name)).pass());
  }
}

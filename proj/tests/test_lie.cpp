#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcverify/registry.hpp"

using namespace qcv;

TEST_CASE("structure-constant exterior derivative reproduces the tables") {
  const LieFrame& l1 = registry_get("l1").frame;
  // d e^5 = 2 e^{12} + 2 e^{34} - e^{67}/2
  KForm want = KForm::basis(7, {1, 2}, Scalar(2)) + KForm::basis(7, {3, 4}, Scalar(2)) +
               KForm::basis(7, {6, 7}, Scalar(rat(-1, 2)));
  CHECK(KForm::eq(l1.d_basis(5), want));
  CHECK(KForm::eq(l1.d(KForm::basis(7, {5})), want));
  const LieFrame& h7 = registry_get("heis7").frame;
  CHECK(h7.d(KForm::basis(7, {1})).is_zero());
}

TEST_CASE("leibniz rule for d") {
  const LieFrame& L = registry_get("l3").frame;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    KForm a(7, 1), b(7, 1);
    for (int i = 1; i <= 7; ++i) {
      a.add(mask_of({i}), Scalar(rat(int(rng() % 9) - 4, 1 + int(rng() % 3))));
      b.add(mask_of({i}), Scalar(rat(int(rng() % 9) - 4, 1 + int(rng() % 3))));
    }
    KForm lhs = L.d(wedge(a, b));
    KForm rhs = wedge(L.d(a), b) - wedge(a, L.d(b));
    CHECK(KForm::eq(lhs, rhs));
  }
}

TEST_CASE("jacobi holds on every registry algebra") {
  for (auto& name : registry_names()) {
    JacobiReport rep = jacobi_check(registry_get(name).frame);
    INFO(name);
    CHECK(rep.pass);
  }
  CHECK(jacobi_check(quaternionic_heisenberg(3)).pass);
}

TEST_CASE("jacobi failure is reported with the residual") {
  // d(d e^1) = e^{34} ^ e^2 != 0
  LieFrame bad = parse_algebra_text("de1 = e12 + e34\ndim 4", "bad");
  JacobiReport rep = jacobi_check(bad);
  CHECK(!rep.pass);
  REQUIRE(!rep.failures.empty());
  CHECK(!rep.failures[0].residual.is_zero());
  CHECK(rep.failures[0].k == 1);
}

TEST_CASE("algebra file round-trip") {
  std::string heis =
      "# quaternionic Heisenberg, n = 1\n"
      "de5 = 2 e12 + 2 e34\n"
      "de6 = 2 e13 + 2 e42\n"
      "de7 = 2 e14 + 2 e23\n"
      "dim 7\n";
  LieFrame L = parse_algebra_text(heis, "user");
  CHECK(L.dim() == 7);
  const LieFrame& h7 = registry_get("heis7").frame;
  for (int k = 1; k <= 7; ++k) CHECK(KForm::eq(L.d_basis(k), h7.d_basis(k)));
  CHECK(jacobi_check(L).pass);
  // fractions and reversed index order
  LieFrame M = parse_algebra_text("de1 = -1/2 e32\ndim 3", "frac");
  CHECK(M.d_basis(1).coeff({2, 3}).rational() == rat(1, 2));
  CHECK_THROWS(parse_algebra_text("de1 = 2 q12", "junk"));
}

TEST_CASE("chart consistency at 50 random nonsingular points per pair") {
  std::mt19937_64 rng(42);
  for (auto& name : registry_names()) {
    const RegistryEntry& e = registry_get(name);
    if (!e.chart) continue;
    INFO(name);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int accepted = 0;
    while (accepted < 50) {
      Eigen::VectorXd v(e.chart->dim);
      for (int i = 0; i < e.chart->dim; ++i)
        v[i] = e.chart->sample_lo[i] +
               (e.chart->sample_hi[i] - e.chart->sample_lo[i]) * uni(rng);
      ChartConsistency cc = chart_consistency(e.frame, *e.chart, v);
      if (cc.singular) continue;
      CHECK(cc.pass);
      if (!cc.pass) {
        CAPTURE(cc.max_residual);
        break;
      }
      ++accepted;
    }
  }
}

TEST_CASE("euler chart degenerates on the axis") {
  const RegistryEntry& su2 = registry_get("su2");
  Eigen::VectorXd v(3);
  v << 0.0, 0.3, 0.9;  // theta = 0
  ChartConsistency cc = chart_consistency(su2.frame, *su2.chart, v);
  CHECK(cc.singular);
  v << 1.5707963, 0.3, 0.9;
  cc = chart_consistency(su2.frame, *su2.chart, v);
  CHECK(!cc.singular);
  CHECK(cc.pass);
}

TEST_CASE("derived series dimensions agree across the isomorphic presentations") {
  auto a = registry_get("l1").frame.derived_series_dims(2);
  auto b = registry_get("l1_tilde").frame.derived_series_dims(2);
  CHECK(a == b);
  auto c = registry_get("l3").frame.derived_series_dims(2);
  auto d = registry_get("l3_tilde").frame.derived_series_dims(2);
  CHECK(c == d);
}

TEST_CASE("g7 is solvable but not nilpotent") {
  // [g,g] has dimension 6 and [[g,g],[g,g]] = 0
  auto dims = registry_get("g7").frame.derived_series_dims(2);
  CHECK(dims[0] == 6);
  CHECK(dims[1] == 0);
}

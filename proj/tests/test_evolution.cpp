#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qcverify/evolution.hpp"

using namespace qcv;

namespace {

double logspace_sample(const ClosedFormFamily& fam, int i, int n) {
  if (fam.x_lo > 0) {
    double lo = std::log(fam.x_lo), hi = std::log(fam.x_hi);
    return std::exp(lo + (hi - lo) * (i + 0.5) / n);
  }
  return fam.x_lo + (fam.x_hi - fam.x_lo) * (i + 0.5) / n;
}

}  // namespace

TEST_CASE("every closed-form family satisfies its system at 100 samples") {
  for (auto& fam : builtin_families()) {
    INFO(fam.name);
    double worst = 0;
    int used = 0;
    for (int i = 0; i < 100; ++i) {
      double x = logspace_sample(fam, i, 100);
      if (fam.in_domain && !fam.in_domain(x)) continue;
      worst = std::max(worst, fam.residual(x));
      ++used;
    }
    CHECK(used >= 60);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("eguchi-hanson data substitutes exactly") {
  auto fam = make_family("hk4_su2_eguchi_hanson", {{"a", 1.0}});
  CHECK(fam.residual(2.0) <= 1e-12);
  // f1 = f2 = t/2, f3 = (t/2) sqrt(1 - a/t^4)
  FamilyPoint p = fam.eval(2.0);
  CHECK(p.y[0] == doctest::Approx(1.0));
  CHECK(p.y[2] == doctest::Approx(1.0 * std::sqrt(15.0 / 16.0)));
  CHECK(p.f == doctest::Approx(std::sqrt(16.0 / 15.0)));
}

TEST_CASE("the general SU(2) family specializes to the eguchi-hanson data") {
  double a = 1.0;
  auto general = make_family("hk4_su2_general",
                             {{"a1", a / 16}, {"a2", a / 16}, {"a3", 0.0}});
  auto eh = make_family("hk4_su2_eguchi_hanson", {{"a", a}});
  for (double t : {1.5, 2.0, 3.0}) {
    double x = std::pow(t / 2, 4);
    FamilyPoint pg = general.eval(x);
    FamilyPoint pe = eh.eval(t);
    // same scaling functions; the time gauges differ by dx/dt = t^3/4
    for (int i = 0; i < 3; ++i) CHECK(pg.y[i] == doctest::Approx(pe.y[i]).epsilon(1e-12));
    CHECK(pg.f * (t * t * t / 4) == doctest::Approx(pe.f).epsilon(1e-12));
  }
}

TEST_CASE("the Heisenberg family at c=0, a=b=1 is the Gibbons-Hawking point") {
  auto fam = make_family("hk4_heis_general", {{"a", 1.0}, {"b", 1.0}, {"c", 0.0}});
  double lambda = std::pow(1.5, 1.0 / 3.0);
  for (double r : {0.5, 1.0, 2.0}) {
    FamilyPoint p = fam.eval(r);
    CHECK(p.y[0] == doctest::Approx(lambda * std::pow(r, 1.0 / 3.0)).epsilon(1e-12));
    CHECK(p.y[1] == doctest::Approx(p.y[0]).epsilon(1e-12));
    CHECK(p.y[2] == doctest::Approx(1.0 / p.y[0]).epsilon(1e-12));
  }
}

TEST_CASE("equal parameters collapse the general quaternionic family to the exponential one") {
  double C = 2.0;
  auto fam = make_family("qk_gen7_tau0", {{"a1", 1.0}, {"a2", 1.0}, {"a3", 1.0}, {"C", C}});
  double ratio = std::sqrt(6.0 / (C * C * C));  // the half-rate of the exponential form
  for (double u : {0.5, 1.0, 2.0}) {
    FamilyPoint p = fam.eval(u);
    CHECK(p.y[1] == doctest::Approx(p.y[2]).epsilon(1e-12));
    CHECK(p.y[2] == doctest::Approx(p.y[3]).epsilon(1e-12));
    CHECK(p.y[1] == doctest::Approx(ratio * p.y[0]).epsilon(1e-12));
    CHECK(p.y[0] == doctest::Approx(C * std::pow(u + 1.0, 1.0 / 3.0)).epsilon(1e-12));
  }
}

TEST_CASE("constant zero state is a trivial solution") {
  OdeSystem sys{OdeId::HK4_SU2, 0.0};
  double y[3] = {1.0, 2.0, 3.0};
  double dy[3] = {0.0, 0.0, 0.0};
  CHECK(sys.residual(y, dy, 0.0) == 0.0);
}

TEST_CASE("isotropic quaternionic family from the first integral") {
  auto fam = make_family("qk_iso", {{"tau", 1.0}, {"a", 1.0}});
  for (double u : {0.5, 1.0, 2.0, 5.0}) CHECK(fam.residual(u) <= 1e-12);
  CHECK_THROWS_AS(make_family("qk_iso", {{"tau", -0.25}, {"a", 1.0}}).eval(0.1),
                  std::domain_error);
}

TEST_CASE("heisenberg family matches the integrator over a span") {
  auto fam = make_family("hk4_heis_general", {});
  CHECK(oracle_compare(fam, 0.5, 3.5, 10) <= 1e-6);
}

TEST_CASE("eguchi-hanson matches the integrator") {
  auto fam = make_family("hk4_su2_eguchi_hanson", {{"a", 1.0}});
  CHECK(oracle_compare(fam, 1.3, 3.5, 10) <= 1e-6);
}

TEST_CASE("reduced spin(7) flow matches the integrator") {
  auto fam = make_family("spin7_red", {{"tau", 1.0}, {"a", 1.0}});
  CHECK(oracle_compare(fam, 1.3, 3.5, 10) <= 1e-6);
}

TEST_CASE("integrator reports blow-up instead of silently diverging") {
  OdeSystem sys{OdeId::QK_ISO, 1.0};
  // f' = 2h, h' = (2h^2 - tau f)/f blows up as f -> 0 going backwards
  IntegrateResult res =
      integrate_ode(sys, {0.05, std::sqrt(1.0 * 0.05 + 0.05 * 0.05)}, 0.0, {-10.0}, nullptr,
                    nullptr, 1e-10);
  CHECK(!res.ok);
  CHECK(!res.error.empty());
}

TEST_CASE("observed integrator order is at least 3.8") {
  for (auto name : {"hk4_su2_eguchi_hanson", "qk_iso", "spin7_gen_tau0"}) {
    auto fam = make_family(name, {});
    double x0 = fam.x_lo + 0.25 * (fam.x_hi - fam.x_lo);
    double x1 = fam.x_lo + 0.75 * (fam.x_hi - fam.x_lo);
    INFO(name);
    CHECK(rk4_order_estimate(fam, x0, x1, 24) >= 3.8);
  }
}

TEST_CASE("product form agrees with the rational form on SU(2) solutions") {
  for (auto name : {"hk4_su2_general", "hk4_su2_eguchi_hanson", "hk4_su2_triaxial"}) {
    auto fam = make_family(name, {});
    INFO(name);
    for (int i = 0; i < 25; ++i) {
      double x = logspace_sample(fam, i, 25);
      if (!fam.in_domain(x)) continue;
      FamilyPoint p = fam.eval(x);
      CHECK(bgpp_residual(p.y.data(), p.dy.data(), p.f) <= 1e-10);
    }
  }
}

TEST_CASE("neutral systems equal the riemannian ones after the index swap") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.3, 2.5);
  auto rhs3 = [](OdeId id, const double* y, double f, double* dy) {
    OdeSystem sys{id, 0.0};
    sys.rhs(y, f, dy);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    double y[3] = {uni(rng), uni(rng), uni(rng)};
    double f = uni(rng);
    double a[3], b[3], swapped[3];
    // para SU(2) equals the Bianchi VIII system with f2 <-> f3
    rhs3(OdeId::HPK4_SU2, y, f, a);
    double ys[3] = {y[0], y[2], y[1]};
    rhs3(OdeId::HK4_SU11, ys, f, b);
    swapped[0] = b[0];
    swapped[1] = b[2];
    swapped[2] = b[1];
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(swapped[i]).epsilon(1e-12));
    // para SU(1,1) equals the SU(2) system as printed
    rhs3(OdeId::HPK4_SU11, y, f, a);
    rhs3(OdeId::HK4_SU2, y, f, b);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    // para Heisenberg equals the Heisenberg system with f3 -> -f3
    rhs3(OdeId::HPK4_HEIS, y, f, a);
    double yn[3] = {y[0], y[1], -y[2]};
    rhs3(OdeId::HK4_HEIS, yn, f, b);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-12));
    CHECK(a[2] == doctest::Approx(-b[2]).epsilon(1e-12));
    // para E2 equals the Lorentzian-motions system and vice versa
    rhs3(OdeId::HPK4_E2, y, f, a);
    rhs3(OdeId::HK4_E11, y, f, b);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    rhs3(OdeId::HPK4_E11, y, f, a);
    rhs3(OdeId::HK4_E2, y, f, b);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("differential ideal residuals") {
  auto iso = make_family("qk_iso", {{"tau", 1.0}, {"a", 2.0}});
  for (double u : {0.4, 1.0, 3.0}) {
    CHECK(ideal_residual(iso, u) <= 1e-12);
    CHECK(iso_ideal_residual(iso, u) <= 1e-12);
  }
  auto equal = make_family("qk_gen7_tau0", {{"a1", 1.0}, {"a2", 1.0}, {"a3", 1.0}});
  auto distinct = make_family("qk_gen7_tau0", {{"a1", 0.0}, {"a2", 1.0}, {"a3", 2.0}});
  double req = 0, rd = 1e9;
  for (int i = 0; i < 20; ++i) {
    double xe = equal.x_lo + (equal.x_hi - equal.x_lo) * (i + 0.5) / 20;
    double xd = distinct.x_lo + (distinct.x_hi - distinct.x_lo) * (i + 0.5) / 20;
    req = std::max(req, ideal_residual(equal, xe));
    rd = std::min(rd, ideal_residual(distinct, xd));
  }
  CHECK(req <= 1e-10);
  CHECK(rd >= 1e-3);
}

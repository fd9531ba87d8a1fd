#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcverify/special_metrics.hpp"

using namespace qcv;

namespace {

CoordMetric euclidean_metric(int n) {
  CoordMetric m;
  m.name = "euclidean";
  m.dim = n;
  m.sig = Signature::euclidean(n);
  m.eval = [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(n, n); };
  m.sample_lo = Eigen::VectorXd::Constant(n, -1.0);
  m.sample_hi = Eigen::VectorXd::Constant(n, 1.0);
  return m;
}

}  // namespace

TEST_CASE("christoffel symbols vanish for the euclidean metric") {
  CoordMetric m = euclidean_metric(4);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(4, 0.3);
  auto gamma = christoffel_fd(m, v);
  for (auto& g : gamma) CHECK(g.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("christoffel symbols of the flat product metric by hand") {
  // g = u^2 (dx1)^2 + du^2 + ... : Gamma^u_{x1 x1} = -u, Gamma^x1_{u x1} = 1/u
  auto m = to_coord_metric(build_metric("hk8_g7_flat", {}));
  Eigen::VectorXd v = Eigen::VectorXd::Constant(8, 0.4);
  v[7] = 1.3;  // u
  auto gamma = christoffel_fd(m, v);
  CHECK(gamma[7](0, 0) == doctest::Approx(-1.3).epsilon(1e-8));
  CHECK(gamma[0](7, 0) == doctest::Approx(1.0 / 1.3).epsilon(1e-8));
  // nabla g residual: d_k g_ij == Gamma^l_{ki} g_lj + Gamma^l_{kj} g_il
  Eigen::MatrixXd g0 = m.eval(v);
  double h = 1e-6;
  double worst = 0;
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd vp = v, vm = v;
    vp[k] += h;
    vm[k] -= h;
    Eigen::MatrixXd dg = (m.eval(vp) - m.eval(vm)) / (2 * h);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        double s = 0;
        for (int l = 0; l < 8; ++l) s += gamma[l](k, i) * g0(l, j) + gamma[l](k, j) * g0(i, l);
        worst = std::max(worst, std::fabs(dg(i, j) - s));
      }
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("christoffel richardson self-consistency on the quaternionic table") {
  CoordMetric m = appendix1_table(1.0);
  std::mt19937_64 rng(3);
  Eigen::VectorXd v = m.random_point(rng);
  FdOptions o1;
  o1.h = 1e-3;
  FdOptions o2;
  o2.h = 5e-4;
  auto g1 = christoffel_fd(m, v, o1);
  auto g2 = christoffel_fd(m, v, o2);
  double diff = 0;
  for (size_t k = 0; k < g1.size(); ++k)
    diff = std::max(diff, (g1[k] - g2[k]).cwiseAbs().maxCoeff());
  CHECK(diff <= 1e-6);
}

TEST_CASE("riemann tensor symmetries and first bianchi at accepted samples") {
  for (auto name : {"qk_heisenberg", "spin7_g1"}) {
    auto m = to_coord_metric(build_metric(name, {}));
    std::mt19937_64 rng(9);
    INFO(name);
    auto s = riemann_ricci_fd(m, m.random_point(rng));
    CHECK(s.sym_residual <= 1e-6);
    CHECK(s.bianchi_residual <= 1e-6);
  }
}

TEST_CASE("einstein fits") {
  EinsteinFit f1 = einstein_fit(appendix1_table(1.0), 8, 21);
  CHECK(f1.lambda == doctest::Approx(-4.0).epsilon(1e-5));
  CHECK(f1.residual <= 1e-5);
  EinsteinFit f2 = einstein_fit(appendix1_table(2.0), 8, 21);
  CHECK(f2.lambda == doctest::Approx(-8.0).epsilon(1e-5));
  // flat metric: lambda ~ 0 with tiny residual
  EinsteinFit f3 = einstein_fit(to_coord_metric(build_metric("hk8_g7_flat", {})), 6, 21);
  CHECK(std::fabs(f3.lambda) <= 1e-7);
  CHECK(f3.residual <= 1e-7);
  CHECK_THROWS_AS(einstein_fit(appendix1_table(1.0), 3, 1), std::invalid_argument);
}

TEST_CASE("richardson convergence: halving h gains at least 8x in the truncation regime") {
  auto m = to_coord_metric(build_metric("qk_heisenberg", {{"a", 1.0}}));
  std::mt19937_64 rng(31);
  Eigen::VectorXd v = m.random_point(rng);
  Eigen::MatrixXd g = m.eval(v);
  FdOptions big;
  big.h = 8e-2;
  big.richardson = false;
  FdOptions half = big;
  half.h = 4e-2;
  auto rbig = riemann_ricci_fd(m, v, big);
  auto rhalf = riemann_ricci_fd(m, v, half);
  double ebig = (rbig.ricci + 16.0 * g).cwiseAbs().maxCoeff();
  double ehalf = (rhalf.ricci + 16.0 * g).cwiseAbs().maxCoeff();
  CHECK(ebig / ehalf >= 8.0);
}

TEST_CASE("neutral signature pipeline") {
  auto m = to_coord_metric(build_metric("hpk4_heis", {}));
  CHECK(m.sig.diag == std::vector<int>{1, 1, -1, -1});
  std::mt19937_64 rng(12);
  auto s = riemann_ricci_fd(m, m.random_point(rng));
  int plus = 0, minus = 0;
  for (int sg : s.frame_sign) (sg > 0 ? plus : minus)++;
  CHECK(plus == 2);
  CHECK(minus == 2);
  CHECK(s.ricci_frame.cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(s.sym_residual <= 1e-6);
}

TEST_CASE("degenerate sample points are rejected") {
  CoordMetric m = euclidean_metric(3);
  m.eval = [](const Eigen::VectorXd& v) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
    g(2, 2) = 0.0;
    return g;
  };
  CHECK_THROWS_AS(riemann_ricci_fd(m, Eigen::VectorXd::Zero(3)), std::runtime_error);
}

TEST_CASE("holonomy estimate distinguishes the two special-holonomy families") {
  FdOptions opt;
  opt.h = 5e-3;
  {
    auto cm = to_coord_metric(build_metric("spin7_g1", {{"a", 1.0}}), "Psi");
    HolonomyReport hr = holonomy_estimate(cm, 3, 23, opt);
    CHECK(hr.span_rank >= 16);
    CHECK(hr.closure_dim == 21);
    CHECK(hr.closure_consistent);
    CHECK(hr.rank_stable);
    CHECK(hr.annihilator_residual >= 0);
    CHECK(hr.annihilator_residual <= 1e-8);
  }
  {
    auto cm = to_coord_metric(build_metric("qk_new_g1", {{"a", 1.0}}), "Phi");
    HolonomyReport hr = holonomy_estimate(cm, 3, 23, opt);
    CHECK(hr.closure_dim <= 13);
    CHECK(hr.closure_consistent);
    CHECK(hr.annihilator_residual <= 1e-8);
  }
  {
    // flat metric: no curvature, empty span
    auto cm = to_coord_metric(build_metric("hk8_g7_flat", {}));
    HolonomyReport hr = holonomy_estimate(cm, 2, 23, opt);
    CHECK(hr.span_rank == 0);
    CHECK(hr.closure_dim == 0);
  }
}

TEST_CASE("curvature operators of the quaternionic family annihilate its 4-form") {
  FdOptions opt;
  opt.h = 1e-2;
  for (auto params : {std::map<std::string, double>{{"a", 1.0}},
                      std::map<std::string, double>{{"a", 2.0}}}) {
    auto cm = to_coord_metric(build_metric("qk_new_g1", params), "Phi");
    HolonomyReport hr = holonomy_estimate(cm, 2, 77, opt);
    CHECK(hr.annihilator_residual <= 1e-8);
  }
}

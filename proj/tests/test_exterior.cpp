#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcverify/kform.hpp"

using namespace qcv;

namespace {

KForm random_form(std::mt19937_64& rng, int dim, int degree, bool exact) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_real_distribution<double> flt(-3.0, 3.0);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  KForm f(dim, degree);
  for (int t = 0; t < 4; ++t) {
    IndexMask m = 0;
    while (mask_degree(m) < degree) m |= IndexMask(1) << pick(rng);
    if (exact)
      f.add(m, Scalar(rat(num(rng), den(rng))));
    else
      f.add(m, Scalar::flt(flt(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("wedge basics") {
  KForm e1 = KForm::basis(4, {1});
  KForm e2 = KForm::basis(4, {2});
  CHECK(KForm::eq(wedge(e1, e2), KForm::basis(4, {1, 2})));
  CHECK(wedge(e1, e1).is_zero());
  // (e12 + e34) ^ (e12 + e34) = 2 e1234
  KForm w = KForm::basis(4, {1, 2}) + KForm::basis(4, {3, 4});
  KForm sq = wedge(w, w);
  CHECK(KForm::eq(sq, KForm::basis(4, {1, 2, 3, 4}, Scalar(2))));
  CHECK_THROWS_AS(wedge(KForm::basis(4, {1}), KForm::basis(5, {1})), std::invalid_argument);
}

TEST_CASE("wedge is graded anticommutative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 4 + int(rng() % 5);
    int p = 1 + int(rng() % 3), q = 1 + int(rng() % 3);
    if (p + q > dim) continue;
    KForm a = random_form(rng, dim, p, true);
    KForm b = random_form(rng, dim, q, true);
    KForm lhs = wedge(a, b);
    KForm rhs = wedge(b, a);
    if ((p * q) % 2 == 1) rhs = -rhs;
    CHECK(KForm::eq(lhs, rhs));
  }
}

TEST_CASE("interior multiplication") {
  // xi_1 ⌟ (eta_1 ^ eta_2) = eta_2 on a 7-frame with eta_s = e^{4+s}
  KForm e56 = KForm::basis(7, {5, 6});
  CHECK(KForm::eq(interior(5, e56), KForm::basis(7, {6})));
  // vertical contraction of a horizontal form vanishes
  KForm omega1 = KForm::basis(7, {1, 2}) + KForm::basis(7, {3, 4});
  CHECK(interior(7, omega1).is_zero());
  // e_2 ⌟ e^{12} = -e^1
  CHECK(KForm::eq(interior(2, KForm::basis(7, {1, 2})), -KForm::basis(7, {1})));
  CHECK_THROWS_AS(interior(1, KForm::constant(4, Scalar(1))), std::domain_error);
}

TEST_CASE("interior is an antiderivation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 5 + int(rng() % 3);
    int p = 1 + int(rng() % 2), q = 1 + int(rng() % 2);
    KForm a = random_form(rng, dim, p, true);
    KForm b = random_form(rng, dim, q, true);
    int v = 1 + int(rng() % dim);
    KForm lhs = interior(v, wedge(a, b));
    KForm rhs = wedge(interior(v, a), b);
    KForm second = wedge(a, interior(v, b));
    rhs = (p % 2 == 1) ? rhs - second : rhs + second;
    CHECK(KForm::eq(lhs, rhs));
  }
}

TEST_CASE("hodge star examples") {
  Signature e7 = Signature::euclidean(7);
  KForm one = KForm::constant(7, Scalar(1));
  CHECK(KForm::eq(hodge_star(one, e7), KForm::basis(7, {1, 2, 3, 4, 5, 6, 7})));
  // reversed orientation flips the sign
  Signature e7r = e7;
  e7r.orientation = -1;
  CHECK(KForm::eq(hodge_star(one, e7r), -KForm::basis(7, {1, 2, 3, 4, 5, 6, 7})));
}

TEST_CASE("hodge star double application over 10^4 random forms") {
  std::mt19937_64 rng(13);
  int checked = 0;
  struct Case {
    int dim;
    Signature sig;
  };
  std::vector<Case> cases = {{4, Signature::euclidean(4)},
                             {7, Signature::euclidean(7)},
                             {8, Signature::euclidean(8)},
                             {4, Signature::neutral22()}};
  while (checked < 10000) {
    for (auto& c : cases) {
      int k = int(rng() % (c.dim + 1));
      KForm a = k == 0 ? KForm::constant(c.dim, Scalar(rat(int(rng() % 7) - 3)))
                       : random_form(rng, c.dim, k, true);
      KForm twice = hodge_star(hodge_star(a, c.sig), c.sig);
      int sign = ((k * (c.dim - k)) % 2 == 1 ? -1 : 1) * c.sig.det_sign();
      KForm want = (sign < 0) ? -a : a;
      CHECK(KForm::eq(twice, want));
      ++checked;
    }
  }
}

TEST_CASE("kulkarni-nomizu product") {
  // orthonormal g on a 4-frame
  Tensor2 g(4);
  for (int i = 0; i < 4; ++i) g.at(i, i) = Scalar(1);
  Tensor4 gg = kn_product(g, g);
  CHECK(Scalar::eq(gg.at(0, 1, 0, 1), Scalar(2), 0.0));
  Tensor2 zero(4);
  CHECK(kn_product(g, zero).max_abs() == 0.0);
  // omega_1 = e^{12} + e^{34}
  Tensor2 w1(4);
  w1.at(0, 1) = Scalar(1);
  w1.at(1, 0) = Scalar(rat(-1));
  w1.at(2, 3) = Scalar(1);
  w1.at(3, 2) = Scalar(rat(-1));
  Tensor4 ww = kn_product(w1, w1);
  CHECK(Scalar::eq(ww.at(0, 1, 0, 1), Scalar(2), 0.0));
  // mixed symmetry is rejected
  Tensor2 mixed(4);
  mixed.at(0, 1) = Scalar(1);
  CHECK_THROWS_AS(kn_product(g, mixed), std::invalid_argument);
}

TEST_CASE("mixed scalars promote to float and report inexact") {
  Scalar a(rat(1, 3));
  Scalar b = Scalar::flt(0.5);
  Scalar c = a * b;
  CHECK(!c.exact());
  CHECK(c.value() == doctest::Approx(1.0 / 6.0));
  KForm f(3, 1);
  f.add(mask_of({1}), a);
  CHECK(f.exact());
  f.add(mask_of({2}), b);
  CHECK(!f.exact());
}

TEST_CASE("exact operations are reproducible bit for bit") {
  auto build = [] {
    std::mt19937_64 rng(1234);
    KForm acc(7, 2);
    for (int i = 0; i < 50; ++i) acc = acc + random_form(rng, 7, 2, true);
    KForm w = wedge(acc, acc);
    std::string s;
    for (auto& [m, c] : w.terms()) s += mask_str(m) + ":" + c.str() + ";";
    return s;
  };
  CHECK(build() == build());
}

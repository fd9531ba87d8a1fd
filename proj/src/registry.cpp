#include "qcverify/registry.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qcv {

namespace {

KForm f2(int dim, std::initializer_list<std::pair<std::pair<int, int>, Rational>> terms) {
  KForm f(dim, 2);
  for (auto& [ij, q] : terms) {
    int i = ij.first, j = ij.second;
    Rational c = q;
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    f.add(mask_of({i, j}), Scalar(c));
  }
  return f;
}

LieFrame make_l1() {
  LieFrame L("l1", 7);
  L.set_d_basis(1, KForm(7, 2));
  L.set_d_basis(2, f2(7, {{{1, 2}, rat(-1)}, {{3, 4}, rat(-2)}, {{3, 7}, rat(-1, 2)}, {{4, 6}, rat(1, 2)}}));
  L.set_d_basis(3, f2(7, {{{1, 3}, rat(-1)}, {{2, 4}, rat(2)}, {{2, 7}, rat(1, 2)}, {{4, 5}, rat(-1, 2)}}));
  L.set_d_basis(4, f2(7, {{{1, 4}, rat(-1)}, {{2, 3}, rat(-2)}, {{2, 6}, rat(-1, 2)}, {{3, 5}, rat(1, 2)}}));
  L.set_d_basis(5, f2(7, {{{1, 2}, rat(2)}, {{3, 4}, rat(2)}, {{6, 7}, rat(-1, 2)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(2)}, {{4, 2}, rat(2)}, {{5, 7}, rat(1, 2)}}));
  L.set_d_basis(7, f2(7, {{{1, 4}, rat(2)}, {{2, 3}, rat(2)}, {{5, 6}, rat(-1, 2)}}));
  return L;
}

LieFrame make_l1_tilde() {
  LieFrame L("l1_tilde", 7);
  L.set_d_basis(1, KForm(7, 2));
  L.set_d_basis(2, f2(7, {{{3, 4}, rat(1)}}));
  L.set_d_basis(3, f2(7, {{{2, 4}, rat(-1)}}));
  L.set_d_basis(4, f2(7, {{{2, 3}, rat(1)}}));
  L.set_d_basis(5, f2(7, {{{1, 4}, rat(-2)}, {{2, 3}, rat(-2)}, {{1, 5}, rat(1)}, {{2, 6}, rat(1)}, {{3, 7}, rat(-1)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(-2)}, {{4, 2}, rat(-2)}, {{1, 6}, rat(1)}, {{2, 5}, rat(-1)}, {{4, 7}, rat(1)}}));
  L.set_d_basis(7, f2(7, {{{1, 2}, rat(-2)}, {{3, 4}, rat(-2)}, {{1, 7}, rat(1)}, {{3, 5}, rat(1)}, {{4, 6}, rat(-1)}}));
  return L;
}

LieFrame make_l2() {
  LieFrame L("l2", 7);
  L.set_d_basis(1, KForm(7, 2));
  L.set_d_basis(2, f2(7, {{{1, 2}, rat(-1)}, {{3, 4}, rat(1)}}));
  L.set_d_basis(3, f2(7, {{{1, 3}, rat(-1, 2)}}));
  L.set_d_basis(4, f2(7, {{{1, 4}, rat(-1, 2)}}));
  L.set_d_basis(5, f2(7, {{{1, 2}, rat(2)}, {{3, 4}, rat(2)}, {{3, 7}, rat(1)}, {{4, 6}, rat(-1)}, {{6, 7}, rat(1, 4)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(2)}, {{2, 4}, rat(-2)}, {{2, 7}, rat(-1, 2)}, {{4, 5}, rat(1)}, {{5, 7}, rat(-1, 4)}}));
  L.set_d_basis(7, f2(7, {{{1, 4}, rat(2)}, {{2, 3}, rat(2)}, {{2, 6}, rat(1, 2)}, {{3, 5}, rat(-1)}, {{5, 6}, rat(1, 4)}}));
  return L;
}

LieFrame make_l3() {
  LieFrame L("l3", 7);
  L.set_d_basis(1, f2(7, {{{1, 3}, rat(-3, 2)},
                          {{2, 4}, rat(3, 2)},
                          {{2, 5}, rat(-3, 4)},
                          {{3, 6}, rat(1, 4)},
                          {{4, 7}, rat(-1, 4)},
                          {{5, 7}, rat(1, 8)}}));
  L.set_d_basis(2, f2(7, {{{1, 4}, rat(-3, 2)},
                          {{2, 3}, rat(-3, 2)},
                          {{1, 5}, rat(3, 4)},
                          {{3, 7}, rat(1, 4)},
                          {{4, 6}, rat(1, 4)},
                          {{5, 6}, rat(-1, 8)}}));
  L.set_d_basis(3, KForm(7, 2));
  L.set_d_basis(4, f2(7, {{{1, 2}, rat(1)}, {{3, 4}, rat(1)}, {{1, 7}, rat(1, 2)}, {{2, 6}, rat(-1, 2)}, {{6, 7}, rat(1, 4)}}));
  L.set_d_basis(5, f2(7, {{{1, 2}, rat(2)}, {{3, 4}, rat(2)}, {{1, 7}, rat(1)}, {{2, 6}, rat(-1)}, {{6, 7}, rat(1, 2)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(2)}, {{4, 2}, rat(2)}, {{2, 5}, rat(1)}}));
  L.set_d_basis(7, f2(7, {{{1, 4}, rat(2)}, {{2, 3}, rat(2)}, {{1, 5}, rat(-1)}}));
  return L;
}

LieFrame make_l3_tilde() {
  LieFrame L("l3_tilde", 7);
  L.set_d_basis(1, f2(7, {{{1, 3}, rat(1)}, {{2, 4}, rat(-1)}}));
  L.set_d_basis(2, f2(7, {{{1, 4}, rat(1)}, {{2, 3}, rat(1)}}));
  L.set_d_basis(3, KForm(7, 2));
  L.set_d_basis(4, KForm(7, 2));
  L.set_d_basis(5, f2(7, {{{1, 2}, rat(-2)}, {{3, 4}, rat(-2)}, {{1, 7}, rat(-1, 2)}, {{2, 6}, rat(1, 2)}, {{3, 5}, rat(-1)}, {{6, 7}, rat(-1, 8)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(-2)}, {{2, 4}, rat(2)}, {{3, 6}, rat(-1, 2)}, {{4, 7}, rat(1, 2)}}));
  L.set_d_basis(7, f2(7, {{{1, 4}, rat(-2)}, {{2, 3}, rat(-2)}, {{3, 7}, rat(-1, 2)}, {{4, 6}, rat(-1, 2)}}));
  return L;
}

LieFrame make_su2() {
  LieFrame L("su2", 3);
  L.set_d_basis(1, f2(3, {{{2, 3}, rat(-1)}}));
  L.set_d_basis(2, f2(3, {{{1, 3}, rat(1)}}));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(-1)}}));
  return L;
}

LieFrame make_su11() {
  LieFrame L("su11", 3);
  L.set_d_basis(1, f2(3, {{{2, 3}, rat(-1)}}));
  L.set_d_basis(2, f2(3, {{{1, 3}, rat(-1)}}));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(-1)}}));
  return L;
}

LieFrame make_heis3() {
  LieFrame L("heis3", 3);
  L.set_d_basis(1, KForm(3, 2));
  L.set_d_basis(2, KForm(3, 2));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(-1)}}));
  return L;
}

LieFrame make_e2() {
  LieFrame L("e2", 3);
  L.set_d_basis(1, KForm(3, 2));
  L.set_d_basis(2, f2(3, {{{1, 3}, rat(1)}}));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(-1)}}));
  return L;
}

LieFrame make_e11() {
  LieFrame L("e11", 3);
  L.set_d_basis(1, KForm(3, 2));
  L.set_d_basis(2, f2(3, {{{1, 3}, rat(1)}}));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(1)}}));
  return L;
}

LieFrame make_psu11() {
  LieFrame L("psu11", 3);
  L.set_d_basis(1, f2(3, {{{2, 3}, rat(-1)}}));
  L.set_d_basis(2, f2(3, {{{1, 3}, rat(1)}}));
  L.set_d_basis(3, f2(3, {{{1, 2}, rat(1)}}));
  return L;
}

LieFrame make_g7() {
  LieFrame L("g7", 7);
  L.set_d_basis(1, f2(7, {{{1, 7}, rat(1)}, {{2, 7}, rat(1)}}));
  L.set_d_basis(2, f2(7, {{{1, 7}, rat(-1)}, {{2, 7}, rat(-1)}}));
  L.set_d_basis(3, f2(7, {{{1, 5}, rat(-1)}, {{1, 6}, rat(1)}, {{2, 5}, rat(-1)}, {{2, 6}, rat(1)}}));
  L.set_d_basis(4, f2(7, {{{1, 6}, rat(-1)}, {{1, 5}, rat(-1)}, {{2, 5}, rat(-1)}, {{2, 6}, rat(-1)}}));
  L.set_d_basis(5, f2(7, {{{1, 3}, rat(1)}, {{1, 4}, rat(1)}, {{2, 3}, rat(1)}, {{2, 4}, rat(1)}}));
  L.set_d_basis(6, f2(7, {{{1, 3}, rat(-1)}, {{1, 4}, rat(1)}, {{2, 3}, rat(-1)}, {{2, 4}, rat(1)}}));
  L.set_d_basis(7, f2(7, {{{1, 2}, rat(2)}}));
  return L;
}

LieFrame make_g7_eps() {
  LieFrame L("g7_eps", 7);
  L.set_d_basis(1, KForm(7, 2));
  L.set_d_basis(2, f2(7, {{{1, 7}, rat(-1)}}));
  L.set_d_basis(3, f2(7, {{{1, 5}, rat(-1)}}));
  L.set_d_basis(4, f2(7, {{{1, 6}, rat(1)}}));
  L.set_d_basis(5, f2(7, {{{1, 3}, rat(1)}}));
  L.set_d_basis(6, f2(7, {{{1, 4}, rat(-1)}}));
  L.set_d_basis(7, f2(7, {{{1, 2}, rat(1)}}));
  return L;
}

// ---------------------------------------------------------------------------
// coordinate coframes
// ---------------------------------------------------------------------------

CoordChart chart_loccoord() {
  CoordChart c;
  c.name = "loccoord";
  c.dim = 7;
  c.coords = {"t", "x", "y", "z", "x5", "x6", "x7"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double x = v[1], y = v[2];
    double x5 = v[4], x6 = v[5], x7 = v[6];
    double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(7, 7);
    // columns: dt dx dy dz dx5 dx6 dx7
    E(0, 0) = -1.0;
    E(1, 1) = 0.5 * x6;
    E(1, 2) = 0.5 * x5 * cx;
    E(1, 3) = 0.5 * x6 * cy + 0.5 * x5 * sy * sx;
    E(1, 0) = -0.5 * x7;
    E(1, 6) = 0.5;
    E(2, 1) = -0.5 * x7;
    E(2, 2) = 0.5 * x5 * sx;
    E(2, 3) = -0.5 * x7 * cy - 0.5 * x5 * sy * cx;
    E(2, 0) = -0.5 * x6;
    E(2, 5) = 0.5;
    E(3, 2) = -0.5 * x7 * cx - 0.5 * x6 * sx;
    E(3, 3) = -0.5 * sy * (-x6 * cx + x7 * sx);
    E(3, 0) = -0.5 * x5;
    E(3, 4) = 0.5;
    E(4, 1) = -x6;
    E(4, 2) = -x5 * cx - 2 * sx;
    E(4, 3) = -x6 * cy - sy * sx * x5 + 2 * sy * cx;
    E(4, 0) = x7;
    E(4, 6) = -1.0;
    E(5, 1) = x7;
    E(5, 2) = 2 * cx - x5 * sx;
    E(5, 3) = x7 * cy + 2 * sy * sx + x5 * sy * cx;
    E(5, 0) = x6;
    E(5, 5) = -1.0;
    E(6, 1) = -2.0;
    E(6, 2) = cx * x7 + x6 * sx;
    E(6, 3) = -2 * cy + x7 * sy * sx - x6 * sy * cx;
    E(6, 0) = x5;
    E(6, 4) = -1.0;
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(7, -1.0);
  c.sample_hi = Eigen::VectorXd::Constant(7, 1.0);
  c.sample_lo[2] = 0.2;  // keep y away from the dz-column degeneracies
  c.sample_hi[2] = 1.3;
  c.sample_lo[1] = 0.1;
  c.sample_hi[1] = 1.2;
  return c;
}

CoordChart chart_heis7() {
  CoordChart c;
  c.name = "heis7";
  c.dim = 7;
  c.coords = {"x1", "x2", "x3", "x4", "x5", "x6", "x7"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double x1 = v[0], x2 = v[1], x3 = v[2], x4 = v[3];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(7, 7);
    for (int i = 0; i < 4; ++i) E(i, i) = 1.0;
    // eta_1 = dx5 + 2 x1 dx2 + 2 x3 dx4
    E(4, 4) = 1.0;
    E(4, 1) = 2 * x1;
    E(4, 3) = 2 * x3;
    // eta_2 = dx6 + 2 x1 dx3 + 2 x4 dx2
    E(5, 5) = 1.0;
    E(5, 2) = 2 * x1;
    E(5, 1) = 2 * x4;
    // eta_3 = dx7 + 2 x1 dx4 + 2 x2 dx3
    E(6, 6) = 1.0;
    E(6, 3) = 2 * x1;
    E(6, 2) = 2 * x2;
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(7, -1.5);
  c.sample_hi = Eigen::VectorXd::Constant(7, 1.5);
  return c;
}

CoordChart chart_eulersu2() {
  CoordChart c;
  c.name = "euler";
  c.dim = 3;
  c.coords = {"theta", "phi", "psi"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double th = v[0], ps = v[2];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 0) = std::sin(ps);
    E(0, 1) = -std::cos(ps) * std::sin(th);
    E(1, 0) = std::cos(ps);
    E(1, 1) = std::sin(ps) * std::sin(th);
    E(2, 2) = 1.0;
    E(2, 1) = std::cos(th);
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(3, 0.4);
  c.sample_hi = Eigen::VectorXd::Constant(3, 2.6);
  return c;
}

CoordChart chart_su11() {
  CoordChart c;
  c.name = "su11_coords";
  c.dim = 3;
  c.coords = {"theta", "phi", "psi"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double th = v[0], ps = v[2];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 0) = std::sinh(ps);
    E(0, 1) = std::cosh(ps) * std::sin(th);
    E(1, 0) = std::cosh(ps);
    E(1, 1) = std::sinh(ps) * std::sin(th);
    E(2, 2) = 1.0;
    E(2, 1) = -std::cos(th);
    return E;
  };
  c.sample_lo = Eigen::VectorXd(3);
  c.sample_hi = Eigen::VectorXd(3);
  c.sample_lo << 0.4, -2.0, -1.4;
  c.sample_hi << 2.6, 2.0, 1.4;
  return c;
}

CoordChart chart_heis3() {
  CoordChart c;
  c.name = "heis3_coords";
  c.dim = 3;
  c.coords = {"x", "y", "z"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double x = v[0], y = v[1];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 0) = 1.0;
    E(1, 1) = 1.0;
    E(2, 2) = 1.0;
    E(2, 0) = 0.5 * y;
    E(2, 1) = -0.5 * x;
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(3, -2.0);
  c.sample_hi = Eigen::VectorXd::Constant(3, 2.0);
  return c;
}

CoordChart chart_e2() {
  CoordChart c;
  c.name = "e2_coords";
  c.dim = 3;
  c.coords = {"phi", "x", "y"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double phi = v[0];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 0) = 1.0;
    E(1, 1) = std::sin(phi);
    E(1, 2) = -std::cos(phi);
    E(2, 1) = std::cos(phi);
    E(2, 2) = std::sin(phi);
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(3, -2.0);
  c.sample_hi = Eigen::VectorXd::Constant(3, 2.0);
  return c;
}

CoordChart chart_e11() {
  CoordChart c;
  c.name = "e11_coords";
  c.dim = 3;
  c.coords = {"phi", "x", "y"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double phi = v[0];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 0) = 1.0;
    E(1, 1) = std::sinh(phi);
    E(1, 2) = std::cosh(phi);
    E(2, 1) = std::cosh(phi);
    E(2, 2) = std::sinh(phi);
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(3, -1.5);
  c.sample_hi = Eigen::VectorXd::Constant(3, 1.5);
  return c;
}

CoordChart chart_psu11() {
  CoordChart c;
  c.name = "psu11_coords";
  c.dim = 3;
  c.coords = {"theta", "phi", "psi"};
  c.coframe = [](const Eigen::VectorXd& v) {
    double th = v[0], ps = v[2];
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(3, 3);
    E(0, 2) = 1.0;
    E(0, 1) = -std::cos(th);
    E(1, 0) = std::sinh(ps);
    E(1, 1) = std::cosh(ps) * std::sin(th);
    E(2, 0) = std::cosh(ps);
    E(2, 1) = std::sinh(ps) * std::sin(th);
    return E;
  };
  c.sample_lo = Eigen::VectorXd(3);
  c.sample_hi = Eigen::VectorXd(3);
  c.sample_lo << 0.4, -2.0, -1.4;
  c.sample_hi << 2.6, 2.0, 1.4;
  return c;
}

Eigen::MatrixXd eps_coframe(const Eigen::VectorXd& v) {
  double x1 = v[0];
  double s = std::sin(x1), c0 = std::cos(x1);
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(7, 7);
  E(0, 0) = 1.0;                     // eps1 = dx1
  E(1, 1) = c0;   E(1, 6) = -s;      // eps2
  E(2, 4) = -s;   E(2, 2) = -c0;     // eps3
  E(3, 5) = s;    E(3, 3) = c0;      // eps4
  E(4, 4) = c0;   E(4, 2) = -s;      // eps5
  E(5, 5) = c0;   E(5, 3) = -s;      // eps6
  E(6, 1) = s;    E(6, 6) = c0;      // eps7
  return E;
}

CoordChart chart_g7_eps() {
  CoordChart c;
  c.name = "g7_eps_coords";
  c.dim = 7;
  c.coords = {"x1", "x2", "x3", "x4", "x5", "x6", "x7"};
  c.coframe = eps_coframe;
  c.sample_lo = Eigen::VectorXd::Constant(7, -2.0);
  c.sample_hi = Eigen::VectorXd::Constant(7, 2.0);
  return c;
}

CoordChart chart_g7() {
  // e-basis coframe from the eps one through the inverse basis change
  //   eps1=sqrt2(e1+e2), eps2=e2, eps3=e3+e4, eps4=e3-e4,
  //   eps5=sqrt2 e5, eps6=sqrt2 e6, eps7=e7/sqrt2.
  CoordChart c;
  c.name = "g7_coords";
  c.dim = 7;
  c.coords = {"x1", "x2", "x3", "x4", "x5", "x6", "x7"};
  c.coframe = [](const Eigen::VectorXd& v) {
    Eigen::MatrixXd eps = eps_coframe(v);
    double r2 = std::sqrt(2.0);
    Eigen::MatrixXd E(7, 7);
    E.row(0) = eps.row(0) / r2 - eps.row(1);
    E.row(1) = eps.row(1);
    E.row(2) = (eps.row(2) + eps.row(3)) / 2;
    E.row(3) = (eps.row(2) - eps.row(3)) / 2;
    E.row(4) = eps.row(4) / r2;
    E.row(5) = eps.row(5) / r2;
    E.row(6) = eps.row(6) * r2;
    return E;
  };
  c.sample_lo = Eigen::VectorXd::Constant(7, -2.0);
  c.sample_hi = Eigen::VectorXd::Constant(7, 2.0);
  return c;
}

std::map<std::string, RegistryEntry> build_registry() {
  std::map<std::string, RegistryEntry> reg;
  reg["l1"] = {make_l1(), "7-dim non-nilpotent algebra; zero-torsion qc structure, qc-conformally flat", chart_loccoord()};
  reg["l1_tilde"] = {make_l1_tilde(), "isomorphic presentation of l1", std::nullopt};
  reg["l2"] = {make_l2(), "7-dim non-nilpotent algebra; zero-torsion qc structure, not qc-conformally flat", std::nullopt};
  reg["l3"] = {make_l3(), "7-dim algebra; qc structure with non-vanishing torsion", std::nullopt};
  reg["l3_tilde"] = {make_l3_tilde(), "isomorphic presentation of l3", std::nullopt};
  reg["heis7"] = {quaternionic_heisenberg(1), "quaternionic Heisenberg group, n=1 (flat model)", chart_heis7()};
  reg["heis11"] = {quaternionic_heisenberg(2), "quaternionic Heisenberg group, n=2", std::nullopt};
  reg["su2"] = {make_su2(), "SU(2), Bianchi IX", chart_eulersu2()};
  reg["su11"] = {make_su11(), "SU(1,1), Bianchi VIII", chart_su11()};
  reg["heis3"] = {make_heis3(), "3-dim Heisenberg group, Bianchi II", chart_heis3()};
  reg["e2"] = {make_e2(), "rigid motions of the Euclidean 2-plane, Bianchi VII0", chart_e2()};
  reg["e11"] = {make_e11(), "rigid motions of the Lorentzian 2-plane, Bianchi VI0", chart_e11()};
  reg["psu11"] = {make_psu11(), "SU(1,1) presentation used for the neutral duals", chart_psu11()};
  reg["g7"] = {make_g7(), "7-dim solvable non-nilpotent group with Sp(2)-hypo structure", chart_g7()};
  reg["g7_eps"] = {make_g7_eps(), "g7 in the rotated epsilon basis", chart_g7_eps()};
  return reg;
}

std::map<std::string, RegistryEntry>& registry() {
  static std::map<std::string, RegistryEntry> reg = build_registry();
  return reg;
}

}  // namespace

LieFrame quaternionic_heisenberg(int n) {
  int dim = 4 * n + 3;
  LieFrame L(n == 1 ? "heis7" : "heis" + std::to_string(dim), dim);
  for (int a = 1; a <= 4 * n; ++a) L.set_d_basis(a, KForm(dim, 2));
  KForm w1(dim, 2), w2(dim, 2), w3(dim, 2);
  for (int k = 0; k < n; ++k) {
    int b = 4 * k;  // block base: indices b+1..b+4
    w1.add(mask_of({b + 1, b + 2}), Scalar(rat(2)));
    w1.add(mask_of({b + 3, b + 4}), Scalar(rat(2)));
    w2.add(mask_of({b + 1, b + 3}), Scalar(rat(2)));
    w2.add(mask_of({b + 2, b + 4}), Scalar(rat(-2)));  // e^{42} pattern
    w3.add(mask_of({b + 1, b + 4}), Scalar(rat(2)));
    w3.add(mask_of({b + 2, b + 3}), Scalar(rat(2)));
  }
  L.set_d_basis(4 * n + 1, w1);
  L.set_d_basis(4 * n + 2, w2);
  L.set_d_basis(4 * n + 3, w3);
  return L;
}

const std::vector<std::string>& registry_names() {
  static std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [k, e] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool registry_has(const std::string& name) { return registry().count(name) > 0; }

const RegistryEntry& registry_get(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown registry algebra: " + name);
  return it->second;
}

QcStructure standard_qc(const std::string& name) {
  const RegistryEntry& e = registry_get(name);
  const LieFrame& L = e.frame;
  int dim = L.dim();
  if (dim % 4 != 3) throw std::invalid_argument("standard_qc: frame is not (4n+3)-dimensional");
  int n = (dim - 3) / 4;
  QcStructure q;
  q.frame = &L;
  for (int a = 1; a <= 4 * n; ++a) q.H.push_back(a);
  q.V = {4 * n + 1, 4 * n + 2, 4 * n + 3};
  for (int s = 0; s < 3; ++s) {
    KForm eta(dim, 1);
    eta.set(IndexMask(1) << (q.V[s] - 1), Scalar(1));
    q.eta[s] = eta;
  }
  KForm w1(dim, 2), w2(dim, 2), w3(dim, 2);
  for (int k = 0; k < n; ++k) {
    int b = 4 * k;
    w1.add(mask_of({b + 1, b + 2}), Scalar(1));
    w1.add(mask_of({b + 3, b + 4}), Scalar(1));
    w2.add(mask_of({b + 1, b + 3}), Scalar(1));
    w2.add(mask_of({b + 2, b + 4}), Scalar(rat(-1)));
    w3.add(mask_of({b + 1, b + 4}), Scalar(1));
    w3.add(mask_of({b + 2, b + 3}), Scalar(1));
  }
  q.omega = {w1, w2, w3};
  return q;
}

}  // namespace qcv

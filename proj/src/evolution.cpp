#include "qcverify/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "qcverify/jet.hpp"

namespace qcv {

std::string ode_name(OdeId id) {
  switch (id) {
    case OdeId::QK_ISO: return "QK_ISO";
    case OdeId::QK_GEN7: return "QK_GEN7";
    case OdeId::SPIN7_GEN: return "SPIN7_GEN";
    case OdeId::SPIN7_RED: return "SPIN7_RED";
    case OdeId::HK4_SU2: return "HK4_SU2";
    case OdeId::HK4_SU11: return "HK4_SU11";
    case OdeId::HK4_HEIS: return "HK4_HEIS";
    case OdeId::HK4_E2: return "HK4_E2";
    case OdeId::HK4_E11: return "HK4_E11";
    case OdeId::HPK4_SU2: return "HPK4_SU2";
    case OdeId::HPK4_SU11: return "HPK4_SU11";
    case OdeId::HPK4_HEIS: return "HPK4_HEIS";
    case OdeId::HPK4_E2: return "HPK4_E2";
    case OdeId::HPK4_E11: return "HPK4_E11";
  }
  return "?";
}

const std::vector<OdeId>& all_ode_ids() {
  static std::vector<OdeId> ids = {
      OdeId::QK_ISO,   OdeId::QK_GEN7,  OdeId::SPIN7_GEN, OdeId::SPIN7_RED, OdeId::HK4_SU2,
      OdeId::HK4_SU11, OdeId::HK4_HEIS, OdeId::HK4_E2,    OdeId::HK4_E11,   OdeId::HPK4_SU2,
      OdeId::HPK4_SU11, OdeId::HPK4_HEIS, OdeId::HPK4_E2, OdeId::HPK4_E11};
  return ids;
}

int OdeSystem::state_dim() const {
  switch (id) {
    case OdeId::QK_ISO:
    case OdeId::SPIN7_RED: return 2;
    case OdeId::QK_GEN7:
    case OdeId::SPIN7_GEN: return 4;
    default: return 3;
  }
}

bool OdeSystem::needs_gauge() const { return state_dim() == 3; }

std::array<int, 3> OdeSystem::eps() const {
  // d(f_j f_k)/dt = eps_i * f * f_i for cyclic (i,j,k)
  switch (id) {
    case OdeId::HK4_SU2: return {1, 1, 1};
    case OdeId::HK4_SU11: return {1, -1, 1};
    case OdeId::HK4_HEIS: return {0, 0, 1};
    case OdeId::HK4_E2: return {0, 1, 1};
    case OdeId::HK4_E11: return {0, 1, -1};
    case OdeId::HPK4_SU2: return {1, 1, -1};
    case OdeId::HPK4_SU11: return {1, 1, 1};
    case OdeId::HPK4_HEIS: return {0, 0, -1};
    case OdeId::HPK4_E2: return {0, 1, -1};
    case OdeId::HPK4_E11: return {0, 1, 1};
    default: throw std::logic_error("eps(): not a 4D instanton system");
  }
}

namespace {

constexpr int CYC[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

// recover (f1',f2',f3') from the three product derivatives D_i = d(f_j f_k)/dt
void products_to_rates(const double* f, const double* D, double* df) {
  for (int ii = 0; ii < 3; ++ii) {
    int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
    df[i] = (D[j] * f[j] + D[k] * f[k] - D[i] * f[i]) / (2.0 * f[j] * f[k]);
  }
}

}  // namespace

void OdeSystem::rhs(const double* y, double gauge_f, double* dy) const {
  switch (id) {
    case OdeId::QK_ISO: {
      double f = y[0], h = y[1];
      dy[0] = 2.0 * h;
      dy[1] = (2.0 * h * h - tau * f) / f;
      return;
    }
    case OdeId::SPIN7_RED: {
      double f = y[0], h = y[1];
      dy[0] = 6.0 * h;
      dy[1] = (tau * f - 2.0 * h * h) / f;
      return;
    }
    case OdeId::QK_GEN7: {
      double f = y[0];
      const double* fi = y + 1;
      double prod = fi[0] * fi[1] * fi[2];
      dy[0] = 2.0 / 3.0 * (fi[0] + fi[1] + fi[2]);
      double D[3];
      for (int ii = 0; ii < 3; ++ii) {
        int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
        double dffjfk = 2.0 * tau * f * (fi[i] - fi[j] - fi[k]) + 6.0 * prod;
        D[i] = (dffjfk - dy[0] * fi[j] * fi[k]) / f;
      }
      products_to_rates(fi, D, dy + 1);
      return;
    }
    case OdeId::SPIN7_GEN: {
      double f = y[0];
      const double* fi = y + 1;
      double prod = fi[0] * fi[1] * fi[2];
      dy[0] = 2.0 * (fi[0] + fi[1] - fi[2]);
      double rot[3] = {fi[0] - fi[1] + fi[2], -fi[0] + fi[1] + fi[2], fi[0] + fi[1] + fi[2]};
      double sgn[3] = {2.0, 2.0, -2.0};
      double D[3];
      for (int ii = 0; ii < 3; ++ii) {
        int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
        double dffjfk = 2.0 * tau * f * rot[i] + sgn[i] * prod;
        D[i] = (dffjfk - dy[0] * fi[j] * fi[k]) / f;
      }
      products_to_rates(fi, D, dy + 1);
      return;
    }
    default: {
      auto e = eps();
      double D[3];
      for (int i = 0; i < 3; ++i) D[i] = e[i] * gauge_f * y[i];
      products_to_rates(y, D, dy);
      return;
    }
  }
}

double OdeSystem::residual(const double* y, const double* dy, double gauge_f) const {
  auto amax = [](double a, double b) { return std::max(a, std::fabs(b)); };
  switch (id) {
    case OdeId::QK_ISO: {
      double f = y[0], h = y[1], df = dy[0], ddf = 2.0 * dy[1];
      double r = 0;
      r = amax(r, f * ddf - df * df + 2.0 * tau * f);
      r = amax(r, df - 2.0 * h);
      return r;
    }
    case OdeId::SPIN7_RED: {
      double f = y[0], h = y[1], df = dy[0], ddf = 6.0 * dy[1];
      double r = 0;
      r = amax(r, 3.0 * f * ddf + df * df - 18.0 * tau * f);
      r = amax(r, df - 6.0 * h);
      return r;
    }
    case OdeId::QK_GEN7: {
      double f = y[0], df = dy[0];
      const double* fi = y + 1;
      const double* dfi = dy + 1;
      double prod = fi[0] * fi[1] * fi[2];
      double r = std::fabs(3.0 * df - 2.0 * (fi[0] + fi[1] + fi[2]));
      for (int ii = 0; ii < 3; ++ii) {
        int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
        double dffjfk = df * fi[j] * fi[k] + f * (dfi[j] * fi[k] + fi[j] * dfi[k]);
        r = amax(r, dffjfk - 2.0 * tau * f * (fi[i] - fi[j] - fi[k]) - 6.0 * prod);
      }
      return r;
    }
    case OdeId::SPIN7_GEN: {
      double f = y[0], df = dy[0];
      const double* fi = y + 1;
      const double* dfi = dy + 1;
      double prod = fi[0] * fi[1] * fi[2];
      double rot[3] = {fi[0] - fi[1] + fi[2], -fi[0] + fi[1] + fi[2], fi[0] + fi[1] + fi[2]};
      double sgn[3] = {2.0, 2.0, -2.0};
      double r = std::fabs(df - 2.0 * (fi[0] + fi[1] - fi[2]));
      for (int ii = 0; ii < 3; ++ii) {
        int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
        double dffjfk = df * fi[j] * fi[k] + f * (dfi[j] * fi[k] + fi[j] * dfi[k]);
        r = amax(r, dffjfk - 2.0 * tau * f * rot[i] - sgn[i] * prod);
      }
      return r;
    }
    default: {
      auto e = eps();
      double r = 0;
      for (int ii = 0; ii < 3; ++ii) {
        int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
        double dprod = dy[j] * y[k] + y[j] * dy[k];
        r = amax(r, dprod - e[i] * gauge_f * y[i]);
      }
      return r;
    }
  }
}

FamilyPoint ClosedFormFamily::eval(double x) const {
  if (in_domain && !in_domain(x))
    throw std::domain_error(name + ": parameter outside the validity domain");
  return eval_fn(x);
}

double ClosedFormFamily::residual(double x) const {
  FamilyPoint p = eval(x);
  OdeSystem sys{system, tau};
  return sys.residual(p.y.data(), p.dy.data(), p.f);
}

namespace {

double getp(const std::map<std::string, double>& m, const std::string& k, double dflt) {
  auto it = m.find(k);
  return it == m.end() ? dflt : it->second;
}

// family point from jets in x: dy = (d/dx) / (dt/dx)
FamilyPoint pack(double x, double dtdx, std::initializer_list<Jet> comps, double gauge) {
  FamilyPoint p;
  p.x = x;
  p.dt_dx = dtdx;
  for (const Jet& j : comps) {
    p.y.push_back(j.v);
    p.dy.push_back(j.d / dtdx);
  }
  p.f = gauge;
  return p;
}

using Params = std::map<std::string, double>;

ClosedFormFamily fam_qk_iso(const Params& pr) {
  ClosedFormFamily f;
  f.name = "qk_iso";
  f.system = OdeId::QK_ISO;
  f.tau = getp(pr, "tau", -0.25);
  double a = getp(pr, "a", 1.0);
  f.params = {{"tau", f.tau}, {"a", a}};
  double tau = f.tau;
  f.in_domain = [tau, a](double u) { return u > 0 && tau * u + a * u * u > 1e-12; };
  f.x_lo = (tau < 0 && a > 0) ? -tau / a * 1.05 + 0.05 : 0.05;
  f.x_hi = f.x_lo + 3.0;
  f.eval_fn = [tau, a](double x) {
    Jet u = Jet::var(x);
    Jet ff = u;
    Jet h = jsqrt(Jet(tau) * u + Jet(a) * u * u);
    double dtdx = 1.0 / (2.0 * h.v);
    return pack(x, dtdx, {ff, h}, ff.v);
  };
  return f;
}

ClosedFormFamily fam_spin7_red(const Params& pr) {
  ClosedFormFamily f;
  f.name = "spin7_red";
  f.system = OdeId::SPIN7_RED;
  f.tau = getp(pr, "tau", 1.0);
  double a = getp(pr, "a", 1.0);
  f.params = {{"tau", f.tau}, {"a", a}};
  double tau = f.tau;
  f.in_domain = [tau, a](double u) {
    return u > 0 && tau * std::pow(u, 5.0 / 3.0) - a > 1e-12;
  };
  f.x_lo = 1.1;
  f.x_hi = 4.0;
  f.eval_fn = [tau, a](double x) {
    Jet u = Jet::var(x);
    Jet h2 = (Jet(tau) * jpow(u, 5.0 / 3.0) - Jet(a)) / (Jet(5.0) * jpow(u, 2.0 / 3.0));
    Jet h = jsqrt(h2);
    double dtdx = 1.0 / (6.0 * h.v);
    return pack(x, dtdx, {u, h}, u.v);
  };
  return f;
}

ClosedFormFamily fam_qk_gen7_tau0(const Params& pr) {
  ClosedFormFamily f;
  f.name = "qk_gen7_tau0";
  f.system = OdeId::QK_GEN7;
  f.tau = 0.0;
  double a1 = getp(pr, "a1", 0.0), a2 = getp(pr, "a2", 1.0), a3 = getp(pr, "a3", 2.0);
  double C = getp(pr, "C", 2.0);
  f.params = {{"a1", a1}, {"a2", a2}, {"a3", a3}, {"C", C}};
  f.in_domain = [a1, a2, a3](double u) {
    return u + a1 > 1e-9 && u + a2 > 1e-9 && u + a3 > 1e-9;
  };
  f.x_lo = std::max({-a1, -a2, -a3}) + 0.2;
  f.x_hi = f.x_lo + 4.0;
  f.eval_fn = [a1, a2, a3, C](double x) {
    Jet u = Jet::var(x);
    Jet p1 = u + Jet(a1), p2 = u + Jet(a2), p3 = u + Jet(a3);
    Jet prod = p1 * p2 * p3;
    Jet ff = Jet(C) * jpow(prod, 1.0 / 9.0);
    double s6c = std::sqrt(6.0 / C);
    Jet f1 = Jet(s6c) * jpow(p2 * p2 * p2 * p2 * p3 * p3 * p3 * p3 / (p1 * p1 * p1 * p1 * p1),
                             1.0 / 9.0);
    Jet f2 = Jet(s6c) * jpow(p3 * p3 * p3 * p3 * p1 * p1 * p1 * p1 / (p2 * p2 * p2 * p2 * p2),
                             1.0 / 9.0);
    Jet f3 = Jet(s6c) * jpow(p1 * p1 * p1 * p1 * p2 * p2 * p2 * p2 / (p3 * p3 * p3 * p3 * p3),
                             1.0 / 9.0);
    double dtdx = std::pow(C / 6.0, 1.5) / std::pow(prod.v, 1.0 / 3.0);
    return pack(x, dtdx, {ff, f1, f2, f3}, ff.v);
  };
  return f;
}

ClosedFormFamily fam_spin7_gen_tau0(const Params& pr) {
  ClosedFormFamily f;
  f.name = "spin7_gen_tau0";
  f.system = OdeId::SPIN7_GEN;
  f.tau = 0.0;
  double a1 = getp(pr, "a1", 0.0), a2 = getp(pr, "a2", 1.0), a3 = getp(pr, "a3", 5.0);
  double C = getp(pr, "C", 1.0);
  f.params = {{"a1", a1}, {"a2", a2}, {"a3", a3}, {"C", C}};
  f.in_domain = [a1, a2, a3](double u) {
    return u + a1 > 1e-9 && u + a2 > 1e-9 && a3 - u > 1e-9;
  };
  f.x_lo = std::max(-a1, -a2) + 0.2;
  f.x_hi = a3 - 0.2;
  f.eval_fn = [a1, a2, a3, C](double x) {
    Jet u = Jet::var(x);
    Jet P1 = (u + Jet(a1)) * Jet(2.0);
    Jet P2 = (u + Jet(a2)) * Jet(2.0);
    Jet P3 = (Jet(a3) - u) * Jet(2.0);
    Jet ff = Jet(C / 8.0) * P1 * P2 * P3;  // C (u+a1)(u+a2)(a3-u)
    Jet f1 = jsqrt(P2 * P3 / (ff * P1));
    Jet f2 = (P3 / ff) / f1;
    Jet f3 = (P2 / ff) / f1;
    double dtdx = ff.v / (f1.v * P1.v);  // 1/(f1 f2 f3)
    return pack(x, dtdx, {ff, f1, f2, f3}, ff.v);
  };
  return f;
}

// ---- SU(2)-type general solutions in the auxiliary variable x --------------

ClosedFormFamily fam_quartic(const std::string& name, OdeId sys, const Params& pr,
                             double da1, double da2, double da3) {
  // the three 1/4-power families with sign patterns per group:
  //   su2:  f_i = ((x-a_j)(x-a_k))^{1/4} / (x-a_i)^{1/4}, all factors x-a_m
  // with the su11/e2/e11/para variants differing by which factors appear as
  // (a_m-x) and whether a_1 enters as a constant; handled per name below.
  ClosedFormFamily f;
  f.name = name;
  f.system = sys;
  double a1 = getp(pr, "a1", da1), a2 = getp(pr, "a2", da2), a3 = getp(pr, "a3", da3);
  f.params = {{"a1", a1}, {"a2", a2}, {"a3", a3}};

  if (name == "hk4_su2_general" || name == "hpk4_su11_general") {
    f.in_domain = [a1, a2, a3](double x) {
      return x - a1 > 1e-9 && x - a2 > 1e-9 && x - a3 > 1e-9;
    };
    f.x_lo = std::max({a1, a2, a3}) + 0.15;
    f.x_hi = f.x_lo + 4.0;
    f.eval_fn = [a1, a2, a3](double xx) {
      Jet x = Jet::var(xx);
      Jet p1 = x - Jet(a1), p2 = x - Jet(a2), p3 = x - Jet(a3);
      Jet f1 = jpow(p2 * p3, 0.25) / jpow(p1, 0.25);
      Jet f2 = jpow(p3 * p1, 0.25) / jpow(p2, 0.25);
      Jet f3 = jpow(p1 * p2, 0.25) / jpow(p3, 0.25);
      double g = 0.5 / std::pow(p1.v * p2.v * p3.v, 0.25);
      return pack(xx, 1.0, {f1, f2, f3}, g);
    };
  } else if (name == "hk4_su11_general") {
    // f1 = ((x-a3)(a2-x))^{1/4}/(x-a1)^{1/4}, f2 = ((x-a1)(x-a3))^{1/4}/(a2-x)^{1/4},
    // f3 = ((x-a1)(a2-x))^{1/4}/(x-a3)^{1/4}
    f.in_domain = [a1, a2, a3](double x) {
      return x - a1 > 1e-9 && a2 - x > 1e-9 && x - a3 > 1e-9;
    };
    f.x_lo = std::max(a1, a3) + 0.15;
    f.x_hi = a2 - 0.15;
    f.eval_fn = [a1, a2, a3](double xx) {
      Jet x = Jet::var(xx);
      Jet p1 = x - Jet(a1), p2 = Jet(a2) - x, p3 = x - Jet(a3);
      Jet f1 = jpow(p3 * p2, 0.25) / jpow(p1, 0.25);
      Jet f2 = jpow(p1 * p3, 0.25) / jpow(p2, 0.25);
      Jet f3 = jpow(p1 * p2, 0.25) / jpow(p3, 0.25);
      double g = 0.5 / std::pow(p1.v * p2.v * p3.v, 0.25);
      return pack(xx, 1.0, {f1, f2, f3}, g);
    };
  } else if (name == "hpk4_su2_general") {
    // su11 solution with f2 and f3 interchanged
    f.in_domain = [a1, a2, a3](double x) {
      return x - a1 > 1e-9 && a2 - x > 1e-9 && x - a3 > 1e-9;
    };
    f.x_lo = std::max(a1, a3) + 0.15;
    f.x_hi = a2 - 0.15;
    f.eval_fn = [a1, a2, a3](double xx) {
      Jet x = Jet::var(xx);
      Jet p1 = x - Jet(a1), p2 = Jet(a2) - x, p3 = x - Jet(a3);
      Jet f1 = jpow(p3 * p2, 0.25) / jpow(p1, 0.25);
      Jet f2 = jpow(p1 * p2, 0.25) / jpow(p3, 0.25);
      Jet f3 = jpow(p1 * p3, 0.25) / jpow(p2, 0.25);
      double g = 0.5 / std::pow(p1.v * p2.v * p3.v, 0.25);
      return pack(xx, 1.0, {f1, f2, f3}, g);
    };
  } else if (name == "hk4_e2_general" || name == "hpk4_e11_general") {
    // f1 = ((x-a2)(x-a3))^{1/4}/a1^{1/4}, f2 = a1^{1/4}(x-a3)^{1/4}/(x-a2)^{1/4},
    // f3 = a1^{1/4}(x-a2)^{1/4}/(x-a3)^{1/4}
    f.in_domain = [a1, a2, a3](double x) {
      return a1 > 0 && x - a2 > 1e-9 && x - a3 > 1e-9;
    };
    f.x_lo = std::max(a2, a3) + 0.15;
    f.x_hi = f.x_lo + 4.0;
    f.eval_fn = [a1, a2, a3](double xx) {
      Jet x = Jet::var(xx);
      Jet p2 = x - Jet(a2), p3 = x - Jet(a3);
      double c = std::pow(a1, 0.25);
      Jet f1 = jpow(p2 * p3, 0.25) / Jet(c);
      Jet f2 = Jet(c) * jpow(p3, 0.25) / jpow(p2, 0.25);
      Jet f3 = Jet(c) * jpow(p2, 0.25) / jpow(p3, 0.25);
      double g = 0.5 / std::pow(a1 * p2.v * p3.v, 0.25);
      return pack(xx, 1.0, {f1, f2, f3}, g);
    };
  } else {  // hk4_e11_general / hpk4_e2_general
    // f1 = ((x-a2)(a3-x))^{1/4}/a1^{1/4}, f2 = a1^{1/4}(a3-x)^{1/4}/(x-a2)^{1/4},
    // f3 = a1^{1/4}(x-a2)^{1/4}/(a3-x)^{1/4}
    f.in_domain = [a1, a2, a3](double x) {
      return a1 > 0 && x - a2 > 1e-9 && a3 - x > 1e-9;
    };
    f.x_lo = a2 + 0.15;
    f.x_hi = a3 - 0.15;
    f.eval_fn = [a1, a2, a3](double xx) {
      Jet x = Jet::var(xx);
      Jet p2 = x - Jet(a2), p3 = Jet(a3) - x;
      double c = std::pow(a1, 0.25);
      Jet f1 = jpow(p2 * p3, 0.25) / Jet(c);
      Jet f2 = Jet(c) * jpow(p3, 0.25) / jpow(p2, 0.25);
      Jet f3 = Jet(c) * jpow(p2, 0.25) / jpow(p3, 0.25);
      double g = 0.5 / std::pow(a1 * p2.v * p3.v, 0.25);
      return pack(xx, 1.0, {f1, f2, f3}, g);
    };
  }
  return f;
}

ClosedFormFamily fam_eguchi_hanson(const Params& pr) {
  ClosedFormFamily f;
  f.name = "hk4_su2_eguchi_hanson";
  f.system = OdeId::HK4_SU2;
  double a = getp(pr, "a", 1.0);
  f.params = {{"a", a}};
  f.in_domain = [a](double t) { return t > 0 && t * t * t * t - a > 1e-9; };
  f.x_lo = std::pow(std::max(a, 0.0), 0.25) + 0.1;
  f.x_hi = f.x_lo + 3.0;
  f.eval_fn = [a](double tt) {
    Jet t = Jet::var(tt);
    Jet t4 = t * t * t * t;
    Jet f1 = t * Jet(0.5);
    Jet f2 = f1;
    Jet f3 = f1 * jsqrt((t4 - Jet(a)) / t4);
    double gauge = std::sqrt(t4.v / (t4.v - a));
    return pack(tt, 1.0, {f1, f2, f3}, gauge);
  };
  return f;
}

ClosedFormFamily fam_triaxial(const Params& pr) {
  ClosedFormFamily f;
  f.name = "hk4_su2_triaxial";
  f.system = OdeId::HK4_SU2;
  double a = getp(pr, "a", 0.5), b = getp(pr, "b", 0.9), c = getp(pr, "c", 1.2);
  f.params = {{"a", a}, {"b", b}, {"c", c}};
  double m = std::max({a, b, c});
  f.in_domain = [m](double t) { return t > m + 1e-9; };
  f.x_lo = m + 0.15;
  f.x_hi = m + 3.0;
  f.eval_fn = [a, b, c](double tt) {
    Jet t = Jet::var(tt);
    Jet t4 = t * t * t * t;
    Jet pa = t4 - Jet(a * a * a * a), pb = t4 - Jet(b * b * b * b), pc = t4 - Jet(c * c * c * c);
    Jet f1 = jpow(pb * pc, 0.25) / jpow(pa, 0.25);
    Jet f2 = jpow(pa * pc, 0.25) / jpow(pb, 0.25);
    Jet f3 = jpow(pa * pb, 0.25) / jpow(pc, 0.25);
    double gauge = 2.0 * tt * tt * tt / std::pow(pa.v * pb.v * pc.v, 0.25);
    return pack(tt, 1.0, {f1, f2, f3}, gauge);
  };
  return f;
}

ClosedFormFamily fam_heis_general(const std::string& name, OdeId sys, const Params& pr) {
  ClosedFormFamily f;
  f.name = name;
  f.system = sys;
  double a = getp(pr, "a", 1.0), b = getp(pr, "b", 2.0), c = getp(pr, "c", 0.3);
  f.params = {{"a", a}, {"b", b}, {"c", c}};
  bool para = (sys == OdeId::HPK4_HEIS);
  f.in_domain = [a, b, c](double r) {
    return 1.5 * std::pow(a * b, 0.25) * r + c > 1e-9;
  };
  f.x_lo = std::max(0.1, (1e-6 - c) / (1.5 * std::pow(a * b, 0.25)));
  f.x_hi = f.x_lo + 5.0;
  f.eval_fn = [a, b, c, para](double rr) {
    Jet r = Jet::var(rr);
    Jet w = Jet(1.5 * std::pow(a * b, 0.25)) * r + Jet(c);
    Jet f1 = Jet(std::pow(b / a, 0.25)) * jpow(w, 1.0 / 3.0);
    Jet f2 = Jet(std::pow(a / b, 0.25)) * jpow(w, 1.0 / 3.0);
    Jet f3 = Jet(std::pow(a * b, 0.25)) / jpow(w, 1.0 / 3.0);
    if (para) f3 = -f3;
    return pack(rr, 1.0, {f1, f2, f3}, 1.0);
  };
  return f;
}

ClosedFormFamily fam_vii0(const Params& pr) {
  ClosedFormFamily f;
  f.name = "hk4_e2_vii0";
  f.system = OdeId::HK4_E2;
  double A = getp(pr, "A", 1.0), B = getp(pr, "B", 1.0);
  f.params = {{"A", A}, {"B", B}};
  f.in_domain = [A, B](double t) {
    double p = 0.5 * (A * std::exp(t) + B * std::exp(-t));
    double q = 0.5 * (A * std::exp(t) - B * std::exp(-t));
    return p * q > 1e-9 && std::fabs(q) > 1e-9;
  };
  f.x_lo = 0.1;
  f.x_hi = 2.5;
  f.eval_fn = [A, B](double tt) {
    Jet t = Jet::var(tt);
    Jet p = (Jet(A) * jexp(t) + Jet(B) * jexp(-t)) * Jet(0.5);
    Jet q = (Jet(A) * jexp(t) - Jet(B) * jexp(-t)) * Jet(0.5);
    Jet f1 = jsqrt(p * q);
    Jet f2 = jsqrt(p / q);
    Jet f3 = jsqrt(q / p);
    return pack(tt, 1.0, {f1, f2, f3}, f1.v);
  };
  return f;
}

ClosedFormFamily fam_vi0(const Params& pr) {
  ClosedFormFamily f;
  f.name = "hk4_e11_vi0";
  f.system = OdeId::HK4_E11;
  double A = getp(pr, "A", 1.0), B = getp(pr, "B", 0.0);
  f.params = {{"A", A}, {"B", B}};
  f.in_domain = [A, B](double t) {
    double p = A * std::cos(t) + B * std::sin(t);
    double q = A * std::sin(t) - B * std::cos(t);
    return p * q > 1e-9;
  };
  f.x_lo = 0.1;
  f.x_hi = 1.45;
  f.eval_fn = [A, B](double tt) {
    Jet t = Jet::var(tt);
    Jet p = Jet(A) * jcos(t) + Jet(B) * jsin(t);
    Jet q = Jet(A) * jsin(t) - Jet(B) * jcos(t);
    Jet f1 = jsqrt(p * q);
    Jet f2 = jsqrt(p / q);
    Jet f3 = jsqrt(q / p);
    return pack(tt, 1.0, {f1, f2, f3}, f1.v);
  };
  return f;
}

}  // namespace

ClosedFormFamily make_family(const std::string& name, const Params& pr) {
  if (name == "qk_iso") return fam_qk_iso(pr);
  if (name == "qk_gen7_tau0") return fam_qk_gen7_tau0(pr);
  if (name == "spin7_red") return fam_spin7_red(pr);
  if (name == "spin7_gen_tau0") return fam_spin7_gen_tau0(pr);
  if (name == "hk4_su2_general") return fam_quartic(name, OdeId::HK4_SU2, pr, 0.0, 1.0, 2.0);
  if (name == "hk4_su2_eguchi_hanson") return fam_eguchi_hanson(pr);
  if (name == "hk4_su2_triaxial") return fam_triaxial(pr);
  if (name == "hk4_su11_general") return fam_quartic(name, OdeId::HK4_SU11, pr, 0.0, 3.0, 0.5);
  if (name == "hk4_heis_general") return fam_heis_general(name, OdeId::HK4_HEIS, pr);
  if (name == "hk4_e2_general") return fam_quartic(name, OdeId::HK4_E2, pr, 1.0, 0.0, 0.7);
  if (name == "hk4_e2_vii0") return fam_vii0(pr);
  if (name == "hk4_e11_general") return fam_quartic(name, OdeId::HK4_E11, pr, 1.0, 0.0, 2.0);
  if (name == "hk4_e11_vi0") return fam_vi0(pr);
  if (name == "hpk4_su2_general") return fam_quartic(name, OdeId::HPK4_SU2, pr, 0.0, 3.0, 0.5);
  if (name == "hpk4_su11_general")
    return fam_quartic(name, OdeId::HPK4_SU11, pr, 0.0, 1.0, 2.0);
  if (name == "hpk4_heis_general") return fam_heis_general(name, OdeId::HPK4_HEIS, pr);
  if (name == "hpk4_e2_general") return fam_quartic(name, OdeId::HPK4_E2, pr, 1.0, 0.0, 2.0);
  if (name == "hpk4_e11_general") return fam_quartic(name, OdeId::HPK4_E11, pr, 1.0, 0.0, 0.7);
  throw std::invalid_argument("unknown solution family: " + name);
}

std::vector<std::string> family_names() {
  return {"qk_iso",           "qk_gen7_tau0",     "spin7_red",        "spin7_gen_tau0",
          "hk4_su2_general",  "hk4_su2_eguchi_hanson", "hk4_su2_triaxial", "hk4_su11_general",
          "hk4_heis_general", "hk4_e2_general",   "hk4_e2_vii0",      "hk4_e11_general",
          "hk4_e11_vi0",      "hpk4_su2_general", "hpk4_su11_general", "hpk4_heis_general",
          "hpk4_e2_general",  "hpk4_e11_general"};
}

std::vector<ClosedFormFamily> builtin_families() {
  std::vector<ClosedFormFamily> out;
  for (auto& n : family_names()) out.push_back(make_family(n, {}));
  return out;
}

double ideal_residual(const ClosedFormFamily& fam, double x) {
  if (fam.system != OdeId::QK_ISO && fam.system != OdeId::QK_GEN7)
    throw std::invalid_argument("ideal_residual: dimension-7 quaternionic families only");
  FamilyPoint p = fam.eval(x);
  double f, df, fi[3], dfi[3];
  if (fam.system == OdeId::QK_ISO) {
    f = p.y[0];
    df = p.dy[0];
    for (int i = 0; i < 3; ++i) {
      fi[i] = p.y[1];
      dfi[i] = p.dy[1];
    }
  } else {
    f = p.y[0];
    df = p.dy[0];
    for (int i = 0; i < 3; ++i) {
      fi[i] = p.y[1 + i];
      dfi[i] = p.dy[1 + i];
    }
  }
  double prod = fi[0] * fi[1] * fi[2];
  double r = 0;
  for (int ii = 0; ii < 3; ++ii) {
    int i = CYC[ii][0], j = CYC[ii][1], k = CYC[ii][2];
    double dfjfk = dfi[j] * fi[k] + fi[j] * dfi[k];
    double val = f * dfjfk - df * fi[j] * fi[k] + 2.0 * prod -
                 2.0 * fi[j] * fi[k] * (fi[j] + fi[k]) + 2.0 * fam.tau * f * (fi[j] + fi[k]) -
                 2.0 * fam.tau * f * fi[i];
    r = std::max(r, std::fabs(val));
  }
  return r;
}

double iso_ideal_residual(const ClosedFormFamily& fam, double x) {
  if (fam.system != OdeId::QK_ISO)
    throw std::invalid_argument("iso_ideal_residual: isotropic family only");
  FamilyPoint p = fam.eval(x);
  double f = p.y[0], df = p.dy[0], ddf = 2.0 * p.dy[1];
  return std::fabs(f / df * (f * ddf - df * df + 2.0 * fam.tau * f));
}

namespace {

void rk4_step(const OdeSystem& sys, double x, const std::vector<double>& y, double h,
              const std::function<double(double)>& dt_dx,
              const std::function<double(double)>& gauge_f, std::vector<double>& out) {
  int n = int(y.size());
  auto deriv = [&](double xx, const std::vector<double>& yy, std::vector<double>& dd) {
    double g = gauge_f ? gauge_f(xx) : 0.0;
    sys.rhs(yy.data(), g, dd.data());
    double w = dt_dx ? dt_dx(xx) : 1.0;
    for (auto& v : dd) v *= w;
  };
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  deriv(x, y, k1);
  for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  deriv(x + 0.5 * h, tmp, k2);
  for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  deriv(x + 0.5 * h, tmp, k3);
  for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  deriv(x + h, tmp, k4);
  out.resize(n);
  for (int i = 0; i < n; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

bool finite(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v) || std::fabs(v) > 1e12) return false;
  return true;
}

}  // namespace

IntegrateResult integrate_ode(const OdeSystem& sys, std::vector<double> y, double x0,
                              const std::vector<double>& checkpoints,
                              std::function<double(double)> dt_dx,
                              std::function<double(double)> gauge_f, double tol) {
  IntegrateResult res;
  double x = x0;
  std::vector<double> big, half, two;
  for (double target : checkpoints) {
    double h = (target - x) / 16.0;
    if (h == 0.0) {
      res.at_checkpoints.push_back(y);
      continue;
    }
    int guard = 0;
    while ((target - x) * (target > x0 ? 1.0 : -1.0) > 1e-14 * std::max(1.0, std::fabs(target))) {
      if (++guard > 2000000) {
        res.error = "step count exceeded";
        res.last_x = x;
        return res;
      }
      if ((h > 0) != (target > x) || std::fabs(h) > std::fabs(target - x))
        h = target - x;
      rk4_step(sys, x, y, h, dt_dx, gauge_f, big);
      rk4_step(sys, x, y, h / 2, dt_dx, gauge_f, half);
      rk4_step(sys, x + h / 2, half, h / 2, dt_dx, gauge_f, two);
      if (!finite(big) || !finite(two)) {
        res.error = "trajectory left the domain (blow-up)";
        res.last_x = x;
        return res;
      }
      double err = 0, scale = 1.0;
      for (size_t i = 0; i < y.size(); ++i) {
        err = std::max(err, std::fabs(big[i] - two[i]));
        scale = std::max(scale, std::fabs(y[i]));
      }
      if (err <= tol * scale) {
        x += h;
        y = two;
        if (err < tol * scale / 64.0) h *= 1.8;
      } else {
        h *= 0.5;
      }
    }
    res.at_checkpoints.push_back(y);
  }
  res.ok = true;
  res.last_x = x;
  return res;
}

double oracle_compare(const ClosedFormFamily& fam, double x0, double x1, int n, double tol) {
  OdeSystem sys{fam.system, fam.tau};
  FamilyPoint start = fam.eval(x0);
  std::vector<double> cps;
  for (int i = 1; i <= n; ++i) cps.push_back(x0 + (x1 - x0) * i / n);
  auto dtdx = [&fam](double x) { return fam.eval(x).dt_dx; };
  auto gauge = [&fam](double x) { return fam.eval(x).f; };
  IntegrateResult res = integrate_ode(sys, start.y, x0, cps, dtdx, gauge, tol);
  if (!res.ok) throw std::runtime_error("oracle_compare: " + res.error);
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    FamilyPoint truth = fam.eval(cps[i]);
    for (size_t k = 0; k < truth.y.size(); ++k)
      worst = std::max(worst, std::fabs(res.at_checkpoints[i][k] - truth.y[k]));
  }
  return worst;
}

double rk4_order_estimate(const ClosedFormFamily& fam, double x0, double x1, int base_steps) {
  OdeSystem sys{fam.system, fam.tau};
  auto run = [&](int steps) {
    std::vector<double> y = fam.eval(x0).y;
    double h = (x1 - x0) / steps, x = x0;
    std::vector<double> next;
    for (int i = 0; i < steps; ++i) {
      rk4_step(
          sys, x, y, h, [&fam](double xx) { return fam.eval(xx).dt_dx; },
          [&fam](double xx) { return fam.eval(xx).f; }, next);
      y = next;
      x += h;
    }
    FamilyPoint truth = fam.eval(x1);
    double err = 0;
    for (size_t k = 0; k < y.size(); ++k) err = std::max(err, std::fabs(y[k] - truth.y[k]));
    return err;
  };
  double e1 = run(base_steps), e2 = run(2 * base_steps);
  return std::log2(e1 / e2);
}

double bgpp_residual(const double* y, const double* dy, double gauge_f) {
  double f1 = y[0], f2 = y[1], f3 = y[2];
  double r = 0;
  r = std::max(r, std::fabs(dy[0] - gauge_f * (f2 * f2 + f3 * f3 - f1 * f1) / (2 * f2 * f3)));
  r = std::max(r, std::fabs(dy[1] - gauge_f * (f3 * f3 + f1 * f1 - f2 * f2) / (2 * f1 * f3)));
  r = std::max(r, std::fabs(dy[2] - gauge_f * (f1 * f1 + f2 * f2 - f3 * f3) / (2 * f1 * f2)));
  return r;
}

}  // namespace qcv

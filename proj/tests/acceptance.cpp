// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <string>

#include "qcverify/qc_conformal.hpp"
#include "qcverify/special_metrics.hpp"
#include "qcverify/verify.hpp"

using namespace qcv;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what, const std::string& detail = "") {
  std::printf("criterion %2d: %s  %s%s%s\n", n, ok ? "PASS" : "FAIL", what.c_str(),
              detail.empty() ? "" : "  -- ", detail.c_str());
  if (!ok) ++failures;
}

std::string fails_of(const Report& rep) {
  std::string s;
  for (auto& v : rep.verdicts)
    if (!v.pass) s += v.name + "; ";
  return s;
}

}  // namespace

int main() {
  const uint64_t seed = 20260809;

  {  // 1. zero-torsion qc-flat example, all exact
    Report rep = verify_example(1);
    line(1, rep.pass(),
         "example 1: S = -1/2, torsion 0, Christoffel table entry-for-entry, "
         "R(a,b,a,b) = 1, WR == 0 (exact)",
         fails_of(rep));
  }
  {  // 2. zero-torsion non-flat example
    Report rep = verify_example(2);
    line(2, rep.pass(),
         "example 2: S = -1/4, torsion 0, R(e1,e2,e3,e4) = -1/2, WR != 0 (exact)",
         fails_of(rep));
  }
  {  // 3. torsion example with the explicit T0
    Report rep = verify_example(3);
    line(3, rep.pass(),
         "example 3: S = -1, T0 = psi(.,I_1 .), WR(e1,e2,e3,e4) = -1/2, torsion "
         "identities (exact)",
         fails_of(rep));
  }
  {  // 4. flat model
    Report rep = verify_heisenberg();
    line(4, rep.pass(), "quaternionic Heisenberg: R == 0, S = 0, W^qc == 0 (exact)",
         fails_of(rep));
  }
  {  // 5. Jacobi on the whole registry
    Report rep = jacobi_all();
    line(5, rep.pass(),
         "d^2 == 0 exactly on all " + std::to_string(registry_names().size()) +
             " registry algebras",
         fails_of(rep));
  }
  {  // 6. quaternionic Kaehler coordinate table, a in {1,2}
    bool ok = true;
    std::string detail;
    for (double a : {1.0, 2.0}) {
      EinsteinFit fit = einstein_fit(appendix1_table(a), 20, seed);
      bool lam = std::fabs(fit.lambda + 4 * a) <= 1e-5 * 4 * a;
      bool res = fit.residual <= 1e-5;
      AppendixCrosscheck cc = appendix_crosscheck(1, a, 20, seed);
      bool match = cc.max_metric_diff <= 1e-10;
      if (!(lam && res && match)) ok = false;
      detail += "a=" + double_str(a) + ": lambda=" + double_str(fit.lambda) +
                " resid=" + double_str(fit.residual) +
                " table-diff=" + double_str(cc.max_metric_diff) + "  ";
    }
    line(6, ok, "coordinate table: Ric = -4a g (<=1e-5), table == frame (<=1e-10)", detail);
  }
  {  // 7. Heisenberg-based quaternionic Kaehler metric
    auto cm = to_coord_metric(build_metric("qk_heisenberg", {{"a", 1.0}}));
    EinsteinFit fit = einstein_fit(cm, 20, seed);
    bool ok = std::fabs(fit.lambda + 16.0) <= 1e-5 * 16.0 && fit.residual <= 1e-5;
    line(7, ok, "qk_heisenberg (n=1, a=1): Ric = -16 g (residual <= 1e-5)",
         "lambda=" + double_str(fit.lambda) + " resid=" + double_str(fit.residual));
  }
  {  // 8. closed fundamental 4-form, not Einstein
    auto m = build_metric("qk_nonqk", {{"a1", 0.0}, {"a2", 1.0}, {"a3", 2.0}, {"C", 2.0}});
    ClosednessReport cr = closedness_check(m, *m.form("Phi"), 20, seed);
    EinsteinFit fit = einstein_fit(to_coord_metric(m), 20, seed);
    bool ok = cr.max_residual <= 1e-8 && fit.residual >= 1e-3;
    line(8, ok, "non-QK family (distinct a_i): dPhi <= 1e-8 and Einstein residual >= 1e-3",
         "dPhi=" + double_str(cr.max_residual) + " resid=" + double_str(fit.residual));
  }
  {  // 9. Spin(7) metric: Ricci-flat, curvature span, closure, stabilizer
    auto cm = to_coord_metric(build_metric("spin7_g1", {{"a", 1.0}}), "Psi");
    FdOptions ricci_opt;
    ricci_opt.h = 2e-3;
    double ric = max_ricci_flat_residual(cm, 20, seed, ricci_opt);
    FdOptions hol_opt;
    hol_opt.h = 5e-3;
    HolonomyReport hr = holonomy_estimate(cm, 3, seed, hol_opt);
    bool ok = ric <= 1e-6 && hr.span_rank >= 16 && hr.closure_dim == 21 &&
              hr.closure_consistent && hr.annihilator_residual <= 1e-8 &&
              hr.annihilator_residual >= 0;
    line(9, ok,
         "Spin(7) metric (a=1): |Ric| <= 1e-6, span rank >= 16, closure == 21, "
         "generators annihilate Psi (<=1e-8)",
         "|Ric|=" + double_str(ric) + " rank=" + std::to_string(hr.span_rank) +
             " closure=" + std::to_string(hr.closure_dim) +
             " ann=" + double_str(hr.annihilator_residual));
  }
  {  // 10. every closed-form family: residual, oracle, order
    bool ok = true;
    std::string worst_fam;
    double worst_resid = 0, worst_oracle = 0, worst_order = 99;
    auto fams = builtin_families();
    for (auto& fam : fams) {
      double resid = 0;
      int used = 0;
      for (int i = 0; i < 100; ++i) {
        double x;
        if (fam.x_lo > 0) {
          double lo = std::log(fam.x_lo), hi = std::log(fam.x_hi);
          x = std::exp(lo + (hi - lo) * (i + 0.5) / 100);
        } else {
          x = fam.x_lo + (fam.x_hi - fam.x_lo) * (i + 0.5) / 100;
        }
        if (fam.in_domain && !fam.in_domain(x)) continue;
        resid = std::max(resid, fam.residual(x));
        ++used;
      }
      double x0 = fam.x_lo + 0.2 * (fam.x_hi - fam.x_lo);
      double x1 = fam.x_lo + 0.8 * (fam.x_hi - fam.x_lo);
      double oracle = oracle_compare(fam, x0, x1, 8);
      double order = rk4_order_estimate(fam, x0, x1, 24);
      if (resid > 1e-10 || oracle > 1e-6 || order < 3.8 || used < 60) {
        ok = false;
        worst_fam += fam.name + " ";
      }
      worst_resid = std::max(worst_resid, resid);
      worst_oracle = std::max(worst_oracle, oracle);
      worst_order = std::min(worst_order, order);
    }
    line(10, ok,
         "all " + std::to_string(fams.size()) +
             " solution families: residual <= 1e-10 at 100 samples, integrator match "
             "<= 1e-6, order >= 3.8",
         "max resid=" + double_str(worst_resid) + " max oracle=" + double_str(worst_oracle) +
             " min order=" + double_str(worst_order) +
             (worst_fam.empty() ? "" : " failing: " + worst_fam));
  }
  {  // 11. the five 4D instantons
    bool ok = true;
    std::string detail;
    for (auto name : {"hk4_su2_eguchi_hanson", "hk4_su2_triaxial", "hk4_heis", "hk4_e2_vii0",
                      "hk4_e11_vi0"}) {
      auto m = build_metric(name, {});
      double df = 0;
      for (auto& f : m.forms) df = std::max(df, closedness_check(m, f, 20, seed).max_residual);
      FdOptions opt;
      opt.h = 2e-3;
      double ric = max_ricci_flat_residual(to_coord_metric(m), 20, seed, opt);
      if (df > 1e-8 || ric > 1e-6) {
        ok = false;
        detail += std::string(name) + " dF=" + double_str(df) + " ric=" + double_str(ric) + " ";
      }
    }
    line(11, ok, "4D instantons: dF_s <= 1e-8 and |Ric| <= 1e-6 (5 groups)", detail);
  }
  {  // 12. the five neutral hyper-para-Kaehler duals, signature (2,2)
    bool ok = true;
    std::string detail;
    for (auto name : {"hpk4_su2", "hpk4_su11", "hpk4_heis", "hpk4_e2", "hpk4_e11"}) {
      auto m = build_metric(name, {});
      double df = 0;
      for (auto& f : m.forms) df = std::max(df, closedness_check(m, f, 20, seed).max_residual);
      FdOptions opt;
      opt.h = 2e-3;
      double ric = max_ricci_flat_residual(to_coord_metric(m), 20, seed, opt);
      if (df > 1e-8 || ric > 1e-6) {
        ok = false;
        detail += std::string(name) + " dOmega=" + double_str(df) + " ric=" + double_str(ric) + " ";
      }
    }
    line(12, ok, "neutral duals: dOmega_s <= 1e-8 and |Ric| <= 1e-6 in signature (2,2)",
         detail);
  }
  {  // 13. the eight-dimensional solvable lifts are flat; hypo identities exact
    bool ok = true;
    std::string detail;
    for (auto name : {"hk8_g7_product", "hk8_g7_flat"}) {
      auto cm = to_coord_metric(build_metric(name, {}));
      std::mt19937_64 rng(seed);
      double worst = 0;
      for (int i = 0; i < 10; ++i) {
        auto s = riemann_ricci_fd(cm, cm.random_point(rng));
        for (double r : s.riemann) worst = std::max(worst, std::fabs(r));
      }
      if (worst > 1e-8) ok = false;
      detail += std::string(name) + " |Riem|=" + double_str(worst) + " ";
    }
    bool hypo = hypo_check("g7").pass();
    if (!hypo) ok = false;
    line(13, ok, "solvable 8D lifts flat (|Riem| <= 1e-8, t != -1/2) and Sp(2)-hypo "
                 "identities exact", detail);
  }
  {  // 14. Hodge dual of the G2 form, exact equality with the closed form
    G2Package g2 = g2_package(standard_qc("heis7"));
    line(14, g2.star_matches_display,
         "*phi equals the displayed dual exactly on the 7-frame",
         std::string("orientation convention: vol = ") +
             (g2.orientation < 0 ? "-" : "+") + "e^{1...7}");
  }
  {  // 15. structure equations with the computed connection forms
    bool ok = true;
    for (auto name : {"l1", "l2", "l3"}) {
      QcStructure q = standard_qc(name);
      BiquardConnection conn = solve_biquard(q);
      CurvatureTensor R = curvature(conn);
      TorsionDecomp dec = torsion_decompose(q, conn, R);
      if (!structure_eq_check(q, conn, dec).pass) ok = false;
    }
    line(15, ok, "structure equations hold exactly with computed (alpha_s, S) on examples 1-3");
  }

  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures;
}

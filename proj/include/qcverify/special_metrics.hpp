#pragma once

#include <map>
#include <optional>

#include "qcverify/curvature_numeric.hpp"
#include "qcverify/evolution.hpp"
#include "qcverify/jet.hpp"
#include "qcverify/qc_structure.hpp"
#include "qcverify/registry.hpp"

namespace qcv {

// A form with transverse-parameter-dependent coefficients: value and d/dw
// carried together so the exterior derivative splits exactly into
// d_base + dw ^ d/dw with no finite differencing.
struct JetKForm {
  KForm val, der;
  JetKForm() = default;
  JetKForm(int dim, int deg) : val(dim, deg), der(dim, deg) {}
};
JetKForm jk_scale(Jet c, const KForm& base);  // c(w) * constant form
JetKForm jk_add(const JetKForm& a, const JetKForm& b);
JetKForm jk_wedge(const JetKForm& a, const JetKForm& b);

struct FormField {
  std::string name;
  int degree = 0;
  std::function<JetKForm(double)> eval;  // on the product frame (base + dw)
};

// Cohomogeneity-one metric over a registry algebra: a w-dependent frame map
// beta^i(w) = sum_j L_ij(w) e^j (+ L_i,n dw) with the metric
// sum_i eps_i (beta^i)^2, together with its fundamental form fields.
struct CohomOneMetric {
  std::string name;
  const LieFrame* base = nullptr;
  LieFrame prod;  // base frame extended by the closed transverse slot
  std::optional<CoordChart> chart;
  std::vector<int> eps;
  std::function<Eigen::MatrixXd(double)> frame_map;
  std::function<bool(double)> domain;
  double w_lo = 0, w_hi = 1;
  std::vector<FormField> forms;
  std::map<std::string, std::string> coeff_expr;
  std::map<std::string, double> params;

  const FormField* form(const std::string& n) const;
};

std::vector<std::string> metric_names();
CohomOneMetric build_metric(const std::string& name,
                            const std::map<std::string, double>& params);

// exterior derivative of a form field at transverse parameter w
KForm d_formfield(const CohomOneMetric& m, const FormField& ff, double w,
                  bool base_only = false);

struct ClosednessReport {
  std::string metric, form;
  double max_residual = 0;
  double max_residual_fd = 0;  // with the coefficient derivative by central FD
  int samples = 0;
  bool pass = false;
};
ClosednessReport closedness_check(const CohomOneMetric& m, const FormField& ff,
                                  int nsamples, uint64_t seed, double tol = 1e-8,
                                  bool base_only = false);

// coordinate metric (chart coordinates + w) for the FD curvature pipeline
CoordMetric to_coord_metric(const CohomOneMetric& m, const std::string& four_form_name = "");

// Exact hypo checks: "heis7" (closed fundamental 4-form), "g7" (the three
// Sp(2)-hypo identities), "three_sasakian" (the cone family closes the lifted
// 2-forms; checked in the formal algebra generated by eta_s, omega_s).
CheckReport hypo_check(const std::string& what);

// fundamental 4-form of a (4n+3)-structure
KForm fundamental_four_form(const QcStructure& q);
// restriction identity: sum (omega_i + eta_j^eta_k)^2 equals the 4-form
bool restriction_identity(const QcStructure& q);

struct G2Package {
  KForm phi;        // on the 7-frame
  KForm star_phi;   // Hodge dual, orientation recorded below
  KForm psi;        // Spin(7) 4-form on the extended 8-frame
  int orientation;  // volume-form sign convention used by the Hodge dual
  bool star_matches_display = false;  // *phi equals the closed-form expansion
  bool norm_identity = false;         // phi ^ *phi == |phi|^2 vol
};
G2Package g2_package(const QcStructure& q);

struct AppendixCrosscheck {
  bool table_matches_frame = false;
  double max_metric_diff = 0;
  int curvature_entries_checked = 0;
  int curvature_entries_matched = 0;
  double max_curvature_diff = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> flagged;  // excluded or repaired entries
};
// which = 1: quaternionic Kaehler table against the frame-assembled metric.
// which = 2: Spin(7) table against its own parameterization (the printed
// vertical coefficients disagree with the Spin(7) construction; the check
// reports this), plus the FD comparison of the transcribed curvature 2-forms
// against the true Spin(7) metric in its orthonormal coframe.
AppendixCrosscheck appendix_crosscheck(int which, double a, int nsamples, uint64_t seed);

}  // namespace qcv

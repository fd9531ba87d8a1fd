#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcverify/kform.hpp"

namespace qcv {

// Coordinate-level metric: a plain evaluator g_ij(v), its admissible sampling
// region and (for the transcription cross-checks) an optional analytic table.
struct CoordMetric {
  std::string name;
  int dim = 0;
  Signature sig;  // diag used for the orthonormalization bookkeeping
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> eval;
  std::function<bool(const Eigen::VectorXd&)> admissible;
  Eigen::VectorXd sample_lo, sample_hi;
  // optional 4-form in coordinates for holonomy stabilizer checks
  std::function<std::vector<std::pair<IndexMask, double>>(const Eigen::VectorXd&)> four_form;

  Eigen::VectorXd random_point(std::mt19937_64& rng) const;
};

// 4th-order central differences with one Richardson level; h per coordinate.
struct FdOptions {
  double h = 1e-3;
  bool richardson = true;
};

// Christoffel symbols Gamma^k_{ij} at v (k outer index).
std::vector<Eigen::MatrixXd> christoffel_fd(const CoordMetric& m, const Eigen::VectorXd& v,
                                            const FdOptions& opt = {});

struct CurvatureSample {
  Eigen::VectorXd point;
  Eigen::MatrixXd frame;      // rows = orthonormal frame vectors (coordinates)
  std::vector<int> frame_sign;  // +1/-1 normalization of each frame vector
  std::vector<double> riemann;  // R_{abcd} in the orthonormal frame
  Eigen::MatrixXd ricci;        // coordinate Ricci
  Eigen::MatrixXd ricci_frame;  // frame Ricci
  double scalar = 0;
  double sym_residual = 0;      // pair-symmetry violation
  double bianchi_residual = 0;  // first Bianchi identity violation
  double r(int a, int b, int c, int d) const {
    int n = int(frame.rows());
    return riemann[((size_t(a) * n + b) * n + c) * n + d];
  }
};

CurvatureSample riemann_ricci_fd(const CoordMetric& m, const Eigen::VectorXd& v,
                                 const FdOptions& opt = {});

// least-squares Einstein constant over samples and the normalized remainder
struct EinsteinFit {
  double lambda = 0;
  double residual = 0;  // |Ric - lambda g| / |g|, aggregated over samples
  double max_ricci = 0;
  int samples = 0;
};
EinsteinFit einstein_fit(const CoordMetric& m, int nsamples, uint64_t seed,
                         const FdOptions& opt = {});

// max |Ric_{ij}| over random admissible samples (Ricci-flatness check)
double max_ricci_flat_residual(const CoordMetric& m, int nsamples, uint64_t seed,
                               const FdOptions& opt = {});

struct HolonomyReport {
  int span_rank = 0;            // rank of the curvature-operator span (per point, min)
  int closure_dim = 0;          // bracket closure of the span (per point, consistent)
  bool closure_consistent = false;
  bool rank_stable = false;     // singular-value gap was clear
  double annihilator_residual = -1;  // max |A . Psi|/|Psi| over generators, -1 if no form
  int points = 0;
};

// Curvature span and Ambrose-Singer-style bracket closure at several sample
// points (a numerical surrogate for the holonomy algebra, not a proof); when
// the metric carries a 4-form, every closure generator is tested against its
// infinitesimal stabilizer.
HolonomyReport holonomy_estimate(const CoordMetric& m, int npoints, uint64_t seed,
                                 const FdOptions& opt = {});

// ---------------------------------------------------------------------------
// transcribed coordinate tables
// ---------------------------------------------------------------------------

// the 8-dimensional quaternionic Kaehler metric table in coordinates
// {t,x,y,z,x5,x6,x7,u}
CoordMetric appendix1_table(double a);
// the 8-dimensional Spin(7) metric table in the same coordinates, transcribed
// verbatim (its vertical coefficients disagree with the frame construction;
// see appendix_crosscheck)
CoordMetric appendix2_table(double a);

}  // namespace qcv

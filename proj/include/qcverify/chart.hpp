#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "qcverify/lie_frame.hpp"

namespace qcv {

// Closed-form coordinate realization of a coframe: E(v) has row i holding the
// components of e^i in dv^1..dv^n at the point v.
struct CoordChart {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> coframe;
  // Box used when drawing random sample points (componentwise lo/hi).
  Eigen::VectorXd sample_lo, sample_hi;

  Eigen::MatrixXd eval(const Eigen::VectorXd& v) const { return coframe(v); }
  bool singular_at(const Eigen::VectorXd& v, double tol = 1e-8) const;
};

struct ChartConsistency {
  bool pass = false;
  bool singular = false;
  double max_residual = 0.0;  // max |d_FD e^i - d_struct e^i| over components
};

// Compares the finite-difference exterior derivative of the realized coframe
// with the structure-constant derivative at v. Central differences with
// h = 1e-5 * max(1,|v|) and one Richardson level.
ChartConsistency chart_consistency(const LieFrame& L, const CoordChart& C,
                                   const Eigen::VectorXd& v, double tol = 1e-8);

}  // namespace qcv

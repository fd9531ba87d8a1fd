#include "qcverify/chart.hpp"

#include <cmath>

namespace qcv {

bool CoordChart::singular_at(const Eigen::VectorXd& v, double tol) const {
  Eigen::MatrixXd E = eval(v);
  double scale = E.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return std::fabs(E.determinant()) < tol * std::pow(scale, dim);
}

namespace {

// FD of the coframe matrix entries: dE[i][mu][nu] ~= d(E_{i nu})/d v^mu,
// 2nd-order central at step h combined with h/2 by one Richardson level.
std::vector<Eigen::MatrixXd> coframe_jacobian(const CoordChart& C, const Eigen::VectorXd& v,
                                              double h) {
  int n = C.dim;
  auto diff_at = [&](double step) {
    std::vector<Eigen::MatrixXd> d(n, Eigen::MatrixXd::Zero(n, n));
    for (int mu = 0; mu < n; ++mu) {
      Eigen::VectorXd vp = v, vm = v;
      vp[mu] += step;
      vm[mu] -= step;
      Eigen::MatrixXd diff = (C.eval(vp) - C.eval(vm)) / (2 * step);
      d[mu] = diff;  // d[mu](i,nu) = d E_{i nu} / d v^mu
    }
    return d;
  };
  auto dh = diff_at(h);
  auto dh2 = diff_at(h / 2);
  std::vector<Eigen::MatrixXd> out(n);
  for (int mu = 0; mu < n; ++mu) out[mu] = (4.0 * dh2[mu] - dh[mu]) / 3.0;
  return out;
}

}  // namespace

ChartConsistency chart_consistency(const LieFrame& L, const CoordChart& C,
                                   const Eigen::VectorXd& v, double tol) {
  if (C.dim != L.dim()) throw std::invalid_argument("chart_consistency: dimension mismatch");
  ChartConsistency res;
  if (C.singular_at(v)) {
    res.singular = true;
    return res;
  }
  int n = C.dim;
  Eigen::MatrixXd E = C.eval(v);
  double h = 1e-5 * std::max(1.0, v.norm());
  auto dE = coframe_jacobian(C, v, h);

  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    // FD: (d e^i)_{mu nu} = d_mu E_{i nu} - d_nu E_{i mu}
    // structure: pull the exact 2-form de^i back through the coframe.
    const KForm& di = L.d_basis(i);
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        double fd = dE[mu](i - 1, nu) - dE[nu](i - 1, mu);
        double st = 0.0;
        for (auto& [m, coef] : di.terms()) {
          int a = -1, b = -1;
          for (int bit = 0; bit < n; ++bit)
            if (m & (IndexMask(1) << bit)) (a < 0 ? a : b) = bit;
          st += coef.value() * (E(a, mu) * E(b, nu) - E(a, nu) * E(b, mu));
        }
        worst = std::max(worst, std::fabs(fd - st));
      }
  }
  res.max_residual = worst;
  res.pass = worst <= tol;
  return res;
}

}  // namespace qcv

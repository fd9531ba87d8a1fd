#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcv {

// The evolution systems behind the special-holonomy constructions. The 4D
// instanton systems evolve (f1,f2,f3) with an external time gauge f(t); the
// cohomogeneity-one systems in dimension 7+1 carry their own f.
enum class OdeId {
  QK_ISO,     // f f'' - f'^2 + 2 tau f = 0, h = f'/2, state (f, h)
  QK_GEN7,    // four-function quaternionic Kaehler flow, state (f, f1, f2, f3)
  SPIN7_GEN,  // four-function Spin(7) flow, state (f, f1, f2, f3)
  SPIN7_RED,  // 3 f f'' + f'^2 - 18 tau f = 0, h = f'/6, state (f, h)
  HK4_SU2,
  HK4_SU11,
  HK4_HEIS,
  HK4_E2,
  HK4_E11,
  HPK4_SU2,
  HPK4_SU11,
  HPK4_HEIS,
  HPK4_E2,
  HPK4_E11,
};

std::string ode_name(OdeId id);
const std::vector<OdeId>& all_ode_ids();

struct OdeSystem {
  OdeId id;
  double tau = 0.0;

  int state_dim() const;
  bool needs_gauge() const;  // 4D instanton systems take f(t) externally
  // product-equation signs: d(f_j f_k)/dt = eps_i * f * f_i, (i,j,k) cyclic
  std::array<int, 3> eps() const;

  // explicit right-hand side; gauge ignored for the self-contained systems
  void rhs(const double* y, double gauge_f, double* dy) const;
  // max violation of the defining product-form equations at a state with
  // externally supplied d/dt values
  double residual(const double* y, const double* dy, double gauge_f) const;
};

struct FamilyPoint {
  double x = 0;                       // family parameter
  double dt_dx = 1;                   // time reparametrization weight
  std::vector<double> y;              // state (layout per system)
  std::vector<double> dy;             // d/dt of the state
  double f = 0;                       // gauge value (4D) or leading state (7D)
};

// A closed-form solution family: evaluators in the auxiliary variable x with
// the chain rule carried through dt/dx, plus its validity domain.
struct ClosedFormFamily {
  std::string name;
  OdeId system;
  double tau = 0.0;
  std::map<std::string, double> params;
  double x_lo = 0, x_hi = 1;  // recommended open sampling interval
  std::function<bool(double)> in_domain;
  std::function<FamilyPoint(double)> eval_fn;

  FamilyPoint eval(double x) const;  // throws std::domain_error outside domain
  double residual(double x) const;   // system residual of the family at x
};

// Every paper solution family with its default parameters.
std::vector<ClosedFormFamily> builtin_families();
ClosedFormFamily make_family(const std::string& name,
                             const std::map<std::string, double>& params);
std::vector<std::string> family_names();

// Differential-ideal residual of a dimension-7 family (quaternionic Kaehler
// flows): max over cyclic (i,j,k) of
// |f (f_j f_k)' - f' f_j f_k + 2 f1 f2 f3 - 2 f_j f_k (f_j + f_k)
//   + 2 tau f (f_j + f_k) - 2 tau f f_i|.
double ideal_residual(const ClosedFormFamily& fam, double x);
// The single-function form f (f f'' - f'^2 + 2 tau f)/f' of the same
// obstruction for the isotropic family.
double iso_ideal_residual(const ClosedFormFamily& fam, double x);

// classical RK4 with adaptive step halving (local error <= tol per step)
struct IntegrateResult {
  bool ok = false;
  std::string error;
  double last_x = 0;
  std::vector<std::vector<double>> at_checkpoints;
};
IntegrateResult integrate_ode(const OdeSystem& sys, std::vector<double> y0, double x0,
                              const std::vector<double>& checkpoints,
                              std::function<double(double)> dt_dx,
                              std::function<double(double)> gauge_f, double tol = 1e-10);

// integrate from the family's state at x0 and report the worst deviation from
// the closed form over n checkpoints in [x0, x1]
double oracle_compare(const ClosedFormFamily& fam, double x0, double x1, int n,
                      double tol = 1e-10);

// observed convergence order of the fixed-step integrator against the family
double rk4_order_estimate(const ClosedFormFamily& fam, double x0, double x1, int base_steps);

// the two equivalent SU(2) right-hand sides (product form and the rational
// 'BGPP' form); both residuals must vanish together on solution states
double bgpp_residual(const double* y, const double* dy, double gauge_f);

}  // namespace qcv

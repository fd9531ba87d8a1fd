// Batch driver: every verification of the library exposed as a subcommand
// with machine-readable reports. Exit 0 when all verdicts pass, 1 when any
// fail, 2 on bad arguments.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qcverify/verify.hpp"

namespace {

struct CommonOpts {
  std::string metric;
  double a = 1.0, a1 = 0.0, a2 = 0.0, a3 = 0.0, C = 0.0, tau = 0.0;
  bool has_a = false, has_a1 = false, has_a2 = false, has_a3 = false, has_C = false,
       has_tau = false;
  int samples = 20;
  uint64_t seed = 1;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";

  qcv::ParamMap params() const {
    qcv::ParamMap p;
    if (has_a) p["a"] = a;
    if (has_a1) p["a1"] = a1;
    if (has_a2) p["a2"] = a2;
    if (has_a3) p["a3"] = a3;
    if (has_C) p["C"] = C;
    if (has_tau) p["tau"] = tau;
    return p;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_metric = true) {
  if (with_metric) cmd->add_option("--metric", o.metric, "metric or family name");
  cmd->add_option("--a", o.a)->each([&o](const std::string&) { o.has_a = true; });
  cmd->add_option("--a1", o.a1)->each([&o](const std::string&) { o.has_a1 = true; });
  cmd->add_option("--a2", o.a2)->each([&o](const std::string&) { o.has_a2 = true; });
  cmd->add_option("--a3", o.a3)->each([&o](const std::string&) { o.has_a3 = true; });
  cmd->add_option("--C", o.C)->each([&o](const std::string&) { o.has_C = true; });
  cmd->add_option("--tau", o.tau)->each([&o](const std::string&) { o.has_tau = true; });
  cmd->add_option("--samples", o.samples, "sample count");
  cmd->add_option("--seed", o.seed, "random seed (reports are reproducible per seed)");
  cmd->add_option("--tol", o.tol, "pass tolerance");
  cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
  cmd->add_option("--format", o.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

int emit(const qcv::Report& rep, const CommonOpts& o) {
  std::string body = (o.format == "text") ? rep.to_text() : rep.to_json();
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << body << "\n";
  } else {
    std::cout << body << "\n";
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for left-invariant qc structures and the "
               "special-holonomy metrics built over them"};
  app.require_subcommand(0, 1);
  bool list = false;
  std::string algebra_path;
  app.add_flag("--list", list, "enumerate registry algebras, metric families, ode systems");
  app.add_option("--algebra", algebra_path, "user algebra file (d e^k = sum q e^i e^j lines)");

  CommonOpts o;
  int example_no = 1;
  int which_appendix = 1;
  std::string family;

  auto* cmd_example = app.add_subcommand("verify-example", "full pipeline on one example");
  cmd_example->add_option("n", example_no, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  add_common(cmd_example, o, false);

  auto* cmd_heis = app.add_subcommand("verify-heisenberg", "flat model checks");
  add_common(cmd_heis, o, false);

  auto* cmd_jac = app.add_subcommand("jacobi-all", "d^2 == 0 on every registry algebra");
  add_common(cmd_jac, o, false);

  auto* cmd_build = app.add_subcommand("build-metric", "construct a metric family");
  add_common(cmd_build, o);

  auto* cmd_closed = app.add_subcommand("check-closed", "closedness of the fundamental forms");
  add_common(cmd_closed, o);

  auto* cmd_einstein = app.add_subcommand("check-einstein", "least-squares Einstein constant");
  add_common(cmd_einstein, o);

  auto* cmd_ricci = app.add_subcommand("check-ricci-flat", "max |Ric| over random samples");
  add_common(cmd_ricci, o);

  auto* cmd_hol = app.add_subcommand("holonomy", "curvature span and bracket closure");
  add_common(cmd_hol, o);

  auto* cmd_ode = app.add_subcommand("solve-ode", "integrate a family against itself");
  cmd_ode->add_option("--family", family, "solution family name")->required();
  add_common(cmd_ode, o, false);

  auto* cmd_fam = app.add_subcommand("family-residuals", "closed-form residual sweep");
  cmd_fam->add_option("--family", family, "one family (default: all)");
  add_common(cmd_fam, o, false);

  auto* cmd_app = app.add_subcommand("appendix-crosscheck", "table transcription checks");
  cmd_app->add_option("--which", which_appendix, "1 or 2")->check(CLI::Range(1, 2));
  add_common(cmd_app, o, false);

  auto* cmd_all = app.add_subcommand("report-all", "the full verification battery");
  add_common(cmd_all, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list) {
      std::cout << qcv::registry_listing();
      return 0;
    }
    if (cmd_example->parsed()) return emit(qcv::verify_example(example_no), o);
    if (cmd_heis->parsed()) return emit(qcv::verify_heisenberg(), o);
    if (cmd_jac->parsed()) return emit(qcv::jacobi_all(algebra_path), o);
    if (cmd_build->parsed()) return emit(qcv::build_metric_cmd(o.metric, o.params(), o.samples, o.seed), o);
    if (cmd_closed->parsed())
      return emit(qcv::check_closed(o.metric, o.params(), o.samples, o.seed, o.tol), o);
    if (cmd_einstein->parsed())
      return emit(qcv::check_einstein(o.metric, o.params(), o.samples, o.seed), o);
    if (cmd_ricci->parsed())
      return emit(qcv::check_ricci_flat(o.metric, o.params(), o.samples, o.seed,
                                        o.tol == 1e-8 ? 1e-6 : o.tol),
                  o);
    if (cmd_hol->parsed())
      return emit(qcv::holonomy_cmd(o.metric, o.params(), std::max(3, o.samples / 6), o.seed), o);
    if (cmd_ode->parsed()) return emit(qcv::solve_ode_cmd(family, o.params(), o.samples, o.seed), o);
    if (cmd_fam->parsed()) return emit(qcv::family_residuals_cmd(family, std::max(o.samples, 100)), o);
    if (cmd_app->parsed())
      return emit(qcv::appendix_crosscheck_cmd(which_appendix, o.has_a ? o.a : 1.0, o.samples, o.seed), o);
    if (cmd_all->parsed()) return emit(qcv::report_all(o.seed), o);
    std::cout << app.help();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

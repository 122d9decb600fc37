// scdc — spatially coupled (l,r)-regular LDPC/BEC potential toolkit.
//
// Subcommands: threshold, de-run, convexity, kernel, verify, make-profile.
// Every run prints a single JSON record {command, params, outputs,
// wall_time_ms, tool_version} to stdout; artifacts go to files named from
// --out-prefix. Artifact files are byte-deterministic for identical flags and
// seed; wall_time_ms in the stdout record is the only non-deterministic field.
//
// Exit codes: 0 success, 1 property failure (verify), 2 input/precondition
// error, 3 non-convergence, 4 internal-consistency violation.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scdc/desolve.hpp"
#include "scdc/ensemble.hpp"
#include "scdc/errors.hpp"
#include "scdc/kernel.hpp"
#include "scdc/parallel.hpp"
#include "scdc/potential.hpp"
#include "scdc/profile_io.hpp"
#include "scdc/transport.hpp"
#include "scdc/verify.hpp"

using json = nlohmann::ordered_json;
using namespace scdc;

namespace {

constexpr const char* kToolVersion = "scdc 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitInconsistency = 4;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void emit_record(const std::string& command, const json& params, const json& outputs,
                 const Stopwatch& sw) {
  json rec;
  rec["command"] = command;
  rec["params"] = params;
  rec["outputs"] = outputs;
  rec["wall_time_ms"] = sw.ms();
  rec["tool_version"] = kToolVersion;
  std::cout << rec.dump(2) << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

Grid make_grid(double z_max, double h) {
  Grid g;
  g.z_min = -z_max;
  g.z_max = z_max;
  g.n = static_cast<int>(std::lround(2.0 * z_max / h)) + 1;
  return g;
}

Profile initial_profile(const std::string& kind, const Grid& grid, double width, double p_map) {
  if (kind == "tanh") return pin(make_tanh_front(grid, 0.0, width, p_map), p_map);
  if (kind == "logistic") return pin(make_logistic(grid, 0.0, width, p_map), p_map);
  if (kind == "step") return make_step(grid, 0.0, p_map);
  throw std::invalid_argument("unknown init kind '" + kind + "'");
}

int cmd_threshold(int l, int r, int threads, const Stopwatch& sw) {
  json params{{"l", l}, {"r", r}, {"threads", threads}};
  ThresholdResult th = map_threshold(l, r);
  Ensemble ens(l, r, th.epsilon_map);
  json outputs{{"epsilon_map", th.epsilon_map},
               {"p_map", th.p_map},
               {"residual", th.residual},
               {"ws_residual", std::fabs(single_potential(ens, th.p_map))},
               {"ws_deriv_residual", std::fabs(single_potential_deriv(ens, th.p_map))}};
  emit_record("threshold", params, outputs, sw);
  return kExitOk;
}

struct DeRunOpts {
  int l = 3, r = 6;
  double epsilon = -1.0;  // default: eps_map
  std::string mode = "continuum";
  int max_iters = 200000;
  double tol = 1e-10;
  double damping = 0.5;
  bool no_pin = false;
  std::string init = "tanh";
  double init_width = 1.0;
  double z_max = 10.0;
  double h = 0.01;
  int big_l = 100;
  int w = 3;
  std::string x0 = "ones";
  std::string profile_out;
  std::string trace_out;
  int threads = 0;
};

int cmd_de(const DeRunOpts& o, const Stopwatch& sw) {
  ThresholdResult th = map_threshold(o.l, o.r);
  double eps = o.epsilon < 0.0 ? th.epsilon_map : o.epsilon;
  Ensemble ens(o.l, o.r, eps);

  json params{{"l", o.l},       {"r", o.r},           {"epsilon", eps},
              {"mode", o.mode}, {"max_iters", o.max_iters}, {"tol", o.tol},
              {"damping", o.damping}, {"pin_each_iter", !o.no_pin}, {"init", o.init},
              {"init_width", o.init_width}, {"z_max", o.z_max}, {"h", o.h},
              {"L", o.big_l},   {"w", o.w},           {"x0", o.x0},
              {"profile_out", o.profile_out}, {"trace_out", o.trace_out},
              {"threads", o.threads}};

  SolveConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.tol;
  cfg.damping = o.damping;
  cfg.pin_each_iter = !o.no_pin;

  json outputs;
  bool converged = false;

  if (o.mode == "continuum") {
    // Reference value the tails saturate to: p_map at eps_map, otherwise the
    // largest nontrivial uncoupled fixed point at this epsilon.
    double p_ref = th.p_map;
    if (o.epsilon >= 0.0 && std::fabs(eps - th.epsilon_map) > 1e-12) {
      auto fps = uncoupled_de_fixed_points(ens);
      if (fps.size() < 2)
        throw std::domain_error("no nontrivial uncoupled fixed point at this epsilon");
      p_ref = fps.back();
    }
    Grid grid = make_grid(o.z_max, o.h);
    Profile start = initial_profile(o.init, grid, o.init_width, p_ref);
    ContinuumSolveResult res = continuum_de_solve(ens, start, cfg, p_ref);
    converged = res.converged;
    Residual check = de_residual(ens, res.profile);
    outputs = json{{"iterations", res.iterations},
                   {"final_residual", res.final_residual},
                   {"converged", res.converged},
                   {"de_residual_sup", check.sup_norm},
                   {"de_residual_l2", check.l2_norm},
                   {"p_ref", p_ref}};
    if (!o.profile_out.empty()) write_profile_csv(res.profile, o.profile_out);
    if (!o.trace_out.empty()) {
      std::string csv = "iter,w_total\n";
      for (std::size_t i = 0; i < res.potential_trace.size(); ++i)
        csv += std::to_string(i + 1) + "," + format_g17(res.potential_trace[i]) + "\n";
      write_text(o.trace_out, csv);
    }
  } else if (o.mode == "discrete") {
    CoupledSystem sys(ens, o.big_l, o.w);
    int n = 2 * o.big_l + 1;
    std::vector<double> x0(static_cast<std::size_t>(n), 1.0);
    if (o.x0 == "zeros") {
      std::fill(x0.begin(), x0.end(), 0.0);
    } else if (o.x0 == "seeded") {
      for (int i = 0; i < o.w; ++i) {
        x0[static_cast<std::size_t>(i)] = 0.0;
        x0[static_cast<std::size_t>(n - 1 - i)] = 0.0;
      }
    } else if (o.x0 != "ones") {
      throw std::invalid_argument("unknown x0 kind '" + o.x0 + "'");
    }
    DiscreteSolveResult res = discrete_de_solve(sys, x0, cfg);
    converged = res.converged;
    double interior_max = 0.0;
    for (double xi : res.x) interior_max = std::max(interior_max, xi);
    outputs = json{{"iterations", res.iterations},
                   {"final_residual", res.final_residual},
                   {"converged", res.converged},
                   {"interior_max", interior_max}};
    if (!o.profile_out.empty()) {
      std::string csv = "position,x\n";
      for (int z = -o.big_l; z <= o.big_l; ++z)
        csv += std::to_string(z) + "," + format_g17(res.x[static_cast<std::size_t>(z + o.big_l)]) +
               "\n";
      write_text(o.profile_out, csv);
    }
    if (!o.trace_out.empty()) {
      std::string csv = "iter,w_total\n";
      for (std::size_t i = 0; i < res.potential_trace.size(); ++i)
        csv += std::to_string(i + 1) + "," + format_g17(res.potential_trace[i]) + "\n";
      write_text(o.trace_out, csv);
    }
  } else {
    throw std::invalid_argument("mode must be 'continuum' or 'discrete'");
  }

  emit_record("de-run", params, outputs, sw);
  return converged ? kExitOk : kExitNonConvergence;
}

struct ConvexityOpts {
  std::string profile_a, profile_b;
  int l = 3, r = 6;
  int m = 2000;
  int n_lambdas = 21;
  std::string out_prefix;
  int threads = 0;
};

int cmd_convexity(const ConvexityOpts& o, const Stopwatch& sw) {
  json params{{"profile_a", o.profile_a}, {"profile_b", o.profile_b}, {"l", o.l},
              {"r", o.r},                 {"m", o.m},                 {"n_lambdas", o.n_lambdas},
              {"out_prefix", o.out_prefix}, {"threads", o.threads}};

  Profile pa = read_profile_csv(o.profile_a);
  Profile pb = read_profile_csv(o.profile_b);
  if (detect_monotone(pa.values) == Monotone::general ||
      detect_monotone(pb.values) == Monotone::general)
    throw NotMonotone("convexity: both profiles must be increasing");
  if (std::fabs(pa.right_tail - pb.right_tail) > 1e-9)
    throw std::invalid_argument("convexity: profiles disagree on p_map");
  double p_map = pa.right_tail;

  ThresholdResult th = map_threshold(o.l, o.r);
  Ensemble ens(o.l, o.r, th.epsilon_map);

  InterpolationPath path;
  path.p0 = pa;
  path.p1 = pb;
  path.m = o.m;
  path.lambdas = InterpolationPath::uniform_lambdas(o.n_lambdas);
  ConvexityReport rep = convexity_probe(ens, path, p_map);
  double floor = convexity_noise_floor(ens, pa, o.m, o.n_lambdas, p_map);

  double chord_excess = -1e300;
  double w0 = rep.values.front().w_total, w1 = rep.values.back().w_total;
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
    chord_excess = std::max(chord_excess, rep.values[i].w_total -
                                              ((1.0 - rep.lambdas[i]) * w0 + rep.lambdas[i] * w1));

  if (!o.out_prefix.empty()) {
    std::string csv = "lambda,w_single,w_int,w_total\n";
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
      csv += format_g17(rep.lambdas[i]) + "," + format_g17(rep.values[i].w_single) + "," +
             format_g17(rep.values[i].w_int) + "," + format_g17(rep.values[i].w_total) + "\n";
    write_text(o.out_prefix + "_path.csv", csv);
    json summary{{"min_second_difference", rep.min_second_difference},
                 {"single_linearity_defect", rep.single_linearity_defect},
                 {"noise_floor", floor},
                 {"chord_excess", chord_excess}};
    write_text(o.out_prefix + "_summary.json", summary.dump(2) + "\n");
  }

  json outputs{{"min_second_difference", rep.min_second_difference},
               {"single_linearity_defect", rep.single_linearity_defect},
               {"noise_floor", floor},
               {"chord_excess", chord_excess}};
  emit_record("convexity", params, outputs, sw);
  return chord_excess <= 1e-5 ? kExitOk : kExitInconsistency;
}

struct KernelOpts {
  int l = 2;
  std::string mode = "point";
  std::vector<double> point;
  int n_sub = 64;
  int scan_n = 20;
  double d_max = 1.5;
  std::string out_prefix;
  int threads = 0;
};

int cmd_kernel(const KernelOpts& o, const Stopwatch& sw) {
  json params{{"l", o.l},         {"mode", o.mode},   {"point", o.point},
              {"n_sub", o.n_sub}, {"scan_n", o.scan_n}, {"d_max", o.d_max},
              {"out_prefix", o.out_prefix}, {"threads", o.threads}};
  json outputs;

  if (o.mode == "point") {
    KernelPoint pt(o.l, o.point);
    double oracle = kernel_value(pt);
    double midpoint = kernel_quadrature(pt, o.n_sub);
    double general = kernel_general(pt);
    outputs["oracle"] = oracle;
    outputs["midpoint"] = midpoint;
    outputs["midpoint_delta"] = midpoint - oracle;
    outputs["general_formula"] = general;
    outputs["general_delta"] = general - oracle;
    if (o.l == 2) {
      double closed = kernel_closed_l2(pt.d[0]);
      outputs["closed_form"] = closed;
      outputs["closed_delta"] = closed - oracle;
    } else if (o.l == 3) {
      double closed = kernel_closed_l3(pt.d[0], pt.d[1]);
      outputs["closed_form"] = closed;
      outputs["closed_delta"] = closed - oracle;
    }
  } else if (o.mode == "hessian") {
    KernelPoint pt(o.l, o.point);
    HessianReport hn = kernel_hessian(pt, HessianMode::numeric);
    outputs["numeric_matrix"] = hn.matrix;
    outputs["numeric_eigenvalues"] = hn.eigenvalues;
    outputs["min_eigenvalue"] = hn.min_eigenvalue;
    if (o.l == 3 && pt.d[1] < 1.0) {
      HessianReport ha = kernel_hessian(pt, HessianMode::analytic_l3);
      outputs["analytic_matrix"] = ha.matrix;
      outputs["analytic_eigenvalues"] = ha.eigenvalues;
    }
  } else if (o.mode == "scan") {
    ScanReport rep = kernel_convexity_scan(o.l, o.scan_n, o.d_max, 1e-6, o.threads);
    outputs["global_min_eigenvalue"] = rep.global_min_eig;
    outputs["strict_radius"] = rep.strict_radius;
    outputs["n_points"] = rep.points.size();
    outputs["n_strictly_positive"] = rep.n_strictly_positive;
    if (!o.out_prefix.empty()) {
      std::string header;
      for (int i = 2; i <= o.l; ++i) header += "d1" + std::to_string(i) + ",";
      std::string csv = header + "min_eig\n";
      for (const auto& p : rep.points) {
        for (double di : p.d) csv += format_g17(di) + ",";
        csv += format_g17(p.min_eig) + "\n";
      }
      write_text(o.out_prefix + "_scan.csv", csv);
    }
  } else {
    throw std::invalid_argument("kernel mode must be point, hessian, or scan");
  }

  // The printed general formula does not reproduce the oracle beyond l=2;
  // surface that discrepancy wherever the kernel command runs.
  GeneralFormulaReport gen = kernel_general_report(o.l, 100, 20240901u);
  outputs["general_formula_report"] = gen.to_text();

  emit_record("kernel", params, outputs, sw);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_prefix,
               int threads, const Stopwatch& sw) {
  json params{{"suite", suite}, {"seed", seed}, {"out_prefix", out_prefix}, {"threads", threads}};
  VerifyReport rep = run_verify(suite, seed, threads);
  std::string text = rep.to_text();
  if (!out_prefix.empty()) write_text(out_prefix + "_report.txt", text);
  std::cerr << text;

  json props = json::array();
  for (const auto& r : rep.results)
    props.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  json outputs{{"all_pass", rep.all_pass()}, {"properties", props}};
  emit_record("verify", params, outputs, sw);
  return rep.all_pass() ? kExitOk : kExitPropertyFailure;
}

struct MakeProfileOpts {
  std::string kind = "logistic";
  double center = 0.0;
  double scale = 1.0;
  int l = 3, r = 6;
  double z_max = 10.0;
  double h = 0.01;
  std::string out;
  int threads = 0;
};

int cmd_make_profile(const MakeProfileOpts& o, const Stopwatch& sw) {
  json params{{"kind", o.kind}, {"center", o.center}, {"scale", o.scale}, {"l", o.l},
              {"r", o.r},       {"z_max", o.z_max},   {"h", o.h},         {"out", o.out},
              {"threads", o.threads}};
  ThresholdResult th = map_threshold(o.l, o.r);
  Grid grid = make_grid(o.z_max, o.h);
  Profile pr;
  if (o.kind == "logistic")
    pr = make_logistic(grid, o.center, o.scale, th.p_map);
  else if (o.kind == "tanh")
    pr = make_tanh_front(grid, o.center, o.scale, th.p_map);
  else if (o.kind == "step")
    pr = make_step(grid, o.center, th.p_map);
  else
    throw std::invalid_argument("kind must be logistic, tanh, or step");
  write_profile_csv(pr, o.out);
  json outputs{{"p_map", th.p_map}, {"epsilon_map", th.epsilon_map}, {"n", grid.n}};
  emit_record("make-profile", params, outputs, sw);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Stopwatch sw;
  CLI::App app{"spatially coupled (l,r)-regular LDPC/BEC potential toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (default: SCDC_THREADS or hardware)");

  // threshold
  auto* c_th = app.add_subcommand("threshold", "MAP threshold from the equal-minima condition");
  int th_l = 3, th_r = 6;
  c_th->add_option("--l", th_l, "variable-node degree")->required();
  c_th->add_option("--r", th_r, "check-node degree")->required();

  // de-run
  auto* c_de = app.add_subcommand("de-run", "density evolution solver (discrete or continuum)");
  DeRunOpts de;
  c_de->add_option("--l", de.l)->required();
  c_de->add_option("--r", de.r)->required();
  c_de->add_option("--epsilon", de.epsilon, "erasure probability (default: eps_map)");
  c_de->add_option("--mode", de.mode, "continuum|discrete");
  c_de->add_option("--max-iters", de.max_iters);
  c_de->add_option("--tol", de.tol);
  c_de->add_option("--damping", de.damping);
  c_de->add_flag("--no-pin", de.no_pin, "continuum: do not re-pin each iteration");
  c_de->add_option("--init", de.init, "continuum start: tanh|logistic|step");
  c_de->add_option("--init-width", de.init_width);
  c_de->add_option("--z-max", de.z_max);
  c_de->add_option("--h", de.h);
  c_de->add_option("--L", de.big_l, "discrete: half-length");
  c_de->add_option("--w", de.w, "discrete: coupling window");
  c_de->add_option("--x0", de.x0, "discrete start: ones|zeros|seeded");
  c_de->add_option("--profile-out", de.profile_out);
  c_de->add_option("--trace-out", de.trace_out);

  // convexity
  auto* c_cx = app.add_subcommand("convexity", "displacement-convexity probe between two profiles");
  ConvexityOpts cx;
  c_cx->add_option("--profile-a", cx.profile_a)->required();
  c_cx->add_option("--profile-b", cx.profile_b)->required();
  c_cx->add_option("--l", cx.l)->required();
  c_cx->add_option("--r", cx.r)->required();
  c_cx->add_option("--m", cx.m, "quantile resolution");
  c_cx->add_option("--n-lambdas", cx.n_lambdas);
  c_cx->add_option("--out-prefix", cx.out_prefix);

  // kernel
  auto* c_k = app.add_subcommand("kernel", "interaction kernel: point values, Hessians, scans");
  KernelOpts ko;
  c_k->add_option("--l", ko.l)->required();
  c_k->add_option("--mode", ko.mode, "point|hessian|scan");
  c_k->add_option("--point", ko.point, "l-1 sector distances")->expected(-1);
  c_k->add_option("--n-sub", ko.n_sub, "midpoint points per axis");
  c_k->add_option("--scan", ko.scan_n, "lattice points per axis");
  c_k->add_option("--d-max", ko.d_max);
  c_k->add_option("--out-prefix", ko.out_prefix);

  // verify
  auto* c_v = app.add_subcommand("verify", "run the property batteries");
  std::string v_suite = "lemmas";
  std::uint64_t v_seed = 42;
  std::string v_prefix;
  c_v->add_option("--suite", v_suite, "lemmas|all");
  c_v->add_option("--seed", v_seed);
  c_v->add_option("--out-prefix", v_prefix);

  // make-profile
  auto* c_mp = app.add_subcommand("make-profile", "write a reference profile CSV");
  MakeProfileOpts mp;
  c_mp->add_option("--kind", mp.kind, "logistic|tanh|step");
  c_mp->add_option("--center", mp.center);
  c_mp->add_option("--scale", mp.scale);
  c_mp->add_option("--l", mp.l)->required();
  c_mp->add_option("--r", mp.r)->required();
  c_mp->add_option("--z-max", mp.z_max);
  c_mp->add_option("--h", mp.h);
  c_mp->add_option("--out", mp.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_th) return cmd_threshold(th_l, th_r, threads, sw);
    if (*c_de) {
      de.threads = threads;
      return cmd_de(de, sw);
    }
    if (*c_cx) {
      cx.threads = threads;
      return cmd_convexity(cx, sw);
    }
    if (*c_k) {
      ko.threads = threads;
      return cmd_kernel(ko, sw);
    }
    if (*c_v) return cmd_verify(v_suite, v_seed, v_prefix, threads, sw);
    if (*c_mp) {
      mp.threads = threads;
      return cmd_make_profile(mp, sw);
    }
  } catch (const SolverDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const NoNontrivialRoot& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const TailMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotMonotone& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NoCrossing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SectorViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistency;
  }
  return kExitInputError;
}

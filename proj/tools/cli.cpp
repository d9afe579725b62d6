#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "curveflow/comparison.hpp"
#include "curveflow/error.hpp"
#include "curveflow/experiments.hpp"
#include "curveflow/generators.hpp"
#include "curveflow/gradient_flows.hpp"
#include "curveflow/io.hpp"
#include "curveflow/legendrian.hpp"

namespace curveflow::cli {

namespace {

using nlohmann::json;

struct GeneratorSpec {
  std::string name = "lemniscate";
  double a = 1, b = 0.5, r = 1, ratio = 1, eps = 0.1;
  int k = 3;
  long n = 256;
  bool rightmost_at_origin = false;
};

struct ReaperSpec {
  double C0 = 1, tau0 = 0.1;
  std::optional<double> t_offset;  // defaults to -tau0 / 2
  bool matched = false;            // C0 = max |y| of the initial curve / tau0
};

struct RunSpec {
  GeneratorSpec generator;
  std::string input;  // curve file; replaces the generator when set
  std::string flow = "csf";
  FlowConfig config;
  std::string output;
  std::vector<std::string> monitors;
  double snapshot_dt = 0.002;
  std::vector<double> times;  // explicit output times; replaces snapshot_dt
  std::vector<double> alphas{0.005, 0.01, 0.0144};
  double M = 1;
  std::optional<ReaperSpec> reaper;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError:
      return kIo;
    case ErrorKind::InvalidCurve:
    case ErrorKind::InvalidSplit:
    case ErrorKind::InvalidConfig:
    case ErrorKind::NotBalanced:
    case ErrorKind::OutOfDomain:
    case ErrorKind::Extinct:
    case ErrorKind::PreconditionFailed:
    case ErrorKind::OscBelowPi:
      return kValidation;
    default:
      return kNumerical;
  }
}

void print_error(std::ostream& err, const std::string& what) {
  std::string line = what;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "error: " << line << '\n';
}

// ---- RunSpec JSON -------------------------------------------------------

void from_json(const json& j, GeneratorSpec& g) {
  for (const auto& [key, v] : j.items()) {
    if (key == "name") g.name = v.get<std::string>();
    else if (key == "a") g.a = v.get<double>();
    else if (key == "b") g.b = v.get<double>();
    else if (key == "r") g.r = v.get<double>();
    else if (key == "ratio") g.ratio = v.get<double>();
    else if (key == "eps") g.eps = v.get<double>();
    else if (key == "k") g.k = v.get<int>();
    else if (key == "n") g.n = v.get<long>();
    else if (key == "rightmost_at_origin") g.rightmost_at_origin = v.get<bool>();
    else throw Error(ErrorKind::InvalidConfig, "unknown generator field '" + key + "'");
  }
}

void to_json(json& j, const GeneratorSpec& g) {
  j = json{{"name", g.name}, {"a", g.a},     {"b", g.b}, {"r", g.r}, {"ratio", g.ratio},
           {"eps", g.eps},   {"k", g.k},     {"n", g.n}, {"rightmost_at_origin", g.rightmost_at_origin}};
}

void from_json(const json& j, ReaperSpec& r) {
  for (const auto& [key, v] : j.items()) {
    if (key == "C0") r.C0 = v.get<double>();
    else if (key == "tau0") r.tau0 = v.get<double>();
    else if (key == "t_offset") r.t_offset = v.get<double>();
    else if (key == "matched") r.matched = v.get<bool>();
    else throw Error(ErrorKind::InvalidConfig, "unknown reaper field '" + key + "'");
  }
}

RunSpec parse_run_spec(const std::string& path) {
  RunSpec s;
  try {
    const json j = json::parse(read_text(path));
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, path + ": RunSpec must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "generator") s.generator = v.get<GeneratorSpec>();
      else if (key == "input") s.input = v.get<std::string>();
      else if (key == "flow") s.flow = v.get<std::string>();
      else if (key == "config") s.config = v.get<FlowConfig>();
      else if (key == "output") s.output = v.get<std::string>();
      else if (key == "monitors") s.monitors = v.get<std::vector<std::string>>();
      else if (key == "snapshot_dt") s.snapshot_dt = v.get<double>();
      else if (key == "times") s.times = v.get<std::vector<double>>();
      else if (key == "alphas") s.alphas = v.get<std::vector<double>>();
      else if (key == "M") s.M = v.get<double>();
      else if (key == "reaper") s.reaper = v.get<ReaperSpec>();
      else throw Error(ErrorKind::InvalidConfig, path + ": unknown RunSpec field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
  return s;
}

// ---- shared pieces -------------------------------------------------------

Curve2d generate(const GeneratorSpec& g) {
  Curve2d c = [&] {
    if (g.name == "circle") return make_circle(g.r, g.n);
    if (g.name == "ellipse") return make_ellipse(g.a, g.b, g.n);
    if (g.name == "perturbed_circle") return make_perturbed_circle(g.eps, g.k, g.n);
    if (g.name == "lemniscate") return make_bernoulli_lemniscate(g.a, g.n);
    if (g.name == "asymmetric_eight") return make_asymmetric_eight(g.ratio, g.n);
    throw Error(ErrorKind::InvalidConfig,
                "unknown generator '" + g.name + "' (circle, ellipse, perturbed_circle, lemniscate, asymmetric_eight)");
  }();
  return g.rightmost_at_origin ? with_rightmost_at_origin(c) : c;
}

std::string summary_line(const DiagnosticsRecord& d, Eigen::Index n) {
  std::ostringstream s;
  s.precision(10);
  s << "n=" << n << " t=" << d.t << " L=" << d.length << " A_signed=" << d.signed_area << " A_total=" << d.total_area
    << " total_curvature=" << d.total_curvature << " osc_theta=" << d.osc_theta << " inflections=" << d.inflections
    << " crossings=" << d.crossings << " ell=" << d.ell << " Q=" << d.isoperimetric;
  return s.str();
}

GrimReaper resolve_reaper(const ReaperSpec& spec, const Curve2d& initial) {
  if (!spec.matched) return GrimReaper(spec.C0, spec.tau0);
  if (!(spec.tau0 > 0)) throw Error(ErrorKind::PreconditionFailed, "matched reaper needs tau0 > 0");
  return GrimReaper(initial.y().cwiseAbs().maxCoeff() / spec.tau0, spec.tau0);
}

// Barrier check summary; returns the margins for the diagnostics CSV.
std::vector<double> reaper_summary(const Trajectory& traj, const ReaperSpec& spec, const fs::path& dir,
                                   std::ostream& out) {
  const GrimReaper r = resolve_reaper(spec, traj.initial().curve);
  const double offset = spec.t_offset.value_or(-0.5 * r.tau0);
  const BarrierCheck check = reaper_barrier_check(traj, r, offset);
  const double push = push_distance(r.C0, r.tau0);
  json j{{"C0", r.C0},
         {"tau0", r.tau0},
         {"t_offset", offset},
         {"push_distance", push},
         {"initially_contained", rectangle_containment(traj.initial().curve, r.C0, r.tau0)},
         {"times", check.times},
         {"margins", check.margins},
         {"rightmost", check.rightmost},
         {"min_margin", check.min_margin()},
         {"all_positive", check.all_positive()},
         {"final_rightmost", check.rightmost.back()}};
  write_text(dir / "reaper.json", j.dump(2) + "\n");
  std::ostringstream s;
  s.precision(10);
  s << "reaper C0=" << r.C0 << " tau0=" << r.tau0 << " t_offset=" << offset << " push_distance=" << push
    << " min_margin=" << check.min_margin() << " all_positive=" << (check.all_positive() ? 1 : 0)
    << " final_rightmost=" << check.rightmost.back() << '\n';
  out << s.str();
  return check.margins;
}

json monitor_json(const std::string& name, const Trajectory& traj, const std::vector<double>& alphas, double M,
                  Report& report) {
  if (name == "balanced") {
    report = balanced_invariant_report(traj);
    return json(report);
  }
  if (name == "collapse") {
    const CollapseReport c = collapse_report(traj, alphas);
    report = c.report;
    json j(report);
    j["alphas"] = c.alphas;
    j["sup_ell_over_tau_alpha"] = c.sup_ratio;
    j["alpha0"] = c.alpha0;
    j["c1"] = c.c1;
    j["c2"] = c.c2;
    j["tau"] = c.taus;
    j["ell"] = c.ells;
    j["extinction"] = {{"t_estimate", c.extinction.t_estimate},
                       {"bracket", {c.extinction.bracket_lo, c.extinction.bracket_hi}},
                       {"slope", c.extinction.slope}};
    j["contraction"] = json::array();
    for (const auto& s : c.contraction)
      j["contraction"].push_back({{"tau", s.tau}, {"ratio", s.ratio}, {"eta_as_written", s.eta_as_written},
                                  {"eta_flipped", s.eta_flipped}});
    return j;
  }
  if (name == "isoperimetric") {
    const double alpha = alphas.empty() ? 0.005 : alphas.front();
    const IsoperimetricReport iso = isoperimetric_report(traj, M, alpha);
    report = iso.report;
    json j(report);
    j["M"] = iso.M;
    j["alpha"] = iso.alpha;
    j["tau0"] = iso.tau0;
    j["osc_theta0"] = iso.osc_theta0;
    j["alpha_threshold"] = iso.alpha_threshold;
    j["alpha_threshold_prefactor"] = alpha_threshold_prefactor();
    j["dyadic"] = json::array();
    for (const auto& d : iso.dyadic) j["dyadic"].push_back({{"j", d.j}, {"tau", d.tau}, {"q", d.q}, {"c", d.c}});
    return j;
  }
  if (name == "min_theta") {
    const double t_ext = estimate_extinction_time(traj).t_estimate;
    report = min_theta_check(traj, t_ext);
    json j(report);
    j["samples"] = json::array();
    for (const auto& s : min_theta_samples(traj, t_ext))
      j["samples"].push_back({{"t_start", s.t_start}, {"t_end", s.t_end}, {"increase", s.increase}, {"bound", s.bound}});
    return j;
  }
  if (name == "symmetry") {
    const SymmetryCollapse s = symmetry_collapse_check(traj);
    report = s.report;
    json j(report);
    j["crossing_x"] = s.crossing_x;
    j["doubly_symmetric"] = s.doubly_symmetric;
    j["crossing_direction"] = s.crossing_direction;
    return j;
  }
  throw Error(ErrorKind::InvalidConfig,
              "unknown monitor '" + name + "' (balanced, collapse, isoperimetric, min_theta, symmetry)");
}

void run_monitors(const Trajectory& traj, const fs::path& dir, const std::vector<std::string>& monitors,
                  const std::vector<double>& alphas, double M, std::ostream& out) {
  for (const auto& m : monitors) {
    Report report;
    const json j = monitor_json(m, traj, alphas, M, report);
    write_text(dir / ("report_" + m + ".json"), j.dump(2) + "\n");
    const std::string text = report_text(report);
    write_text(dir / ("report_" + m + ".txt"), text);
    out << text;
  }
}

template <class T>
void override_if(const CLI::Option* opt, T& dst, const T& src) {
  if (opt->count() > 0) dst = src;
}

// Options shared by generate and evolve.
struct GeneratorFlags {
  GeneratorSpec g;
  CLI::Option *a, *b, *r, *ratio, *eps, *k, *n, *rightmost;

  void add_to(CLI::App* app) {
    a = app->add_option("--a", g.a, "lemniscate scale or ellipse semi-axis");
    b = app->add_option("--b", g.b, "ellipse semi-axis");
    r = app->add_option("--r", g.r, "circle radius");
    ratio = app->add_option("--ratio", g.ratio, "asymmetric eight loop scale ratio");
    eps = app->add_option("--eps", g.eps, "perturbed circle amplitude");
    k = app->add_option("--k", g.k, "perturbed circle mode");
    n = app->add_option("--n", g.n, "number of samples");
    rightmost = app->add_flag("--rightmost-at-origin", g.rightmost_at_origin, "translate so max x = 0");
  }

  void apply(GeneratorSpec& dst) const {
    override_if(a, dst.a, g.a);
    override_if(b, dst.b, g.b);
    override_if(r, dst.r, g.r);
    override_if(ratio, dst.ratio, g.ratio);
    override_if(eps, dst.eps, g.eps);
    override_if(k, dst.k, g.k);
    override_if(n, dst.n, g.n);
    override_if(rightmost, dst.rightmost_at_origin, g.rightmost_at_origin);
  }
};

// ---- subcommands ----------------------------------------------------------

int cmd_generate(const std::string& kind, const GeneratorFlags& flags, std::string out_path, std::ostream& out) {
  GeneratorSpec g;
  g.name = kind;
  flags.apply(g);
  const Curve2d c = generate(g);
  if (out_path.empty()) out_path = kind + ".csv";
  write_curve(out_path, c);
  out << summary_line(compute_diagnostics(c, 0), c.size()) << '\n';
  return kOk;
}

int cmd_evolve(const RunSpec& spec, std::ostream& out) {
  if (spec.output.empty()) throw Error(ErrorKind::InvalidConfig, "evolve needs an output directory (--out)");
  spec.config.validate();
  const Curve2d initial = spec.input.empty() ? generate(spec.generator) : read_curve(spec.input);
  const FlowKind kind = flow_kind_from_string(spec.flow);
  const double horizon = spec.config.t_end.value_or(10.0);
  std::vector<double> times = spec.times.empty() ? uniform_times(spec.snapshot_dt, horizon) : spec.times;

  Trajectory traj = evolve_gradient_flow(initial, kind, spec.config, std::move(times));
  traj.flow_kind = to_string(kind);
  const fs::path dir = spec.output;

  json meta;
  if (spec.input.empty()) meta["generator"] = spec.generator;
  else meta["input"] = spec.input;
  ExtraColumns extra;
  std::ostringstream reaper_out;
  if (spec.reaper) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    extra["reaper_margin"] = reaper_summary(traj, *spec.reaper, dir, reaper_out);
  }
  write_run(dir, traj, extra, meta.dump());

  const auto& last = traj.diagnostics.back();
  out << "stop_reason=" << (traj.stop_reason ? to_string(*traj.stop_reason) : "none") << " steps=" << traj.final().step
      << " snapshots=" << traj.size() << '\n'
      << summary_line(last, traj.final().curve.size()) << '\n'
      << reaper_out.str();
  if (spec.input.empty() && spec.generator.name == "circle") {
    const auto& p = traj.final().curve.points();
    const Eigen::RowVector2d centre = p.colwise().mean();
    const double r_num = (p.rowwise() - centre).rowwise().norm().mean();
    const double r_exact = shrinking_circle(spec.generator.r, last.t);
    std::ostringstream s;
    s.precision(10);
    s << "circle_radius=" << r_num << " exact=" << r_exact << " rel_error=" << std::abs(r_num - r_exact) / r_exact;
    out << s.str() << '\n';
  }
  run_monitors(traj, dir, spec.monitors, spec.alphas, spec.M, out);
  return kOk;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    print_error(err, e.what());
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    print_error(err, std::string("InvalidConfig: ") + e.what());
    return kValidation;
  } catch (const fs::filesystem_error& e) {
    print_error(err, std::string("IoError: ") + e.what());
    return kIo;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curve shortening flow of balanced figure-eights and its Legendrian lift"};
  app.name("curveflow");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a fixture curve and print its diagnostics");
  std::string gen_kind, gen_out;
  GeneratorFlags gen_flags;
  gen->add_option("kind", gen_kind, "circle | ellipse | perturbed_circle | lemniscate | asymmetric_eight")->required();
  gen_flags.add_to(gen);
  gen->add_option("--out,-o", gen_out, "output file (.csv or .json); default <kind>.csv");

  // evolve
  auto* evo = app.add_subcommand("evolve", "run a flow and write a run directory");
  std::vector<std::string> spec_files;
  int jobs = 1;
  RunSpec f;  // flag values
  GeneratorFlags evo_flags;
  ReaperSpec reaper_flags;
  double t_end = 0;
  evo->add_option("--spec", spec_files, "RunSpec JSON file(s); flags override their values");
  evo->add_option("--jobs,-j", jobs, "concurrent runs when several specs are given")->check(CLI::PositiveNumber);
  auto* o_gen = evo->add_option("--generator,-g", f.generator.name, "fixture name");
  evo_flags.add_to(evo);
  auto* o_input = evo->add_option("--input", f.input, "initial curve file instead of a generator");
  auto* o_flow = evo->add_option("--flow", f.flow, "csf | diffusion | h1 | indefinite");
  auto* o_cfl = evo->add_option("--cfl", f.config.cfl);
  auto* o_cfl4 = evo->add_option("--cfl4", f.config.cfl_fourth_order);
  auto* o_remesh = evo->add_option("--remesh-every", f.config.remesh_every);
  auto* o_area = evo->add_option("--stop-area-frac", f.config.stop_area_frac);
  auto* o_kh = evo->add_option("--stop-kappa-h", f.config.stop_kappa_h);
  auto* o_steps = evo->add_option("--max-steps", f.config.max_steps);
  auto* o_tend = evo->add_option("--t-end", t_end);
  auto* o_sdt = evo->add_option("--snapshot-dt", f.snapshot_dt);
  auto* o_times = evo->add_option("--times", f.times, "explicit snapshot times");
  auto* o_out = evo->add_option("--out,-o", f.output, "run directory");
  auto* o_mon = evo->add_option("--monitor", f.monitors, "balanced | collapse | isoperimetric | min_theta | symmetry");
  auto* o_alpha = evo->add_option("--alpha", f.alphas);
  auto* o_M = evo->add_option("--M", f.M);
  auto* o_rc = evo->add_option("--reaper-C0", reaper_flags.C0);
  auto* o_rt = evo->add_option("--reaper-tau0", reaper_flags.tau0);
  double reaper_offset = 0;
  auto* o_ro = evo->add_option("--reaper-t-offset", reaper_offset);
  auto* o_rm = evo->add_flag("--reaper-matched", reaper_flags.matched, "C0 = max|y| / tau0");

  // lift
  auto* lft = app.add_subcommand("lift", "lift every snapshot of a balanced run to a Legendrian curve");
  std::string lift_dir, lift_out;
  double z_base = 0;
  lft->add_option("run_dir", lift_dir)->required();
  lft->add_option("--z-base", z_base);
  lft->add_option("--out,-o", lift_out, "default <run_dir>/lifted");

  // report
  auto* rep = app.add_subcommand("report", "run monitors on an existing run directory");
  std::string rep_dir;
  std::vector<std::string> rep_monitors;
  std::vector<double> rep_alphas{0.005, 0.01, 0.0144};
  double rep_M = 1;
  rep->add_option("run_dir", rep_dir)->required();
  rep->add_option("--monitor", rep_monitors)->required();
  rep->add_option("--alpha", rep_alphas);
  rep->add_option("--M", rep_M);

  // compare-reaper
  auto* cmp = app.add_subcommand("compare-reaper", "grim reaper barrier margins for an existing run");
  std::string cmp_dir;
  ReaperSpec cmp_reaper;
  double cmp_offset = 0;
  cmp->add_option("run_dir", cmp_dir)->required();
  cmp->add_option("--C0", cmp_reaper.C0);
  cmp->add_option("--tau0", cmp_reaper.tau0);
  auto* o_cmp_off = cmp->add_option("--t-offset", cmp_offset, "default -tau0/2");
  cmp->add_flag("--matched", cmp_reaper.matched, "C0 = max|y| of the first snapshot / tau0");

  std::vector<std::string> argv_store{"curveflow"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, std::string("Usage: ") + e.what());
    return kValidation;
  }

  if (gen->parsed()) return guarded(err, [&] { return cmd_generate(gen_kind, gen_flags, gen_out, out); });

  if (evo->parsed()) {
    std::vector<RunSpec> specs;
    const int code = guarded(err, [&] {
      if (spec_files.empty()) specs.emplace_back();
      for (const auto& path : spec_files) specs.push_back(parse_run_spec(path));
      if (specs.size() > 1 && o_out->count() > 0)
        throw Error(ErrorKind::InvalidConfig, "--out cannot be shared by several specs");
      for (auto& s : specs) {
        override_if(o_gen, s.generator.name, f.generator.name);
        evo_flags.apply(s.generator);
        override_if(o_input, s.input, f.input);
        override_if(o_flow, s.flow, f.flow);
        override_if(o_cfl, s.config.cfl, f.config.cfl);
        override_if(o_cfl4, s.config.cfl_fourth_order, f.config.cfl_fourth_order);
        override_if(o_remesh, s.config.remesh_every, f.config.remesh_every);
        override_if(o_area, s.config.stop_area_frac, f.config.stop_area_frac);
        override_if(o_kh, s.config.stop_kappa_h, f.config.stop_kappa_h);
        override_if(o_steps, s.config.max_steps, f.config.max_steps);
        if (o_tend->count() > 0) s.config.t_end = t_end;
        override_if(o_sdt, s.snapshot_dt, f.snapshot_dt);
        override_if(o_times, s.times, f.times);
        override_if(o_out, s.output, f.output);
        override_if(o_mon, s.monitors, f.monitors);
        override_if(o_alpha, s.alphas, f.alphas);
        override_if(o_M, s.M, f.M);
        if (o_rc->count() + o_rt->count() + o_ro->count() + o_rm->count() > 0) {
          ReaperSpec r = s.reaper.value_or(ReaperSpec{});
          override_if(o_rc, r.C0, reaper_flags.C0);
          override_if(o_rt, r.tau0, reaper_flags.tau0);
          if (o_ro->count() > 0) r.t_offset = reaper_offset;
          override_if(o_rm, r.matched, reaper_flags.matched);
          s.reaper = r;
        }
      }
      return kOk;
    });
    if (code != kOk) return code;

    // Each run owns its output directory; output is buffered and printed in spec order.
    std::vector<std::ostringstream> outs(specs.size()), errs(specs.size());
    std::vector<int> codes(specs.size(), kOk);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < specs.size(); i = next++)
        codes[i] = guarded(errs[i], [&] { return cmd_evolve(specs[i], outs[i]); });
    };
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), specs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int worst = kOk;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      out << outs[i].str();
      err << errs[i].str();
      worst = std::max(worst, codes[i]);
    }
    return worst;
  }

  if (lft->parsed()) {
    return guarded(err, [&] {
      const Trajectory traj = read_run(lift_dir);
      const LiftedTrajectory lifted = lift_trajectory(traj, z_base);
      const fs::path dest = lift_out.empty() ? fs::path(lift_dir) / "lifted" : fs::path(lift_out);
      write_lifted_run(dest, traj, lifted, z_base);
      double worst = 0, worst_rel = 0;
      for (const auto& c : lifted.curves) {
        const double r = legendrian_residual(c);
        worst = std::max(worst, r);
        worst_rel = std::max(worst_rel, r / c.curve().projected_length());
      }
      std::ostringstream s;
      s.precision(6);
      s << "lifted " << lifted.curves.size() << " snapshots to " << dest.string() << " max_residual=" << worst
        << " max_residual_over_L=" << worst_rel << " z_base=" << z_base;
      out << s.str() << '\n';
      return kOk;
    });
  }

  if (rep->parsed()) {
    return guarded(err, [&] {
      const Trajectory traj = read_run(rep_dir);
      run_monitors(traj, rep_dir, rep_monitors, rep_alphas, rep_M, out);
      return kOk;
    });
  }

  if (cmp->parsed()) {
    return guarded(err, [&] {
      const Trajectory traj = read_run(cmp_dir);
      if (o_cmp_off->count() > 0) cmp_reaper.t_offset = cmp_offset;
      const auto margins = reaper_summary(traj, cmp_reaper, cmp_dir, out);
      append_run_columns(cmp_dir, {{"reaper_margin", margins}});
      return kOk;
    });
  }
  return kValidation;
}

}  // namespace curveflow::cli

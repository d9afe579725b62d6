#include "doctest.h"

#include "curveflow/experiments.hpp"
#include "curveflow/generators.hpp"
#include "curveflow/intersections.hpp"
#include "support.hpp"

using namespace curveflow;
using testing::kPi;

namespace {

const Trajectory& lemniscate_run() {
  static const Trajectory traj = [] {
    FlowConfig cfg;
    return run(make_bernoulli_lemniscate(1, 128), cfg, uniform_times(0.002, 0.2));
  }();
  return traj;
}

const Trajectory& circle_run() {
  static const Trajectory traj = [] {
    FlowConfig cfg;
    cfg.stop_area_frac = 0.05;
    return run(make_circle(1, 128), cfg, uniform_times(0.02, 0.5));
  }();
  return traj;
}

}  // namespace

TEST_CASE("figure-eight generators") {
  const Curve2d lem = make_bernoulli_lemniscate(1, 256);
  CHECK(std::abs(signed_area(lem)) < 1e-10);
  CHECK(find_self_intersections(lem).size() == 1);
  CHECK(inflection_count(lem) == 2);
  CHECK(testing::error_kind([] { make_bernoulli_lemniscate(1, 32); }) == ErrorKind::PreconditionFailed);
  CHECK(testing::error_kind([] { make_bernoulli_lemniscate(-1, 128); }) == ErrorKind::PreconditionFailed);

  // Ratio one reduces to the lemniscate sampled on the same half-offset grid.
  const Curve2d one = make_asymmetric_eight(1.0, 256);
  CHECK((one.points() - lem.points()).cwiseAbs().maxCoeff() < 1e-6);

  const Curve2d wide = make_asymmetric_eight(1.5, 256);
  CHECK(std::abs(signed_area(wide)) < 1e-6 * std::pow(wide.length(), 2));
  CHECK(find_self_intersections(wide).size() == 1);
  const double cx = find_self_intersections(wide).front().point.x();
  const double right = wide.x().maxCoeff() - cx, left = cx - wide.x().minCoeff();
  CHECK(right / left == doctest::Approx(1.5).epsilon(0.15));
  CHECK(testing::error_kind([] { make_asymmetric_eight(3, 128); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("collapse constants") {
  CHECK(collapse_c1() == doctest::Approx(1 / (32 * kPi)));
  CHECK(std::abs(collapse_alpha0() - 0.014423) < 1e-6);
  // -log(1 - c1) / log 2 by its series c1 + c1^2/2 + ... ; independent of std::log1p.
  double s = 0, p = 1;
  for (int k = 1; k < 10; ++k) {
    p *= collapse_c1();
    s += p / k;
  }
  CHECK(collapse_alpha0() == doctest::Approx(s / 0.6931471805599453).epsilon(1e-12));
  CHECK(collapse_c2() < 0);
  CHECK(collapse_c2() == doctest::Approx(16 * kPi * -0.13058424).epsilon(1e-7));
  CHECK(std::abs(alpha_threshold_prefactor() - 0.654190) < 1e-6);
  CHECK(std::abs(alpha_threshold_prefactor() - 0.6540) < 5e-4);
}

TEST_CASE("min theta bound") {
  CHECK(min_theta_bound(1, 1) == doctest::Approx(std::sqrt(kPi) / 4 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(min_theta_bound(1, 1) - 0.163012) < 1e-6);
  CHECK(min_theta_bound(1, 1e-3) < 1e-300);
  CHECK(min_theta_bound(1, 0.01) < min_theta_bound(1, 0.1));
}

TEST_CASE("balanced invariant report") {
  const Report lem = balanced_invariant_report(lemniscate_run());
  for (const auto& c : lem.checks) {
    INFO(c.name << " = " << c.value);
    CHECK(c.pass);
  }
  CHECK(lem.flags.empty());

  const Report circle = balanced_invariant_report(circle_run());
  CHECK(circle.has_flag("NotAFigureEight"));
  CHECK_FALSE(circle.find("snapshots_without_one_crossing")->pass);
  CHECK_FALSE(circle.all_pass());

  // Fault injection: shift the recorded signed area of one snapshot.
  Trajectory drift = lemniscate_run();
  auto& rec = drift.diagnostics[drift.size() / 2];
  rec.signed_area = 1e-3 * rec.length * rec.length;
  const Report bad = balanced_invariant_report(drift);
  CHECK_FALSE(bad.find("signed_area_over_L2")->pass);
  CHECK(bad.find("total_curvature")->pass);
}

TEST_CASE("collapse report") {
  const CollapseReport rep = collapse_report(lemniscate_run(), {0.0, 0.005, 0.01, 0.0144});
  CHECK(rep.report.all_pass());
  REQUIRE(rep.sup_ratio.size() == 4);
  CHECK(rep.sup_ratio[0] == doctest::Approx(lemniscate_run().diagnostics.front().ell));
  for (double s : rep.sup_ratio) CHECK(std::isfinite(s));
  for (std::size_t k = 1; k < rep.taus.size(); ++k) CHECK(rep.taus[k] < rep.taus[k - 1]);
  CHECK(rep.alpha0 == collapse_alpha0());
  CHECK_FALSE(rep.contraction.empty());
  bool mentions_asymptotic = false;
  for (const auto& n : rep.report.notes) mentions_asymptotic |= n.find("asymptotic") != std::string::npos;
  CHECK(mentions_asymptotic);

  // Three early snapshots cannot pin down the extinction time.
  Trajectory early;
  for (std::size_t k = 0; k < 3; ++k) {
    early.states.push_back(lemniscate_run().states[k]);
    early.diagnostics.push_back(lemniscate_run().diagnostics[k]);
  }
  CHECK(testing::error_kind([&] { collapse_report(early, {0.01}); }) == ErrorKind::ExtinctionUnresolved);
}

TEST_CASE("isoperimetric report") {
  const IsoperimetricReport lem = isoperimetric_report(lemniscate_run(), 1.0, 0.005);
  CHECK(lem.report.find("Q_min")->pass);
  CHECK(lem.alpha_threshold > 0);
  CHECK(lem.osc_theta0 > kPi);
  CHECK_FALSE(lem.dyadic.empty());
  for (const auto& s : lem.samples) CHECK(s.Q >= 4 * kPi);

  // A tiny M makes the target reachable at tau0 already.
  const IsoperimetricReport easy = isoperimetric_report(lemniscate_run(), 1e-3, 0.005);
  CHECK(easy.samples.front().Q >= easy.samples.front().target);
  CHECK(easy.report.find("max_Q_tau^alpha")->pass);

  // An embedded circle has osc theta = 2 pi > pi but Q stays at 4 pi.
  const IsoperimetricReport circ = isoperimetric_report(circle_run(), 1.0, 0.005);
  for (const auto& s : circ.samples) CHECK(s.Q == doctest::Approx(4 * kPi).epsilon(1e-3));
  CHECK_FALSE(circ.report.find("Q_growth")->pass);

  Trajectory flat;
  const Curve2d eight = make_asymmetric_eight(0.6, 128);
  flat.states.push_back({eight, 0, 0});
  flat.diagnostics.push_back(compute_diagnostics(eight, 0));
  flat.diagnostics.back().osc_theta = 0.9 * kPi;
  flat.states.push_back({eight, 0.01, 1});
  flat.diagnostics.push_back(compute_diagnostics(eight, 0.01));
  flat.diagnostics.back().total_area *= 0.9;
  CHECK(testing::error_kind([&] { isoperimetric_report(flat, 1.0, 0.01); }) == ErrorKind::OscBelowPi);
}

TEST_CASE("min theta check") {
  const double t_ext = estimate_extinction_time(lemniscate_run()).t_estimate;
  const auto samples = min_theta_samples(lemniscate_run(), t_ext);
  REQUIRE_FALSE(samples.empty());
  for (const auto& s : samples) {
    CHECK(s.t_end >= s.t_start);
    CHECK(s.increase >= s.bound - 1e-9);
  }
  CHECK(min_theta_check(lemniscate_run(), t_ext).all_pass());
}

TEST_CASE("symmetry collapse") {
  const SymmetryCollapse lem = symmetry_collapse_check(lemniscate_run());
  CHECK(lem.doubly_symmetric);
  CHECK(lem.crossing_displacement < 1e-6);
  CHECK(lem.crossing_monotone);
  CHECK(lem.ell_ratio < 1);
  CHECK(lem.y_extent_ratio < 1);
  CHECK(lem.diameter_ratio < 1);

  FlowConfig cfg;
  cfg.stop_area_frac = 0.3;
  const Trajectory left = run(make_asymmetric_eight(0.67, 128), cfg, uniform_times(0.005, 0.2));
  const SymmetryCollapse s = symmetry_collapse_check(left);
  CHECK_FALSE(s.doubly_symmetric);
  CHECK(s.crossing_monotone);
  CHECK(s.crossing_direction == -1);
  CHECK(s.crossing_x.back() < s.crossing_x.front());
}

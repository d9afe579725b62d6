#include "doctest.h"

#include "curveflow/flow.hpp"
#include "curveflow/generators.hpp"
#include "support.hpp"

using namespace curveflow;
using testing::kPi;

namespace {

double mean_radius(const Curve2d& c) {
  const Eigen::RowVector2d centre = c.points().colwise().mean();
  return (c.points().rowwise() - centre).rowwise().norm().mean();
}

double circle_error(Eigen::Index n) {
  FlowConfig cfg;
  cfg.t_end = 0.375;
  const Trajectory traj = run(make_circle(1, n), cfg, {});
  const FlowState& s = traj.final();
  return std::abs(mean_radius(s.curve) - std::sqrt(1 - 2 * s.t)) / std::sqrt(1 - 2 * s.t);
}

}  // namespace

TEST_CASE("config validation") {
  FlowConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 0.6;
  CHECK(testing::error_kind([&] { cfg.validate(); }) == ErrorKind::InvalidConfig);
  cfg = FlowConfig{};
  cfg.stop_area_frac = 1.0;
  CHECK(testing::error_kind([&] { cfg.validate(); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("csf velocity") {
  SUBCASE("circle moves inward at speed 1/r") {
    for (double r : {0.5, 2.0}) {
      const Curve2d c = make_circle(r, 256);
      const Eigen::MatrixX2d v = csf_velocity(c);
      for (Eigen::Index i = 0; i < 256; ++i) {
        const Eigen::Vector2d inward = -c.point(i) / r;
        CHECK((v.row(i).transpose() - inward / r).norm() < 1e-3);
      }
    }
  }
  SUBCASE("reaper arc: normal velocity matches a rigid translation") {
    const auto [c, m] = testing::closed_graph_arc([](double y) { return std::log(std::cos(y)); }, 1.2, 400);
    const Eigen::MatrixX2d v = csf_velocity(c);
    const auto d = derivatives(c);
    const Eigen::MatrixX2d nrm = unit_normals(d);
    for (Eigen::Index i = 5; i < m - 5; ++i) {
      const double vn = v.row(i).dot(nrm.row(i));
      const double translation_n = Eigen::RowVector2d(-1, 0).dot(nrm.row(i));
      CHECK(std::abs(vn - translation_n) < 1e-3);
    }
  }
}

TEST_CASE("shrinking circle") {
  const double e256 = circle_error(256);
  CHECK(e256 < 1e-3);
  // Error against the exact radius at the snapshot's own time shrinks under refinement.
  const double e128 = circle_error(128);
  MESSAGE("circle relative error N=128: " << e128 << ", N=256: " << e256);
  CHECK(e128 / e256 >= 3.0);
}

TEST_CASE("embedded area law") {
  FlowConfig cfg;
  cfg.t_end = 0.3;
  const Trajectory traj = run(make_ellipse(2, 1, 256), cfg, {0.1, 0.2});
  REQUIRE(traj.size() == 4);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const auto& a = traj.diagnostics[k - 1];
    const auto& b = traj.diagnostics[k];
    const double rate = (b.signed_area - a.signed_area) / (b.t - a.t);
    CHECK(rate == doctest::Approx(-2 * kPi).epsilon(0.01));
    CHECK(b.length < a.length);
  }
  CHECK(*traj.stop_reason == StopReason::EndTime);
}

TEST_CASE("circle runs to extinction") {
  FlowConfig cfg;
  cfg.stop_area_frac = 0.02;
  const Trajectory traj = run(make_circle(1, 128), cfg, uniform_times(0.05, 0.5));
  const double t_stop = traj.final().t;
  CHECK(t_stop >= 0.485);
  CHECK(t_stop <= 0.5);
  for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.states[k].t > traj.states[k - 1].t);
  const ExtinctionEstimate est = estimate_extinction_time(traj);
  CHECK(est.t_estimate == doctest::Approx(0.5).epsilon(0.01));
  CHECK_FALSE(est.figure_eight);
  CHECK(est.bracket_lo == doctest::Approx(est.bracket_hi));
}

TEST_CASE("snapshot contract") {
  FlowConfig cfg;
  cfg.t_end = 0.01;
  const Curve2d c = make_ellipse(1.5, 1, 64);
  const Trajectory bare = run(c, cfg, {});
  CHECK(bare.size() == 2);
  CHECK(bare.initial().t == 0);
  CHECK(bare.final().t >= 0.01);

  const Trajectory snaps = run(c, cfg, {0.0025, 0.005});
  REQUIRE(snaps.size() == 4);
  CHECK(snaps.states[1].t >= 0.0025);
  CHECK(snaps.states[2].t >= 0.005);
  // First accepted step at or past the request, never interpolated.
  const double dt = snaps.states[2].t - snaps.states[1].t;
  CHECK(dt > 0);
  CHECK(snaps.diagnostics.size() == snaps.size());
}

TEST_CASE("lemniscate run keeps a balanced figure-eight") {
  FlowConfig cfg;
  cfg.stop_area_frac = 0.05;
  const Trajectory traj = run(make_bernoulli_lemniscate(1, 128), cfg, uniform_times(0.01, 0.2));
  REQUIRE(traj.stop_reason.has_value());
  int prev_inflections = traj.diagnostics.front().inflections;
  for (const auto& d : traj.diagnostics) {
    CHECK(d.crossings == 1);
    CHECK(std::abs(d.signed_area) < 1e-6 * d.length * d.length);
    CHECK(std::abs(d.total_curvature) < 1e-3);
    CHECK(d.inflections <= prev_inflections);
    prev_inflections = d.inflections;
    CHECK(d.loop_area_one == doctest::Approx(d.loop_area_two).epsilon(1e-6));
  }
  for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.diagnostics[k].length < traj.diagnostics[k - 1].length);

  const ExtinctionEstimate est = estimate_extinction_time(traj);
  CHECK(est.figure_eight);
  CHECK(est.slope <= -2 * kPi);
  CHECK(est.slope >= -4 * kPi);
  CHECK(est.bracket_lo <= est.t_estimate);
  CHECK(est.t_estimate <= est.bracket_hi);
}

TEST_CASE("x-axis symmetry is preserved") {
  FlowConfig cfg;
  cfg.t_end = 0.03;
  const Trajectory traj = run(make_asymmetric_eight(0.67, 128), cfg, {0.01, 0.02});
  for (const auto& s : traj.states) {
    const Curve2d m = mirrored_x_axis(s.curve);
    double worst = 0;
    for (Eigen::Index i = 0; i < s.curve.size(); ++i) {
      const double nearest = (m.points().rowwise() - s.curve.points().row(i)).rowwise().norm().minCoeff();
      worst = std::max(worst, nearest);
    }
    CHECK(worst < 1e-6 * s.curve.length());
  }
}

TEST_CASE("extinction estimate rejects a static trajectory") {
  Trajectory traj;
  const Curve2d c = make_circle(1, 64);
  for (double t : {0.0, 0.1, 0.2}) {
    traj.states.push_back({c, t, 0});
    traj.diagnostics.push_back(compute_diagnostics(c, t));
  }
  CHECK(testing::error_kind([&] { estimate_extinction_time(traj); }) == ErrorKind::AreaNotDecreasing);
}

TEST_CASE("step guards") {
  FlowConfig cfg;
  cfg.max_steps = 5;
  cfg.t_end = 1.0;
  CHECK(testing::error_kind([&] { run(make_circle(1, 64), cfg, {}); }) == ErrorKind::MaxStepsExceeded);

  // A curve whose kappa * h already exceeds the criterion cannot be stepped.
  FlowConfig tight;
  tight.stop_kappa_h = 1e-6;
  CHECK(testing::error_kind([&] { step(FlowState{make_circle(1, 64)}, tight); }) == ErrorKind::SingularityReached);
}

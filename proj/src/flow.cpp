#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curveflow/error.hpp"
#include "curveflow/intersections.hpp"
#include "curveflow/resample.hpp"

namespace curveflow {

void FlowConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (!(cfl > 0 && cfl <= 0.5)) fail("cfl must lie in (0, 0.5]");
  if (!(cfl_fourth_order > 0 && cfl_fourth_order <= 0.5)) fail("cfl_fourth_order must lie in (0, 0.5]");
  if (remesh_every < 1) fail("remesh_every must be positive");
  if (!(stop_area_frac > 0 && stop_area_frac < 1)) fail("stop_area_frac must lie in (0, 1)");
  if (!(stop_kappa_h > 0)) fail("stop_kappa_h must be positive");
  if (max_steps < 1) fail("max_steps must be positive");
  if (t_end && !(*t_end > 0)) fail("t_end must be positive");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::AreaFraction: return "area_fraction";
    case StopReason::KappaResolution: return "kappa_resolution";
    case StopReason::EndTime: return "end_time";
    case StopReason::TopologyChange: return "topology_change";
  }
  return "unknown";
}

Eigen::MatrixX2d csf_velocity(const Curve2d& curve) {
  const auto d = derivatives(curve);
  const Eigen::VectorXd kappa = curvature(d);
  Eigen::MatrixX2d v = unit_normals(d);
  v.col(0).array() *= kappa.array();
  v.col(1).array() *= kappa.array();
  return v;
}

FlowModel csf_model() {
  return {"csf", csf_velocity, [](double h, const FlowConfig& c) { return c.cfl * h * h; }};
}

namespace {

double kappa_h(const Curve2d& curve) {
  return curvature(curve).cwiseAbs().maxCoeff() * curve.segment_lengths().minCoeff();
}

std::optional<Curve2d> try_heun(const FlowModel& model, const Curve2d& curve, double dt) {
  try {
    const Eigen::MatrixX2d k1 = model.velocity(curve);
    const Curve2d mid(Eigen::MatrixX2d(curve.points() + dt * k1));
    const Eigen::MatrixX2d k2 = model.velocity(mid);
    return Curve2d(Eigen::MatrixX2d(curve.points() + 0.5 * dt * (k1 + k2)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidCurve || e.kind() == ErrorKind::DegenerateTangent) return std::nullopt;
    throw;
  }
}

}  // namespace

FlowState step(const FlowModel& model, const FlowState& state, const FlowConfig& config) {
  const double kh = kappa_h(state.curve);
  if (kh > config.stop_kappa_h) {
    std::ostringstream msg;
    msg << "max|kappa| * h_min = " << kh << " exceeds " << config.stop_kappa_h << " at t = " << state.t;
    throw Error(ErrorKind::SingularityReached, msg.str());
  }
  double dt = model.time_step(state.curve.segment_lengths().minCoeff(), config);
  for (int attempt = 0; attempt <= 8; ++attempt, dt /= 2) {
    auto next = try_heun(model, state.curve, dt);
    if (!next) continue;
    const long step_count = state.step + 1;
    if (step_count % config.remesh_every == 0) next = resample_arclength(*next);
    return {std::move(*next), state.t + dt, step_count};
  }
  std::ostringstream msg;
  msg << "immersion lost after 8 step halvings at t = " << state.t;
  throw Error(ErrorKind::StepRejected, msg.str());
}

FlowState step(const FlowState& state, const FlowConfig& config) { return step(csf_model(), state, config); }

Trajectory run(const FlowModel& model, const Curve2d& initial, const FlowConfig& config,
               std::vector<double> output_times) {
  config.validate();
  std::sort(output_times.begin(), output_times.end());
  Trajectory traj;
  traj.flow_kind = model.name;
  traj.config = config;

  auto snapshot = [&](const FlowState& s) {
    traj.states.push_back(s);
    traj.diagnostics.push_back(compute_diagnostics(s.curve, s.t));
  };

  FlowState state{initial, 0.0, 0};
  snapshot(state);
  const double area0 = traj.diagnostics.front().total_area;
  const int crossings0 = traj.diagnostics.front().crossings;
  auto next_output = std::upper_bound(output_times.begin(), output_times.end(), 0.0);

  while (true) {
    if (state.step >= config.max_steps) {
      std::ostringstream msg;
      msg << "no stopping criterion after " << config.max_steps << " steps (t = " << state.t << ")";
      throw Error(ErrorKind::MaxStepsExceeded, msg.str());
    }
    state = step(model, state, config);

    std::optional<StopReason> reason;
    const auto crossings = find_self_intersections(state.curve);
    if (static_cast<int>(crossings.size()) != crossings0) {
      reason = StopReason::TopologyChange;
    } else if (total_loop_area<double>(state.curve.points()) < config.stop_area_frac * area0) {
      reason = StopReason::AreaFraction;
    } else if (kappa_h(state.curve) > config.stop_kappa_h) {
      reason = StopReason::KappaResolution;
    } else if (config.t_end && state.t >= *config.t_end) {
      reason = StopReason::EndTime;
    }

    bool taken = false;
    while (next_output != output_times.end() && *next_output <= state.t) {
      if (!taken) snapshot(state);
      taken = true;
      ++next_output;
    }
    if (reason) {
      if (!taken) snapshot(state);
      traj.stop_reason = reason;
      return traj;
    }
  }
}

Trajectory run(const Curve2d& initial, const FlowConfig& config, std::vector<double> output_times) {
  return run(csf_model(), initial, config, std::move(output_times));
}

std::vector<double> uniform_times(double dt, double horizon) {
  std::vector<double> times;
  if (!(dt > 0)) return times;
  for (long k = 1; k * dt <= horizon * (1 + 1e-12); ++k) times.push_back(k * dt);
  return times;
}

ExtinctionEstimate estimate_extinction_time(const Trajectory& traj, std::size_t window) {
  const std::size_t n = traj.diagnostics.size();
  if (n < 2) throw Error(ErrorKind::AreaNotDecreasing, "need at least two snapshots");
  const std::size_t first = n - std::min(n, std::max<std::size_t>(window, 2));
  double mt = 0, ma = 0;
  const double count = static_cast<double>(n - first);
  for (std::size_t k = first; k < n; ++k) {
    mt += traj.diagnostics[k].t;
    ma += traj.diagnostics[k].total_area;
  }
  mt /= count;
  ma /= count;
  double stt = 0, sta = 0;
  for (std::size_t k = first; k < n; ++k) {
    const double dt = traj.diagnostics[k].t - mt;
    stt += dt * dt;
    sta += dt * (traj.diagnostics[k].total_area - ma);
  }
  const double slope = stt > 0 ? sta / stt : 0.0;
  const auto& last = traj.diagnostics.back();
  if (!(slope < 0) || !(last.total_area < traj.diagnostics.front().total_area)) {
    std::ostringstream msg;
    msg << "total area does not decrease (slope " << slope << ")";
    throw Error(ErrorKind::AreaNotDecreasing, msg.str());
  }
  constexpr double pi = std::numbers::pi;
  ExtinctionEstimate est;
  est.slope = slope;
  est.t_last = last.t;
  est.area_last = last.total_area;
  est.t_estimate = last.t + last.total_area / -slope;
  est.figure_eight = last.crossings == 1;
  est.bracket_hi = last.t + last.total_area / (2 * pi);
  est.bracket_lo = est.figure_eight ? last.t + last.total_area / (4 * pi) : est.bracket_hi;
  return est;
}

}  // namespace curveflow

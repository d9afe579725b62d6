#include "curveflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool compare(double value, const std::string& relation, double bound) {
  if (relation == "<") return value < bound;
  if (relation == "<=") return value <= bound;
  if (relation == ">=") return value >= bound;
  if (relation == ">") return value > bound;
  if (relation == "==") return value == bound;
  throw Error(ErrorKind::PreconditionFailed, "unknown relation '" + relation + "'");
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Linear interpolation of a snapshot quantity at time t inside the snapshot range.
template <class Get>
double at_time(const std::vector<DiagnosticsRecord>& d, double t, Get get) {
  auto hi = std::lower_bound(d.begin(), d.end(), t, [](const DiagnosticsRecord& r, double v) { return r.t < v; });
  if (hi == d.end()) return kNaN;
  if (hi == d.begin()) return hi->t == t ? get(*hi) : kNaN;
  auto lo = hi - 1;
  const double w = (t - lo->t) / (hi->t - lo->t);
  return (1 - w) * get(*lo) + w * get(*hi);
}

// Minimum of theta over the samples, refined by the parabola through the
// lowest sample and its neighbours.
double refined_min(const Eigen::VectorXd& theta) {
  const Eigen::Index n = theta.size();
  Eigen::Index i = 0;
  theta.minCoeff(&i);
  const double a = theta[(i + n - 1) % n], b = theta[i], c = theta[(i + 1) % n];
  const double curv = a - 2 * b + c;
  if (!(curv > 0)) return b;
  return b - (c - a) * (c - a) / (8 * curv);
}

bool mirror_symmetric_in_y_axis(const Curve2d& curve) {
  const auto& p = curve.points();
  const double tol = 1e-9 * curve.length();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const Eigen::Vector2d q(-p(i, 0), p(i, 1));
    double best = kInf;
    for (Eigen::Index j = 0; j < p.rows(); ++j) best = std::min(best, (p.row(j).transpose() - q).norm());
    if (best > tol) return false;
  }
  return true;
}

}  // namespace

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.asserted; });
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::has_flag(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

Check& Report::add(std::string name, double value, std::string relation, double bound, std::string note) {
  const bool pass = compare(value, relation, bound);
  checks.push_back({std::move(name), value, std::move(relation), bound, pass, true, std::move(note)});
  return checks.back();
}

Check& Report::inform(std::string name, double value, std::string relation, double bound, std::string note) {
  Check& c = add(std::move(name), value, std::move(relation), bound, std::move(note));
  c.asserted = false;
  return c;
}

Report balanced_invariant_report(const Trajectory& traj) {
  const auto& d = traj.diagnostics;
  if (d.empty()) throw Error(ErrorKind::PreconditionFailed, "empty trajectory");
  Report r;
  r.monitor = "balanced";

  double worst_area = 0, worst_tc = 0;
  int off_count = 0, worst_increase = std::numeric_limits<int>::min();
  for (std::size_t k = 0; k < d.size(); ++k) {
    worst_area = std::max(worst_area, std::abs(d[k].signed_area) / (d[k].length * d[k].length));
    worst_tc = std::max(worst_tc, std::abs(d[k].total_curvature));
    if (d[k].crossings != 1) ++off_count;
    if (k > 0) worst_increase = std::max(worst_increase, d[k].inflections - d[k - 1].inflections);
  }
  if (d.size() == 1) worst_increase = 0;
  if (d.front().crossings != 1) r.flags.push_back("NotAFigureEight");

  r.add("signed_area_over_L2", worst_area, "<", 1e-4, "max over snapshots");
  r.add("total_curvature", worst_tc, "<", 1e-3, "max |int kappa ds| over snapshots");
  r.add("snapshots_without_one_crossing", off_count, "==", 0);
  r.add("inflection_increase", worst_increase, "<=", 0, "largest rise between consecutive snapshots");

  double rate_min = kInf, rate_max = -kInf, worst_dev = 0;
  int rate_pairs = 0, angle_pairs = 0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    const double dt = d[k + 1].t - d[k].t;
    if (!(dt > 0)) continue;
    const double rate = (d[k + 1].total_area - d[k].total_area) / dt;
    rate_min = std::min(rate_min, rate);
    rate_max = std::max(rate_max, rate);
    ++rate_pairs;
    if (d[k].crossing_angle && d[k + 1].crossing_angle) {
      const double predicted = -2 * kPi - (*d[k].crossing_angle + *d[k + 1].crossing_angle);
      worst_dev = std::max(worst_dev, std::abs(rate - predicted) / std::abs(predicted));
      ++angle_pairs;
    }
  }
  if (rate_pairs == 0) rate_min = rate_max = kNaN;
  if (angle_pairs == 0) worst_dev = kNaN;
  r.add("area_rate_min", rate_min, ">=", -4 * kPi - 0.5, "d|A|/dt between consecutive snapshots");
  r.add("area_rate_max", rate_max, "<=", -2 * kPi + 0.5, "d|A|/dt between consecutive snapshots");
  r.add("area_rate_vs_crossing_angle", worst_dev, "<", 0.05,
        "relative gap to -2pi - 2 * interior angle (angle averaged over the interval)");
  return r;
}

double collapse_c1() { return 1.0 / (32 * kPi); }
double collapse_c2() { return 16 * kPi * std::log(std::cos(0.5)); }
double collapse_alpha0() { return -std::log(1 - collapse_c1()) / std::log(2.0); }

CollapseReport collapse_report(const Trajectory& traj, const std::vector<double>& alphas) {
  CollapseReport out;
  out.extinction = estimate_extinction_time(traj);
  const auto& d = traj.diagnostics;
  const double t_ext = out.extinction.t_estimate;
  const double horizon = t_ext - d.front().t;
  const double width = out.extinction.bracket_hi - out.extinction.bracket_lo;
  if (!(width <= 0.2 * horizon)) {
    std::ostringstream msg;
    msg << "extinction bracket [" << out.extinction.bracket_lo << ", " << out.extinction.bracket_hi
        << "] is wider than 20% of the horizon " << horizon;
    throw Error(ErrorKind::ExtinctionUnresolved, msg.str());
  }

  for (const auto& rec : d) {
    const double tau = t_ext - rec.t;
    if (!(tau > 0)) continue;
    out.taus.push_back(tau);
    out.ells.push_back(rec.ell);
  }
  out.alphas = alphas;
  out.alpha0 = collapse_alpha0();
  out.c1 = collapse_c1();
  out.c2 = collapse_c2();

  Report& r = out.report;
  r.monitor = "collapse";
  double worst_rise = out.ells.size() > 1 ? -kInf : 0;
  for (std::size_t k = 1; k < out.ells.size(); ++k) worst_rise = std::max(worst_rise, out.ells[k] - out.ells[k - 1]);
  r.add("ell_rise", worst_rise, "<=", 0, "largest increase of ell between consecutive snapshots");

  for (double a : alphas) {
    double sup = 0;
    for (std::size_t k = 0; k < out.taus.size(); ++k) sup = std::max(sup, out.ells[k] / std::pow(out.taus[k], a));
    out.sup_ratio.push_back(sup);
    r.add("sup_ell_over_tau^" + fmt(a), sup, "<", kInf, "finite over the resolved range");
  }
  r.inform("alpha0", out.alpha0, ">", 0, "-log(1 - c1) / log 2 with c1 = 1/(32 pi)");

  int held_written = 0, held_flipped = 0;
  const double t_last = d.back().t;
  for (std::size_t k = 0; k < out.taus.size(); ++k) {
    const double tau = out.taus[k];
    const double t_half = t_ext - tau / 2;
    if (t_half > t_last) break;
    const double ell_half = at_time(d, t_half, [](const DiagnosticsRecord& x) { return x.ell; });
    const double ell = out.ells[k];
    const double pen = tau / (ell * ell);
    ContractionSample s{tau, ell_half / ell, 1 - out.c1 + out.c2 * pen, 1 - out.c1 + std::abs(out.c2) * pen};
    if (s.ratio <= s.eta_as_written) ++held_written;
    if (s.ratio <= s.eta_flipped) ++held_flipped;
    out.contraction.push_back(s);
  }
  const double n_contr = static_cast<double>(out.contraction.size());
  r.inform("contraction_bound_as_written_holds", held_written, "==", n_contr,
           "samples with l(tau/2)/l(tau) <= 1 - c1 + c2 tau/l^2, c2 = 16 pi log cos(1/2) < 0");
  r.inform("contraction_bound_flipped_holds", held_flipped, "==", n_contr,
           "samples with l(tau/2)/l(tau) <= 1 - c1 + |c2| tau/l^2");

  std::ostringstream range;
  range << "The collapse-rate statement bounds limsup l(tau)/tau^alpha as tau -> 0. That limit is asymptotic;"
        << " only the sup over the resolved range tau in [" << (out.taus.empty() ? kNaN : out.taus.back()) << ", "
        << (out.taus.empty() ? kNaN : out.taus.front()) << "] is certified here.";
  r.notes.push_back(range.str());
  std::ostringstream ext;
  ext << "tau measured from the extrapolated extinction time " << t_ext << ", bracket ["
      << out.extinction.bracket_lo << ", " << out.extinction.bracket_hi << "]";
  r.notes.push_back(ext.str());
  r.notes.push_back("c2 = 16 pi log cos(1/2) is negative as written; both sign conventions are reported");
  return out;
}

double alpha_threshold_prefactor() { return kPi / (4 * std::sqrt(3.0) * std::log(2.0)); }

IsoperimetricReport isoperimetric_report(const Trajectory& traj, double M, double alpha) {
  const auto& d = traj.diagnostics;
  if (d.empty()) throw Error(ErrorKind::PreconditionFailed, "empty trajectory");
  IsoperimetricReport out;
  out.M = M;
  out.alpha = alpha;
  out.osc_theta0 = d.front().osc_theta;
  if (!(out.osc_theta0 > kPi)) {
    std::ostringstream msg;
    msg << "osc theta(tau0) = " << out.osc_theta0 << " <= pi";
    throw Error(ErrorKind::OscBelowPi, msg.str());
  }
  const ExtinctionEstimate est = estimate_extinction_time(traj);
  const double t_ext = est.t_estimate;
  out.tau0 = t_ext - d.front().t;
  out.alpha_threshold =
      alpha_threshold_prefactor() * std::exp(-4 * kPi * M / std::pow(out.tau0, alpha)) / (out.osc_theta0 - kPi);

  Report& r = out.report;
  r.monitor = "isoperimetric";
  double q_min = kInf, best = -kInf;
  for (const auto& rec : d) {
    q_min = std::min(q_min, rec.isoperimetric);
    const double tau = t_ext - rec.t;
    if (!(tau > 0)) continue;
    out.samples.push_back({tau, rec.isoperimetric, M * std::pow(tau, -alpha)});
    best = std::max(best, rec.isoperimetric * std::pow(tau, alpha));
  }
  r.add("Q_min", q_min, ">=", 4 * kPi, "isoperimetric inequality applied loopwise");

  r.inform("max_Q_tau^alpha", best, ">=", M, "whether Q(tau) >= M tau^-alpha at some resolved tau");
  r.inform("alpha", alpha, "<", out.alpha_threshold,
           "threshold pi/(4 sqrt(3) ln 2) exp(-4 pi M / tau0^alpha) / (osc theta(tau0) - pi)");

  int late_non_increase = 0, late_count = 0;
  if (!out.samples.empty()) {
    const double tau_min = out.samples.back().tau;
    const IsoperimetricSample* prev = nullptr;
    for (const auto& s : out.samples) {
      if (s.tau > 10 * tau_min) continue;
      if (prev && !(s.Q > prev->Q)) ++late_non_increase;
      prev = &s;
      ++late_count;
    }
  }
  r.add("Q_non_increases_last_decade", late_count > 1 ? late_non_increase : kNaN, "==", 0,
        "consecutive snapshots with tau in [tau_min, 10 tau_min] where Q fails to grow");
  const double q_max = std::max_element(d.begin(), d.end(), [](const auto& a, const auto& b) {
                         return a.isoperimetric < b.isoperimetric;
                       })->isoperimetric;
  r.add("Q_growth", q_max / d.front().isoperimetric, ">=", 10, "max Q over initial Q before the stop");

  const double tau_min = out.samples.empty() ? kInf : out.samples.back().tau;
  for (int j = 0;; ++j) {
    const double tau = out.tau0 / std::pow(2.0, j);
    if (tau < tau_min) break;
    const double t = t_ext - tau;
    const double L = at_time(d, t, [](const DiagnosticsRecord& x) { return x.length; });
    const double A = at_time(d, t, [](const DiagnosticsRecord& x) { return x.total_area; });
    if (!std::isfinite(L)) break;
    out.dyadic.push_back({j, tau, L / std::sqrt(tau), A / tau});
  }
  r.notes.push_back("q_j = L(tau_j)/sqrt(tau_j) and c_j = |A|(tau_j)/tau_j are recorded, not asserted");
  if (d.front().crossings == 0)
    r.notes.push_back("embedded curve: Q stays near 4 pi and does not blow up; the growth statement excludes it");
  return out;
}

double min_theta_bound(double L, double tau) {
  return std::sqrt(kPi) / 4 * (L / std::sqrt(tau)) * std::exp(-L * L / tau);
}

std::vector<MinThetaSample> min_theta_samples(const Trajectory& traj, double t_extinction) {
  const auto& states = traj.states;
  std::vector<double> mins(states.size());
  double prev_mean = 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const Eigen::VectorXd full = tangent_angle(states[k].curve);
    Eigen::VectorXd theta = full.head(full.size() - 1);
    const double mean = theta.mean();
    // The branch anchor at sample 0 can jump by 2 pi between snapshots.
    if (k > 0) theta.array() += 2 * kPi * std::round((prev_mean - mean) / (2 * kPi));
    prev_mean = theta.mean();
    mins[k] = refined_min(theta);
  }
  std::vector<MinThetaSample> out;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double tau = t_extinction - states[k].t;
    if (!(tau > 0)) continue;
    const double target = states[k].t + tau / 2;
    std::size_t m = k;
    while (m < states.size() && states[m].t < target) ++m;
    if (m == states.size()) break;
    out.push_back({states[k].t, states[m].t, mins[m] - mins[k], min_theta_bound(traj.diagnostics[k].length, tau)});
  }
  return out;
}

Report min_theta_check(const Trajectory& traj, double t_extinction, double noise) {
  Report r;
  r.monitor = "min_theta";
  const auto samples = min_theta_samples(traj, t_extinction);
  double worst = kInf;
  for (const auto& s : samples) worst = std::min(worst, s.increase - s.bound);
  r.add("min_theta_rise_minus_bound", samples.empty() ? kNaN : worst, ">=", -noise,
        "min over checked snapshots of [min theta(t + tau/2) - min theta(t)] - bound(L, tau)");
  r.inform("checked_snapshots", static_cast<double>(samples.size()), ">", 0);
  return r;
}

SymmetryCollapse symmetry_collapse_check(const Trajectory& traj) {
  const auto& d = traj.diagnostics;
  if (d.empty()) throw Error(ErrorKind::PreconditionFailed, "empty trajectory");
  SymmetryCollapse out;
  const Curve2d& first = traj.initial().curve;
  const double L0 = d.front().length;
  out.diameter_ratio = diameter(traj.final().curve) / diameter(first);
  out.doubly_symmetric = mirror_symmetric_in_y_axis(first);
  out.ell_ratio = d.back().ell / d.front().ell;
  out.y_extent_ratio = d.back().y_extent / d.front().y_extent;

  std::vector<Eigen::Vector2d> pts;
  for (const auto& rec : d) {
    out.crossing_x.push_back(rec.crossing_point ? rec.crossing_point->x() : kNaN);
    if (rec.crossing_point) pts.push_back(*rec.crossing_point);
  }
  Report& r = out.report;
  r.monitor = "symmetry_collapse";
  if (pts.size() != d.size()) r.flags.push_back("NotAFigureEight");

  for (const auto& p : pts) out.crossing_displacement = std::max(out.crossing_displacement, (p - pts.front()).norm() / L0);
  const double drift = pts.empty() ? 0 : pts.back().x() - pts.front().x();
  out.crossing_direction = std::abs(drift) > 1e-9 * L0 ? (drift > 0 ? 1 : -1) : 0;
  out.crossing_monotone = pts.size() == d.size();
  const double tol = 1e-12 * L0;
  for (std::size_t k = 1; k < out.crossing_x.size() && out.crossing_monotone; ++k) {
    const double step = out.crossing_x[k] - out.crossing_x[k - 1];
    if (out.crossing_direction == 0 ? std::abs(step) > 1e-9 * L0 : step * out.crossing_direction < -tol)
      out.crossing_monotone = false;
  }

  r.add("diameter_ratio", out.diameter_ratio, "<", 0.05, "final over initial diameter");
  r.add("crossing_monotone", out.crossing_monotone ? 1 : 0, "==", 1,
        out.crossing_direction < 0 ? "drifts left" : out.crossing_direction > 0 ? "drifts right" : "stationary");
  if (out.doubly_symmetric)
    r.add("crossing_displacement_over_L0", out.crossing_displacement, "<", 1e-6, "doubly symmetric initial curve");
  else
    r.inform("crossing_displacement_over_L0", out.crossing_displacement, ">=", 0);
  r.inform("ell_ratio", out.ell_ratio, "<", 1, "final over initial x-extent");
  r.inform("y_extent_ratio", out.y_extent_ratio, "<", 1, "final over initial y-extent");
  return out;
}

}  // namespace curveflow

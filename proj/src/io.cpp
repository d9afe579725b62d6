#include "curveflow/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

double parse_double(std::string_view s, const fs::path& path, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": cannot parse '" << s << "' as a number";
    throw Error(ErrorKind::IoError, msg.str());
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Rows of a CSV whose header must equal `header`; returns the numeric columns.
std::vector<std::vector<double>> read_table(const fs::path& path, const std::string& header) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw Error(ErrorKind::IoError, path.string() + ": expected header '" + header + "', got '" + line + "'");
  const std::size_t cols = split(header).size();
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (fields.size() != cols) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": expected " << cols << " fields, got " << fields.size();
      throw Error(ErrorKind::IoError, msg.str());
    }
    std::vector<double> row;
    for (auto f : fields) row.push_back(parse_double(f, path, lineno));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<StopReason> stop_reason_from_string(const std::string& s) {
  for (auto r : {StopReason::AreaFraction, StopReason::KappaResolution, StopReason::EndTime, StopReason::TopologyChange})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::string snapshot_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", k);
  return buf;
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, path.string() + ": " + e.what());
  }
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_curve_csv(const fs::path& path, const Curve2d& curve) {
  std::ostringstream s;
  s << "u,x,y\n";
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    s << num(curve.param(i)) << ',' << num(curve.points()(i, 0)) << ',' << num(curve.points()(i, 1)) << '\n';
  write_text(path, s.str());
}

Curve2d read_curve_csv(const fs::path& path) {
  const auto rows = read_table(path, "u,x,y");
  Eigen::MatrixX2d p(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) p.row(static_cast<Eigen::Index>(i)) << rows[i][1], rows[i][2];
  return Curve2d(std::move(p));
}

void write_curve_json(const fs::path& path, const Curve2d& curve) {
  json j;
  j["n"] = curve.size();
  j["points"] = json::array();
  for (Eigen::Index i = 0; i < curve.size(); ++i) j["points"].push_back({curve.points()(i, 0), curve.points()(i, 1)});
  write_text(path, j.dump(1) + "\n");
}

Curve2d read_curve_json(const fs::path& path) {
  const json j = parse_json(path);
  try {
    const auto& pts = j.at("points");
    const auto n = j.at("n").get<Eigen::Index>();
    if (static_cast<Eigen::Index>(pts.size()) != n)
      throw Error(ErrorKind::IoError, path.string() + ": n does not match the number of points");
    Eigen::MatrixX2d p(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& q = pts[static_cast<std::size_t>(i)];
      p(i, 0) = q.at(0).get<double>();
      p(i, 1) = q.at(1).get<double>();
    }
    return Curve2d(std::move(p));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, path.string() + ": " + e.what());
  }
}

Curve2d read_curve(const fs::path& path) {
  return path.extension() == ".json" ? read_curve_json(path) : read_curve_csv(path);
}

void write_curve(const fs::path& path, const Curve2d& curve) {
  if (path.extension() == ".json") write_curve_json(path, curve);
  else write_curve_csv(path, curve);
}

void write_space_curve_csv(const fs::path& path, const SpaceCurve3& curve) {
  std::ostringstream s;
  s << "u,x,y,z\n";
  const auto& p = curve.points();
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    s << num(curve.param_step() * static_cast<double>(i)) << ',' << num(p(i, 0)) << ',' << num(p(i, 1)) << ','
      << num(p(i, 2)) << '\n';
  write_text(path, s.str());
}

SpaceCurve3 read_space_curve_csv(const fs::path& path) {
  const auto rows = read_table(path, "u,x,y,z");
  Points3d p(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i)
    p.row(static_cast<Eigen::Index>(i)) << rows[i][1], rows[i][2], rows[i][3];
  return SpaceCurve3(std::move(p));
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const ExtraColumns& extra) {
  for (const auto& [name, col] : extra)
    if (col.size() != records.size())
      throw Error(ErrorKind::PreconditionFailed, "column '" + name + "' has the wrong number of rows");
  std::ostringstream s;
  s << "t,L,A_signed,A_total,total_curvature,osc_theta,inflections,crossings,ell,Q";
  for (const auto& [name, col] : extra) s << ',' << name;
  s << '\n';
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& d = records[k];
    s << num(d.t) << ',' << num(d.length) << ',' << num(d.signed_area) << ',' << num(d.total_area) << ','
      << num(d.total_curvature) << ',' << num(d.osc_theta) << ',' << d.inflections << ',' << d.crossings << ','
      << num(d.ell) << ',' << num(d.isoperimetric);
    for (const auto& [name, col] : extra) s << ',' << num(col[k]);
    s << '\n';
  }
  return s.str();
}

void to_json(json& j, const FlowConfig& c) {
  j = json{{"cfl", c.cfl},
           {"cfl_fourth_order", c.cfl_fourth_order},
           {"remesh_every", c.remesh_every},
           {"stop_area_frac", c.stop_area_frac},
           {"stop_kappa_h", c.stop_kappa_h},
           {"max_steps", c.max_steps}};
  j["t_end"] = c.t_end ? json(*c.t_end) : json(nullptr);
}

void from_json(const json& j, FlowConfig& c) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "cfl") c.cfl = value.get<double>();
    else if (key == "cfl_fourth_order") c.cfl_fourth_order = value.get<double>();
    else if (key == "remesh_every") c.remesh_every = value.get<int>();
    else if (key == "stop_area_frac") c.stop_area_frac = value.get<double>();
    else if (key == "stop_kappa_h") c.stop_kappa_h = value.get<double>();
    else if (key == "max_steps") c.max_steps = value.get<long>();
    else if (key == "t_end") c.t_end = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
    else throw Error(ErrorKind::InvalidConfig, "unknown config field '" + key + "'");
  }
}

void to_json(json& j, const Check& c) {
  j = json{{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"bound", c.bound}, {"pass", c.pass}};
  if (!c.asserted) j["asserted"] = false;
  if (!c.note.empty()) j["note"] = c.note;
}

void to_json(json& j, const Report& r) {
  j = json{{"monitor", r.monitor}, {"all_pass", r.all_pass()}, {"checks", r.checks}, {"flags", r.flags},
           {"notes", r.notes}};
}

std::string report_json(const Report& report) { return json(report).dump(2) + "\n"; }

std::string report_text(const Report& report) {
  std::size_t width = 4;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  std::ostringstream s;
  s << report.monitor << ": " << (report.all_pass() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : report.checks) {
    s << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(4)
      << (c.asserted ? (c.pass ? "PASS" : "FAIL") : "info") << "  " << std::setw(13) << std::setprecision(6)
      << c.value << ' ' << std::setw(2) << c.relation << ' ' << c.bound;
    if (!c.note.empty()) s << "  (" << c.note << ')';
    s << '\n';
  }
  for (const auto& f : report.flags) s << "  flag: " << f << '\n';
  for (const auto& n : report.notes) s << "  note: " << n << '\n';
  return s.str();
}

void write_run(const fs::path& dir, const Trajectory& traj, const ExtraColumns& extra, const std::string& meta_extra) {
  std::error_code ec;
  fs::create_directories(dir / "snapshots", ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + (dir / "snapshots").string() + ": " + ec.message());
  write_text(dir / "diagnostics.csv", diagnostics_csv(traj.diagnostics, extra));

  json meta = json::parse(meta_extra);
  meta["flow_kind"] = traj.flow_kind;
  meta["stop_reason"] = traj.stop_reason ? json(to_string(*traj.stop_reason)) : json(nullptr);
  meta["config"] = traj.config;
  meta["snapshots"] = json::array();
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const std::string name = snapshot_name(k);
    write_curve_csv(dir / "snapshots" / name, traj.states[k].curve);
    meta["snapshots"].push_back({{"t", traj.states[k].t}, {"step", traj.states[k].step}, {"file", "snapshots/" + name}});
  }
  write_text(dir / "meta.json", meta.dump(2) + "\n");
}

Trajectory read_run(const fs::path& dir) {
  const json meta = parse_json(dir / "meta.json");
  Trajectory traj;
  try {
    traj.flow_kind = meta.at("flow_kind").get<std::string>();
    if (!meta.at("stop_reason").is_null())
      traj.stop_reason = stop_reason_from_string(meta.at("stop_reason").get<std::string>());
    traj.config = meta.at("config").get<FlowConfig>();
    for (const auto& s : meta.at("snapshots")) {
      FlowState state{read_curve_csv(dir / s.at("file").get<std::string>()), s.at("t").get<double>(),
                      s.at("step").get<long>()};
      traj.diagnostics.push_back(compute_diagnostics(state.curve, state.t));
      traj.states.push_back(std::move(state));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, (dir / "meta.json").string() + ": " + e.what());
  }
  if (traj.states.empty()) throw Error(ErrorKind::IoError, dir.string() + ": run has no snapshots");
  return traj;
}

void append_run_columns(const fs::path& dir, const ExtraColumns& extra) {
  const Trajectory traj = read_run(dir);
  write_text(dir / "diagnostics.csv", diagnostics_csv(traj.diagnostics, extra));
}

void write_lifted_run(const fs::path& dir, const Trajectory& traj, const LiftedTrajectory& lifted, double z_base) {
  std::error_code ec;
  fs::create_directories(dir / "snapshots", ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + (dir / "snapshots").string() + ": " + ec.message());
  std::vector<double> residual;
  json meta{{"z_base", z_base}, {"flow_kind", traj.flow_kind}, {"snapshots", json::array()}};
  for (std::size_t k = 0; k < lifted.curves.size(); ++k) {
    residual.push_back(legendrian_residual(lifted.curves[k]));
    const std::string name = snapshot_name(k);
    write_space_curve_csv(dir / "snapshots" / name, lifted.curves[k]);
    meta["snapshots"].push_back({{"t", lifted.times[k]}, {"file", "snapshots/" + name}});
  }
  write_text(dir / "diagnostics.csv", diagnostics_csv(traj.diagnostics, {{"residual", residual}}));
  write_text(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace curveflow

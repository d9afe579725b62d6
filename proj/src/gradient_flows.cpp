#include "curveflow/gradient_flows.hpp"

#include <cmath>

#include "curveflow/cyclic_tridiagonal.hpp"
#include "curveflow/error.hpp"

namespace curveflow {

namespace {

Eigen::MatrixX2d normal_velocity(const Curve2d& curve, const Eigen::VectorXd& speed) {
  Eigen::MatrixX2d v = unit_normals(derivatives(curve));
  v.col(0).array() *= speed.array();
  v.col(1).array() *= speed.array();
  return v;
}

}  // namespace

ArclengthField ArclengthField::on(const Curve2d& curve, Eigen::VectorXd values) {
  return {std::move(values), curve.segment_lengths()};
}

Eigen::VectorXd node_weights(const Eigen::VectorXd& spacing) {
  const Eigen::Index n = spacing.size();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = 0.5 * (spacing[(i + n - 1) % n] + spacing[i]);
  return w;
}

ArclengthField arclength_derivative(const ArclengthField& field) {
  const auto& f = field.values;
  const auto& h = field.spacing;
  const Eigen::Index n = f.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index im = (i + n - 1) % n, ip = (i + 1) % n;
    const double hm = h[im], hp = h[i];
    out[i] = (hm * hm * (f[ip] - f[i]) + hp * hp * (f[i] - f[im])) / (hp * hm * (hp + hm));
  }
  return {std::move(out), h};
}

ArclengthField arclength_second_derivative(const ArclengthField& field) {
  const auto& f = field.values;
  const auto& h = field.spacing;
  const Eigen::Index n = f.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index im = (i + n - 1) % n, ip = (i + 1) % n;
    out[i] = ((f[ip] - f[i]) / h[i] - (f[i] - f[im]) / h[im]) / (0.5 * (h[im] + h[i]));
  }
  return {std::move(out), h};
}

Eigen::VectorXd curve_diffusion_velocity(const Curve2d& curve) {
  // kappa_ss = d/du(kappa_u / |gamma_u|) / |gamma_u| with the 4th-order u-stencil. The outer
  // difference telescopes, so sum_i speed_i |gamma_u|_i du is zero to rounding.
  const Derivatives<double> d = derivatives(curve);
  const Eigen::VectorXd g = speed(d);
  const double du = curve.param_step();
  const Eigen::VectorXd kappa_s = detail::periodic_d1<double>(curvature(d), du).cwiseQuotient(g);
  return -detail::periodic_d1<double>(kappa_s, du).cwiseQuotient(g);
}

ArclengthField solve_h1_system(const ArclengthField& rhs) {
  const auto& h = rhs.spacing;
  const Eigen::Index n = h.size();
  const Eigen::VectorXd w = node_weights(h);
  Eigen::VectorXd lower(n), diag(n), upper(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hm = h[(i + n - 1) % n], hp = h[i];
    lower[i] = -1.0 / (hm * w[i]);
    upper[i] = -1.0 / (hp * w[i]);
    diag[i] = 1.0 + (1.0 / hm + 1.0 / hp) / w[i];
  }
  Eigen::VectorXd zeta = solve_cyclic_tridiagonal<double>(lower, diag, upper, rhs.values);
  return {std::move(zeta), h};
}

H1Gradient h1_gradient(const Curve2d& curve) {
  const ArclengthField kappa = ArclengthField::on(curve, curvature(curve));
  H1Gradient out{solve_h1_system(arclength_derivative(kappa)), arclength_derivative(kappa), {}, 0};
  const ArclengthField zeta_ss = arclength_second_derivative(out.zeta);
  out.residual = (out.zeta.values - zeta_ss.values - out.kappa_s.values).cwiseAbs().maxCoeff();
  out.speed = -arclength_derivative(out.zeta).values;
  return out;
}

Eigen::VectorXd indefinite_gradient(const Curve2d& curve) { return curvature(curve); }

std::string to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::Csf: return "csf";
    case FlowKind::Diffusion: return "diffusion";
    case FlowKind::H1: return "h1";
    case FlowKind::Indefinite: return "indefinite";
  }
  return "unknown";
}

FlowKind flow_kind_from_string(const std::string& name) {
  if (name == "csf") return FlowKind::Csf;
  if (name == "diffusion") return FlowKind::Diffusion;
  if (name == "h1") return FlowKind::H1;
  if (name == "indefinite") return FlowKind::Indefinite;
  throw Error(ErrorKind::InvalidConfig, "unknown flow kind '" + name + "'");
}

FlowModel gradient_flow_model(FlowKind kind) {
  const auto second_order = [](double h, const FlowConfig& c) { return c.cfl * h * h; };
  switch (kind) {
    case FlowKind::Csf:
      return csf_model();
    case FlowKind::Diffusion:
      return {"diffusion",
              [](const Curve2d& c) { return normal_velocity(c, curve_diffusion_velocity(c)); },
              [](double h, const FlowConfig& c) { return c.cfl_fourth_order * h * h * h * h; }};
    case FlowKind::H1:
      return {"h1", [](const Curve2d& c) { return normal_velocity(c, h1_gradient(c).speed); }, second_order};
    case FlowKind::Indefinite:
      return {"indefinite", [](const Curve2d& c) { return normal_velocity(c, indefinite_gradient(c)); },
              second_order};
  }
  throw Error(ErrorKind::InvalidConfig, "unknown flow kind");
}

Trajectory evolve_gradient_flow(const Curve2d& curve, FlowKind kind, const FlowConfig& config,
                                std::vector<double> output_times) {
  return run(gradient_flow_model(kind), curve, config, std::move(output_times));
}

}  // namespace curveflow

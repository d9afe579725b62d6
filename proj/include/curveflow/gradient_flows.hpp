#pragma once

// Gradient flows of length on Legendrian deformations f (normal speed f_s),
// under three metrics on f:
//   L^2 (curve diffusion):  zeta = kappa_s,          normal speed -kappa_ss
//   H^1:                    zeta - zeta_ss = kappa_s, normal speed -zeta_s
//   indefinite \int f_s h_s: zeta_s = -kappa,       normal speed kappa (curve shortening)

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/flow.hpp"

namespace curveflow {

/// Nodal values on a closed curve with spacing[i] = arclength from node i to node i+1.
struct ArclengthField {
  Eigen::VectorXd values;
  Eigen::VectorXd spacing;

  static ArclengthField on(const Curve2d& curve, Eigen::VectorXd values);
};

/// Trapezoid weights (spacing[i-1] + spacing[i]) / 2.
Eigen::VectorXd node_weights(const Eigen::VectorXd& spacing);

/// Three-point nonuniform central difference; exact for quadratics in s.
ArclengthField arclength_derivative(const ArclengthField& field);

/// Conservative three-point second difference:
/// ((f_{i+1} - f_i) / h_i - (f_i - f_{i-1}) / h_{i-1}) / w_i. Its weighted sum vanishes.
ArclengthField arclength_second_derivative(const ArclengthField& field);

/// Normal speed -kappa_ss of the curve diffusion flow, differenced in u at 4th order.
/// Its quadrature against |gamma_u| du vanishes.
Eigen::VectorXd curve_diffusion_velocity(const Curve2d& curve);

/// Solves (I - D_ss) zeta = rhs on the field's spacing (periodic, cyclic tridiagonal).
ArclengthField solve_h1_system(const ArclengthField& rhs);

struct H1Gradient {
  ArclengthField zeta;
  ArclengthField kappa_s;
  Eigen::VectorXd speed;  // -zeta_s
  double residual;        // max |zeta - zeta_ss - kappa_s|
};

H1Gradient h1_gradient(const Curve2d& curve);

/// Normal speed kappa, identical to the normal component of csf_velocity.
Eigen::VectorXd indefinite_gradient(const Curve2d& curve);

enum class FlowKind { Csf, Diffusion, H1, Indefinite };

std::string to_string(FlowKind kind);
FlowKind flow_kind_from_string(const std::string& name);

/// Velocity field and step law for a flow kind: dt = cfl h_min^2, or
/// cfl_fourth_order h_min^4 for curve diffusion.
FlowModel gradient_flow_model(FlowKind kind);

Trajectory evolve_gradient_flow(const Curve2d& curve, FlowKind kind, const FlowConfig& config,
                                std::vector<double> output_times);

}  // namespace curveflow

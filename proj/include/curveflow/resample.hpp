#pragma once

// Arclength redistribution of closed curves. Tangential reparametrization
// leaves the image of the flow unchanged, so the engines call this between
// time steps to keep the samples evenly spaced.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

#include "curveflow/curve.hpp"
#include "curveflow/cyclic_tridiagonal.hpp"

namespace curveflow {

/// Interpolating periodic cubic spline through the samples, parametrized by
/// cumulative chord length.
template <typename Scalar>
class PeriodicSpline2 {
 public:
  explicit PeriodicSpline2(const Points2<Scalar>& p) : p_(p) {
    const Eigen::Index n = p.rows();
    h_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) h_[i] = (p.row((i + 1) % n) - p.row(i)).norm();
    VectorX<Scalar> lower(n), diag(n), upper(n);
    Points2<Scalar> rhs(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index im = (i + n - 1) % n, ip = (i + 1) % n;
      lower[i] = h_[im];
      upper[i] = h_[i];
      diag[i] = Scalar(2) * (h_[im] + h_[i]);
      rhs.row(i) = Scalar(6) * ((p.row(ip) - p.row(i)) / h_[i] - (p.row(i) - p.row(im)) / h_[im]);
    }
    m_ = solve_cyclic_tridiagonal<Scalar>(lower, diag, upper, rhs);

    arc_.resize(n);
    cumulative_.resize(n + 1);
    cumulative_[0] = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      arc_[i] = arc_length(i, h_[i]);
      cumulative_[i + 1] = cumulative_[i] + arc_[i];
    }
  }

  Eigen::Index segments() const { return p_.rows(); }
  Scalar length() const { return cumulative_[p_.rows()]; }
  Scalar segment_length(Eigen::Index i) const { return arc_[i]; }

  Vector2<Scalar> eval(Eigen::Index i, Scalar t) const {
    const Eigen::Index j = (i + 1) % p_.rows();
    const Scalar h = h_[i];
    const Vector2<Scalar> mi = m_.row(i).transpose(), mj = m_.row(j).transpose();
    const Vector2<Scalar> b = (p_.row(j) - p_.row(i)).transpose() / h - h * (Scalar(2) * mi + mj) / Scalar(6);
    return p_.row(i).transpose() + b * t + mi * (t * t / Scalar(2)) + (mj - mi) * (t * t * t / (Scalar(6) * h));
  }

  Vector2<Scalar> eval_derivative(Eigen::Index i, Scalar t) const {
    const Eigen::Index j = (i + 1) % p_.rows();
    const Scalar h = h_[i];
    const Vector2<Scalar> mi = m_.row(i).transpose(), mj = m_.row(j).transpose();
    const Vector2<Scalar> b = (p_.row(j) - p_.row(i)).transpose() / h - h * (Scalar(2) * mi + mj) / Scalar(6);
    return b + mi * t + (mj - mi) * (t * t / (Scalar(2) * h));
  }

  /// Arclength of segment i between local parameters 0 and t (5-point Gauss-Legendre).
  Scalar arc_length(Eigen::Index i, Scalar t) const {
    static constexpr std::array<double, 5> nodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                    0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> weights = {0.2369268850561891, 0.4786286704993665,
                                                      0.5688888888888889, 0.4786286704993665,
                                                      0.2369268850561891};
    Scalar acc = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Scalar tk = t * (Scalar(nodes[k]) + Scalar(1)) / Scalar(2);
      acc += Scalar(weights[k]) * eval_derivative(i, tk).norm();
    }
    return acc * t / Scalar(2);
  }

  /// Point at arclength s from sample 0 (taken modulo the total length).
  Vector2<Scalar> at_arclength(Scalar s) const {
    const Scalar total = length();
    s = std::fmod(s, total);
    if (s < 0) s += total;
    const auto it = std::upper_bound(cumulative_.data(), cumulative_.data() + cumulative_.size(), s);
    Eigen::Index i = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(it - cumulative_.data()) - 1, 0,
                                              p_.rows() - 1);
    const Scalar target = s - cumulative_[i];
    const Scalar h = h_[i];
    Scalar t = std::clamp(target / arc_[i], Scalar(0), Scalar(1)) * h;
    for (int iter = 0; iter < 30; ++iter) {
      const Scalar f = arc_length(i, t) - target;
      const Scalar df = eval_derivative(i, t).norm();
      const Scalar next = std::clamp(t - f / df, Scalar(0), h);
      const bool done = std::abs(next - t) <= Scalar(4) * Eigen::NumTraits<Scalar>::epsilon() * h;
      t = next;
      if (done) break;
    }
    return eval(i, t);
  }

  /// Arclength position of the middle of segment i.
  Scalar segment_midpoint(Eigen::Index i) const {
    const Scalar half = arc_[i] / Scalar(2);
    Scalar lo = 0, hi = h_[i];
    for (int iter = 0; iter < 200 && hi - lo > Eigen::NumTraits<Scalar>::epsilon() * h_[i]; ++iter) {
      const Scalar mid = (lo + hi) / Scalar(2);
      (arc_length(i, mid) < half ? lo : hi) = mid;
    }
    return cumulative_[i] + arc_length(i, (lo + hi) / Scalar(2));
  }

 private:
  Points2<Scalar> p_;
  VectorX<Scalar> h_;
  Points2<Scalar> m_;
  VectorX<Scalar> arc_;
  VectorX<Scalar> cumulative_;
};

/// Resamples the curve at n_out points equally spaced in spline arclength.
/// The first new sample sits half a spacing after the arclength midpoint of
/// the closing segment (N-1 -> 0), so reflection symmetries that map sample i
/// to sample N-1-i survive resampling, and an already uniform curve is a
/// fixed point.
template <typename Scalar>
ParamCurve2<Scalar> resample_arclength(const ParamCurve2<Scalar>& curve, Eigen::Index n_out) {
  const PeriodicSpline2<Scalar> spline(curve.points());
  const Scalar total = spline.length();
  const Scalar spacing = total / Scalar(n_out);
  const Scalar start = spline.segment_midpoint(curve.size() - 1);
  Points2<Scalar> out(n_out, 2);
  for (Eigen::Index k = 0; k < n_out; ++k) {
    out.row(k) = spline.at_arclength(start + (Scalar(k) + Scalar(0.5)) * spacing).transpose();
  }
  return ParamCurve2<Scalar>(std::move(out));
}

template <typename Scalar>
ParamCurve2<Scalar> resample_arclength(const ParamCurve2<Scalar>& curve) {
  return resample_arclength(curve, curve.size());
}

}  // namespace curveflow

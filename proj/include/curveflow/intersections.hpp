#pragma once

// Self-intersections of closed polylines and the loop decomposition they induce.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/error.hpp"

namespace curveflow {

/// A transversal crossing of segments seg_a < seg_b of a closed polyline.
/// Segment i joins sample i to sample i + 1 (mod N). The crossing splits the
/// sample indices into loop one = [seg_a + 1, seg_b] and loop two =
/// [seg_b + 1, seg_a] (wrapping).
template <typename Scalar>
struct CrossingData {
  Eigen::Index seg_a = 0;
  Eigen::Index seg_b = 0;
  Scalar param_a = 0;  // position of the crossing along seg_a, in [0, 1)
  Scalar param_b = 0;
  Vector2<Scalar> point = Vector2<Scalar>::Zero();

  struct Arc {
    Eigen::Index first;
    Eigen::Index last;
  };
  Arc loop_one() const { return {seg_a + 1, seg_b}; }
  Arc loop_two() const { return {seg_b + 1, seg_a}; }
};

namespace detail {

template <typename Scalar>
Scalar cross2(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline bool adjacent(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
  const Eigen::Index d = std::abs(i - j);
  return d == 0 || d == 1 || d == n - 1;
}

// Half-open parametric test: a crossing through a shared vertex is attributed
// to the segment that starts there, so it is reported once.
template <typename Scalar>
bool segment_crossing(const Points2<Scalar>& p, Eigen::Index i, Eigen::Index j, CrossingData<Scalar>& out) {
  const Eigen::Index n = p.rows();
  const Vector2<Scalar> a0 = p.row(i).transpose(), a1 = p.row((i + 1) % n).transpose();
  const Vector2<Scalar> b0 = p.row(j).transpose(), b1 = p.row((j + 1) % n).transpose();
  const Vector2<Scalar> r = a1 - a0, s = b1 - b0, qp = b0 - a0;
  const Scalar denom = cross2(r, s);
  const Scalar scale = r.norm() * s.norm();
  if (std::abs(denom) <= Scalar(1e-14) * scale) {
    if (std::abs(cross2(qp, r)) > Scalar(1e-12) * r.norm() * (qp.norm() + s.norm())) return false;
    const Scalar rr = r.squaredNorm();
    Scalar t0 = qp.dot(r) / rr, t1 = (b1 - a0).dot(r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    if (t1 > Scalar(0) && t0 < Scalar(1)) {
      std::ostringstream msg;
      msg << "segments " << i << " and " << j << " overlap collinearly";
      throw Error(ErrorKind::TangentialCrossing, msg.str());
    }
    return false;
  }
  const Scalar ta = cross2(qp, s) / denom;
  const Scalar tb = cross2(qp, r) / denom;
  if (ta < Scalar(0) || ta >= Scalar(1) || tb < Scalar(0) || tb >= Scalar(1)) return false;
  out.seg_a = i;
  out.seg_b = j;
  out.param_a = ta;
  out.param_b = tb;
  out.point = a0 + ta * r;
  return true;
}

}  // namespace detail

/// All transversal crossings of non-adjacent segments of a closed polyline,
/// each reported once, sorted by (seg_a, seg_b). Sweep over x-extents.
template <typename Scalar>
std::vector<CrossingData<Scalar>> find_self_intersections(const Points2<Scalar>& p) {
  const Eigen::Index n = p.rows();
  std::vector<CrossingData<Scalar>> found;
  if (n < 4) return found;
  std::vector<Scalar> lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    lo[i] = std::min(p(i, 0), p(j, 0));
    hi[i] = std::max(p(i, 0), p(j, 0));
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return lo[a] < lo[b]; });

  std::vector<Eigen::Index> active;
  CrossingData<Scalar> hit;
  for (const Eigen::Index cur : order) {
    std::erase_if(active, [&](Eigen::Index k) { return hi[k] < lo[cur]; });
    const Eigen::Index cn = (cur + 1) % n;
    const Scalar cy0 = std::min(p(cur, 1), p(cn, 1)), cy1 = std::max(p(cur, 1), p(cn, 1));
    for (const Eigen::Index other : active) {
      if (detail::adjacent(cur, other, n)) continue;
      const Eigen::Index on = (other + 1) % n;
      if (std::max(p(other, 1), p(on, 1)) < cy0 || std::min(p(other, 1), p(on, 1)) > cy1) continue;
      const Eigen::Index i = std::min(cur, other), j = std::max(cur, other);
      if (detail::segment_crossing(p, i, j, hit)) found.push_back(hit);
    }
    active.push_back(cur);
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.seg_a != b.seg_a ? a.seg_a < b.seg_a : a.seg_b < b.seg_b;
  });
  return found;
}

template <typename Scalar>
std::vector<CrossingData<Scalar>> find_self_intersections(const ParamCurve2<Scalar>& c) {
  return find_self_intersections<Scalar>(c.points());
}

/// The two closed sub-polylines a crossing splits the curve into; both start at the crossing point.
template <typename Scalar>
std::pair<Points2<Scalar>, Points2<Scalar>> split_loops(const Points2<Scalar>& p, const CrossingData<Scalar>& c) {
  const Eigen::Index n = p.rows();
  const Eigen::Index n1 = c.seg_b - c.seg_a;  // samples seg_a+1 .. seg_b
  const Eigen::Index n2 = n - n1;             // samples seg_b+1 .. seg_a (wrapping)
  Points2<Scalar> one(n1 + 1, 2), two(n2 + 1, 2);
  one.row(0) = c.point.transpose();
  two.row(0) = c.point.transpose();
  for (Eigen::Index k = 0; k < n1; ++k) one.row(k + 1) = p.row(c.seg_a + 1 + k);
  for (Eigen::Index k = 0; k < n2; ++k) two.row(k + 1) = p.row((c.seg_b + 1 + k) % n);
  return {std::move(one), std::move(two)};
}

template <typename Scalar>
struct LoopAreas {
  Scalar first;          // unsigned area of loop one
  Scalar second;         // unsigned area of loop two
  Scalar signed_first;   // oriented shoelace area of loop one
  Scalar signed_second;
  Scalar total() const { return first + second; }
};

/// Loop areas at a single crossing. Throws InvalidSplit when the crossing does
/// not describe a genuine split of this curve.
template <typename Scalar>
LoopAreas<Scalar> loop_areas(const ParamCurve2<Scalar>& curve, const CrossingData<Scalar>& c) {
  const Eigen::Index n = curve.size();
  const auto& p = curve.points();
  const Scalar tol = Scalar(1e-10) * curve.length();
  auto on_segment = [&](Eigen::Index i, Scalar t) {
    const Vector2<Scalar> a = p.row(i).transpose(), b = p.row((i + 1) % n).transpose();
    return t >= Scalar(0) && t <= Scalar(1) && (a + t * (b - a) - c.point).norm() <= tol;
  };
  if (c.seg_a < 0 || c.seg_b >= n || c.seg_a >= c.seg_b || detail::adjacent(c.seg_a, c.seg_b, n) ||
      !on_segment(c.seg_a, c.param_a) || !on_segment(c.seg_b, c.param_b)) {
    std::ostringstream msg;
    msg << "segments (" << c.seg_a << ", " << c.seg_b << ") do not cross at the given point";
    throw Error(ErrorKind::InvalidSplit, msg.str());
  }
  const auto [one, two] = split_loops<Scalar>(p, c);
  const Scalar s1 = signed_area<Scalar>(one), s2 = signed_area<Scalar>(two);
  return {std::abs(s1), std::abs(s2), s1, s2};
}

/// Loop areas of a curve expected to have exactly one crossing.
template <typename Scalar>
LoopAreas<Scalar> loop_areas(const ParamCurve2<Scalar>& curve) {
  const auto crossings = find_self_intersections(curve);
  if (crossings.size() != 1) {
    std::ostringstream msg;
    msg << "expected exactly one crossing, found " << crossings.size();
    throw Error(ErrorKind::InvalidSplit, msg.str());
  }
  return loop_areas(curve, crossings.front());
}

/// Sum of unsigned areas of the simple loops obtained by repeatedly splitting
/// at crossings. Equals |A_signed| for embedded curves and A1 + A2 for a
/// figure-eight.
template <typename Scalar>
Scalar total_loop_area(const Points2<Scalar>& p, int depth = 0) {
  if (depth > 64) throw Error(ErrorKind::InvalidSplit, "loop decomposition too deep");
  const auto crossings = find_self_intersections<Scalar>(p);
  if (crossings.empty()) return std::abs(signed_area<Scalar>(p));
  const auto [one, two] = split_loops<Scalar>(p, crossings.front());
  return total_loop_area<Scalar>(one, depth + 1) + total_loop_area<Scalar>(two, depth + 1);
}

template <typename Scalar>
struct CrossingAngle {
  Scalar loop_one;  // interior angle of loop one at the crossing, in [0, pi]
  Scalar loop_two;
  Scalar mean() const { return (loop_one + loop_two) / Scalar(2); }
};

/// Interior angles at a crossing, from the branch tangents interpolated along
/// the two crossing segments. Loop one leaves the crossing along branch a and
/// returns along branch b; loop two the other way round.
template <typename Scalar>
CrossingAngle<Scalar> crossing_interior_angle(const ParamCurve2<Scalar>& curve, const CrossingData<Scalar>& c) {
  const auto d = derivatives(curve);
  auto tangent = [&](Eigen::Index seg, Scalar t) {
    const Eigen::Index k = curve.wrap(seg + 1);
    Vector2<Scalar> t0(d.xu[seg], d.yu[seg]), t1(d.xu[k], d.yu[k]);
    t0.normalize();
    t1.normalize();
    return Vector2<Scalar>((Scalar(1) - t) * t0 + t * t1).normalized();
  };
  auto angle = [](const Vector2<Scalar>& u, const Vector2<Scalar>& v) {
    return std::atan2(std::abs(detail::cross2(u, v)), u.dot(v));
  };
  const Vector2<Scalar> ta = tangent(c.seg_a, c.param_a), tb = tangent(c.seg_b, c.param_b);
  return {angle(ta, -tb), angle(tb, -ta)};
}

}  // namespace curveflow

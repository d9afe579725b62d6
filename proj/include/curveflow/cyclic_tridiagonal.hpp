#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "curveflow/error.hpp"

namespace curveflow {

/// Solves the periodic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
/// for every column of rhs, by the Sherman-Morrison correction of a Thomas sweep.
/// Throws SolveFailed when a pivot vanishes to working precision.
template <typename Scalar, typename Rhs>
Eigen::Matrix<Scalar, Eigen::Dynamic, Rhs::ColsAtCompileTime> solve_cyclic_tridiagonal(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lower, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& diag,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& upper, const Eigen::MatrixBase<Rhs>& rhs) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Rhs::ColsAtCompileTime>;
  const Eigen::Index n = diag.size();
  if (n < 3 || lower.size() != n || upper.size() != n || rhs.rows() != n)
    throw Error(ErrorKind::SolveFailed, "cyclic tridiagonal system needs n >= 3 and matching sizes");

  const Scalar scale = diag.cwiseAbs().maxCoeff();
  const Scalar tiny = Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * scale;

  // A = T + w v^T with w = (gamma, 0, ..., 0, upper[n-1]) and v = (1, 0, ..., 0, lower[0] / gamma).
  const Scalar gamma = diag[0] != Scalar(0) ? -diag[0] : Scalar(-1);
  Vec b = diag;
  b[0] -= gamma;
  b[n - 1] -= lower[0] * upper[n - 1] / gamma;

  // Thomas factorization of T, shared by every right-hand side.
  Vec c_prime(n), denom(n);
  denom[0] = b[0];
  if (!(std::abs(denom[0]) > tiny)) throw Error(ErrorKind::SolveFailed, "zero pivot");
  c_prime[0] = upper[0] / denom[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    denom[i] = b[i] - lower[i] * c_prime[i - 1];
    if (!(std::abs(denom[i]) > tiny)) throw Error(ErrorKind::SolveFailed, "zero pivot");
    c_prime[i] = upper[i] / denom[i];
  }
  auto thomas = [&](const Vec& d) {
    Vec y(n);
    y[0] = d[0] / denom[0];
    for (Eigen::Index i = 1; i < n; ++i) y[i] = (d[i] - lower[i] * y[i - 1]) / denom[i];
    for (Eigen::Index i = n - 2; i >= 0; --i) y[i] -= c_prime[i] * y[i + 1];
    return y;
  };

  Vec w = Vec::Zero(n);
  w[0] = gamma;
  w[n - 1] = upper[n - 1];
  const Vec z = thomas(w);
  const Scalar vz_den = Scalar(1) + z[0] + lower[0] / gamma * z[n - 1];
  if (!(std::abs(vz_den) > Eigen::NumTraits<Scalar>::epsilon()))
    throw Error(ErrorKind::SolveFailed, "singular periodic correction");

  Mat out(n, rhs.cols());
  for (Eigen::Index col = 0; col < rhs.cols(); ++col) {
    const Vec y = thomas(rhs.col(col));
    const Scalar vy = y[0] + lower[0] / gamma * y[n - 1];
    out.col(col) = y - (vy / vz_den) * z;
  }
  if (!out.allFinite()) throw Error(ErrorKind::SolveFailed, "non-finite solution");
  return out;
}

}  // namespace curveflow

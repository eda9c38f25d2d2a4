#pragma once

// Independent reference computations used only by tests. None of these
// share code paths with the library routines they check.

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "lcuwalk/linalg.hpp"
#include "lcuwalk/reference.hpp"

namespace oracle {

using lcuwalk::cplx;
using lcuwalk::CMatrix;
using lcuwalk::CVector;

/// e^{-iHt} by scaling and squaring with a 30-term Taylor series.
inline CMatrix expm_taylor(const CMatrix& h, double t) {
  const CMatrix a = cplx{0.0, -t} * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const CMatrix b = a / std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(h.rows(), h.cols());
  CMatrix sum = term;
  for (int i = 1; i <= 30; ++i) {
    term = term * b / double(i);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// sum_{m=-k}^{k} a_m U^m with explicit powers.
template <typename Coeffs>
CMatrix direct_lcu_sum(const CMatrix& u, const Coeffs& c) {
  CMatrix v = CMatrix::Zero(u.rows(), u.cols());
  for (int m = -c.k; m <= c.k; ++m) {
    CMatrix p = CMatrix::Identity(u.rows(), u.cols());
    const CMatrix base = m >= 0 ? u : CMatrix(u.adjoint());
    for (int i = 0; i < std::abs(m); ++i) p = p * base;
    v += c.at(m) * p;
  }
  return v;
}

/// ||rho_a - rho_b||_1 from the full density matrices.
inline double trace_distance_dense(const CVector& a, const CVector& b) {
  const CMatrix diff = a * a.adjoint() - b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Brute-force scan for the smallest l with 1/sin(pi/(2(2l+1))) >= a.
inline int scan_l(double a) {
  for (int l = 0; l <= 10000; ++l)
    if (1.0 / std::sin(M_PI / (2.0 * (2.0 * l + 1.0))) >= a - 1e-12) return l;
  return -1;
}

/// Largest N in [1, limit] with eps < 0.5 |sin(td/N)|^N, scanning every N.
inline std::int64_t lower_bound_scan(double td, double eps, std::int64_t limit) {
  std::int64_t best = 0;
  for (std::int64_t n = 1; n <= limit; ++n)
    if (eps < 0.5 * std::pow(std::abs(std::sin(td / double(n))), double(n))) best = n;
  return best;
}

inline double bessel_series(double z, int m) { return lcuwalk::reference::bessel_series(z, m); }

}  // namespace oracle

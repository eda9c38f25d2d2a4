#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lcuwalk {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CSparse = Eigen::SparseMatrix<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// ||A^dag A - I|| in spectral norm; measures departure from an isometry.
double isometry_residual(const CMatrix& a);

/// Hermitian matrix function f(A) = Q f(Lambda) Q^dag.
template <typename F>
CMatrix hermitian_function(const CMatrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const auto& q = es.eigenvectors();
  Eigen::VectorXcd fx(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) fx[i] = f(es.eigenvalues()[i]);
  return q * fx.asDiagonal() * q.adjoint();
}

/// Smallest power of two >= v (v >= 1).
std::int64_t next_pow2(std::int64_t v);

}  // namespace lcuwalk

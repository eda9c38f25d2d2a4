#include "lcuwalk/linalg.hpp"

#include <cmath>
#include <numbers>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/rng.hpp"

namespace lcuwalk {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Range: return "range";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Hermiticity: return "hermiticity";
    case ErrorKind::Sparsity: return "sparsity";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()[0];
}

double isometry_residual(const CMatrix& a) {
  return spectral_norm(a.adjoint() * a - CMatrix::Identity(a.cols(), a.cols()));
}

std::int64_t next_pow2(std::int64_t v) {
  std::int64_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

CMatrix random_hermitian(Eigen::Index dim, double norm, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  CMatrix h = (g + g.adjoint()) * 0.5;
  const double cur = spectral_norm(h);
  return cur > 0 ? CMatrix(h * (norm / cur)) : h;
}

CVector random_state(Eigen::Index dim, Rng& rng) {
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

}  // namespace lcuwalk

#include "lcuwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <fmt/format.h>

#include "lcuwalk/errors.hpp"

namespace lcuwalk {

namespace {

double default_x(const SparseHamiltonian& h, std::optional<double> x) {
  if (x) return *x;
  return h.h_max() > 0.0 ? h.h_max() : 1.0;
}

// Principal root with -0 imaginary parts read as +0, so the negative real
// axis always maps to +i and the mirrored entries pair up.
cplx principal_sqrt(cplx v) { return std::sqrt(cplx{v.real(), v.imag() + 0.0}); }

// Amplitude on |l>|0> inside |phi_j0>, before the 1/sqrt(d_pow2) factor.
cplx coupling_amplitude(cplx w, Eigen::Index j, Eigen::Index l, double x) {
  return j <= l ? principal_sqrt(std::conj(w) / x) : std::conj(principal_sqrt(w / x));
}

}  // namespace

WalkSystem::WalkSystem(SparseHamiltonian h, std::optional<double> x)
    : h_(std::move(h)), x_(default_x(h_, x)), d_pow2_(static_cast<int>(next_pow2(h_.d()))) {
  if (!(x_ > 0.0)) throw ParameterError("walk: X must be positive");
  if (x_ < h_.h_max())
    throw ParameterError(fmt::format("walk: X = {} is below ||H||_max = {}", x_, h_.h_max()));
  if (required_diagonal_shift(h_) > 0.0)
    throw ParameterError("walk: H has a negative diagonal entry; shift it first");

  const Eigen::Index n_sys = h_.dim();
  const Eigen::Index ns = dim_small();
  const Eigen::Index nb = dim_big();
  const double slot_amp = 1.0 / std::sqrt(double(d_pow2_));

  std::vector<Eigen::Triplet<cplx>> trip;
  std::vector<Eigen::Triplet<cplx>> trip0;
  for (Eigen::Index j = 0; j < n_sys; ++j) {
    const auto& row = h_.row(j);
    const auto occupied = static_cast<Eigen::Index>(row.size());
    const Eigen::Index col0 = small_index(j, 0);
    const Eigen::Index base = col0 * ns;  // |j>|0> in the first register
    for (Eigen::Index slot = 1; slot <= d_pow2_; ++slot) {
      const Eigen::Index l = h_.slot_column(j, slot);
      if (slot <= occupied) {
        const cplx w = h_.entries()(j, l);
        const cplx a0 = coupling_amplitude(w, j, l, x_) * slot_amp;
        const double a1 = std::sqrt(std::max(0.0, 1.0 - std::abs(w) / x_)) * slot_amp;
        trip.emplace_back(base + small_index(l, 0), col0, a0);
        trip0.emplace_back(base + small_index(l, 0), j, a0);
        if (a1 != 0.0) {
          trip.emplace_back(base + small_index(l, 1), col0, a1);
          trip0.emplace_back(base + small_index(l, 1), j, a1);
        }
      } else {
        trip.emplace_back(base + small_index(l, 1), col0, slot_amp);
        trip0.emplace_back(base + small_index(l, 1), j, slot_amp);
      }
    }
    const Eigen::Index col1 = small_index(j, 1);
    trip.emplace_back(big_index(col1, small_index(0, 1)), col1, cplx{1.0});
  }
  t_.resize(nb, ns);
  t_.setFromTriplets(trip.begin(), trip.end());
  t0_.resize(nb, n_sys);
  t0_.setFromTriplets(trip0.begin(), trip0.end());

  Eigen::VectorX<Eigen::Index> perm(nb);
  for (Eigen::Index s1 = 0; s1 < ns; ++s1)
    for (Eigen::Index s2 = 0; s2 < ns; ++s2) perm[big_index(s1, s2)] = big_index(s2, s1);
  s_.indices() = perm;
}

CMatrix WalkSystem::apply_swap(const CMatrix& block) const { return s_ * block; }

CMatrix WalkSystem::apply_walk(const CMatrix& block) const {
  CMatrix reflected = 2.0 * (t_ * (t_.adjoint() * block)) - block;
  return kI * (s_ * reflected);
}

CMatrix WalkSystem::dense_isometry() const {
  if (dim_big() > kDenseLimit) throw ParameterError("walk: dense T exceeds the size limit");
  return CMatrix(t_);
}

CMatrix WalkSystem::dense_swap() const {
  if (dim_big() > kDenseLimit) throw ParameterError("walk: dense S exceeds the size limit");
  CMatrix s = CMatrix::Zero(dim_big(), dim_big());
  for (Eigen::Index i = 0; i < dim_big(); ++i) s(s_.indices()[i], i) = 1.0;
  return s;
}

CMatrix WalkSystem::dense_walk() const {
  if (dim_big() > kDenseLimit) throw ParameterError("walk: dense U exceeds the size limit");
  return apply_walk(CMatrix::Identity(dim_big(), dim_big()));
}

CMatrix build_isometry(const SparseHamiltonian& h, double x) {
  return WalkSystem(h, x).dense_isometry();
}

CMatrix build_swap(Eigen::Index system_dim) {
  const Eigen::Index ns = 2 * system_dim;
  const Eigen::Index nb = ns * ns;
  if (nb > WalkSystem::kDenseLimit) throw ParameterError("walk: dense S exceeds the size limit");
  CMatrix s = CMatrix::Zero(nb, nb);
  for (Eigen::Index a = 0; a < ns; ++a)
    for (Eigen::Index b = 0; b < ns; ++b) s(b * ns + a, a * ns + b) = 1.0;
  return s;
}

CMatrix build_walk(const CMatrix& t, const CMatrix& s) {
  const Eigen::Index nb = t.rows();
  return kI * s * (2.0 * t * t.adjoint() - CMatrix::Identity(nb, nb));
}

cplx walk_eigenvalue(double nu, int branch) {
  const double c = std::sqrt(std::max(0.0, 1.0 - nu * nu));
  return {branch >= 0 ? c : -c, nu};
}

CMatrix WalkSubspace::nu_operator() const {
  CMatrix a = (walk - walk.adjoint()) / (2.0 * kI);
  return (a + a.adjoint()) * 0.5;
}

WalkSubspace reduce_to_walk_subspace(const WalkSystem& ws) {
  const Eigen::Index n_sys = ws.dim_system();
  const CMatrix t0 = CMatrix(ws.isometry_b0());
  CMatrix stacked(ws.dim_big(), 2 * n_sys);
  stacked.leftCols(n_sys) = t0;
  stacked.rightCols(n_sys) = ws.apply_swap(t0);

  // SVD on the rows that carry support; everything else is zero.
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < stacked.rows(); ++i)
    if (stacked.row(i).squaredNorm() > 0.0) support.push_back(i);
  CMatrix compact(static_cast<Eigen::Index>(support.size()), stacked.cols());
  for (std::size_t i = 0; i < support.size(); ++i)
    compact.row(static_cast<Eigen::Index>(i)) = stacked.row(support[i]);

  Eigen::BDCSVD<CMatrix> svd(compact, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > 1e-10) ++rank;

  WalkSubspace out;
  out.basis = CMatrix::Zero(ws.dim_big(), rank);
  for (std::size_t i = 0; i < support.size(); ++i)
    out.basis.row(support[i]) = svd.matrixU().row(static_cast<Eigen::Index>(i)).head(rank);

  const CMatrix u_basis = ws.apply_walk(out.basis);
  out.walk = out.basis.adjoint() * u_basis;
  out.embed = out.basis.adjoint() * t0;
  out.unitarity_residual = isometry_residual(out.walk);
  out.invariance_residual = spectral_norm(u_basis - out.basis * out.walk);
  return out;
}

SpectralReport spectral_check(const WalkSystem& ws, double tol, bool full_operator) {
  const auto& h = ws.hamiltonian();
  Eigen::SelfAdjointEigenSolver<CMatrix> hs(h.entries());

  CVector walk_eigs;
  if (full_operator) {
    Eigen::ComplexEigenSolver<CMatrix> es(ws.dense_walk(), false);
    walk_eigs = es.eigenvalues();
  } else {
    const auto sub = reduce_to_walk_subspace(ws);
    Eigen::ComplexEigenSolver<CMatrix> es(sub.walk, false);
    walk_eigs = es.eigenvalues();
  }

  auto nearest = [&](cplx mu) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < walk_eigs.size(); ++i) best = std::min(best, std::abs(walk_eigs[i] - mu));
    return best;
  };

  const CMatrix t0 = CMatrix(ws.isometry_b0());
  const double scale = ws.x() * ws.d_pow2();
  SpectralReport report;
  report.full_operator = full_operator;
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    const double lambda = hs.eigenvalues()[i];
    const CVector lam = hs.eigenvectors().col(i);
    SpectralEntry e{};
    e.lambda = lambda;
    e.nu = lambda / scale;
    e.mu_plus = walk_eigenvalue(e.nu, +1);
    e.mu_minus = walk_eigenvalue(e.nu, -1);
    e.mismatch_plus = nearest(e.mu_plus);
    e.mismatch_minus = nearest(e.mu_minus);

    const CVector tv = t0 * lam;
    const CVector stv = ws.apply_swap(tv);
    auto residual = [&](cplx mu) {
      const CVector v = tv + kI * mu * stv;
      const double norm = v.norm();
      if (norm < 1e-6) return 0.0;  // |nu| = 1: both branches collapse onto T|lambda>
      return (ws.apply_walk(v) - mu * v).norm() / norm;
    };
    e.residual_plus = residual(e.mu_plus);
    e.residual_minus = residual(e.mu_minus);

    report.max_mismatch = std::max({report.max_mismatch, e.mismatch_plus, e.mismatch_minus});
    report.max_residual = std::max({report.max_residual, e.residual_plus, e.residual_minus});
    report.entries.push_back(e);

    if (std::max(e.mismatch_plus, e.mismatch_minus) > tol ||
        std::max(e.residual_plus, e.residual_minus) > tol)
      throw VerificationError(fmt::format(
          "walk spectrum: lambda = {:.17g} (nu = {:.6g}) mismatch {:.3e}/{:.3e}, residual {:.3e}/{:.3e}",
          lambda, e.nu, e.mismatch_plus, e.mismatch_minus, e.residual_plus, e.residual_minus));
  }
  return report;
}

}  // namespace lcuwalk

#pragma once

#include <optional>
#include <vector>

#include "lcuwalk/hamiltonian.hpp"
#include "lcuwalk/linalg.hpp"

namespace lcuwalk {

/// Operators of the Szegedy-style walk on C^{2N} (x) C^{2N}.
///
/// Index conventions: a "small" index is 2j + b for system state j and
/// ancilla bit b; a "big" index is small1 * 2N + small2, the first factor
/// being the original register and the second the duplicated one.
///
/// T is the controlled state preparation taking |j>|0> to |j>|0>|phi_j0>
/// and |j>|1> to |j>|1>|0>|1>. Each |phi_j0> spreads amplitude
/// 1/sqrt(d_pow2) over d_pow2 slots: occupied slots carry
/// sqrt(conj(H_jl)/X)|l>|0> + sqrt(1 - |H_jl|/X)|l>|1>, padding slots carry
/// |l>|1> on the column chosen by SparseHamiltonian::slot_column. The square
/// root uses the principal branch for j <= l and the conjugate of the mirrored
/// amplitude for j > l, so the b = 0 block of T^dag S T is exactly H/(X d_pow2)
/// even for negative real couplings. The diagonal of that block is |amp|^2, so
/// H must have a non-negative diagonal (see required_diagonal_shift).
class WalkSystem {
 public:
  /// X defaults to ||H||_max (or 1 for the zero matrix). Throws
  /// ParameterError if X < ||H||_max, X <= 0, or H has a negative diagonal.
  explicit WalkSystem(SparseHamiltonian h, std::optional<double> x = std::nullopt);

  const SparseHamiltonian& hamiltonian() const noexcept { return h_; }
  double x() const noexcept { return x_; }
  int d_pow2() const noexcept { return d_pow2_; }
  Eigen::Index dim_system() const noexcept { return h_.dim(); }
  Eigen::Index dim_small() const noexcept { return 2 * h_.dim(); }
  Eigen::Index dim_big() const noexcept { return dim_small() * dim_small(); }

  Eigen::Index small_index(Eigen::Index j, int b) const noexcept { return 2 * j + b; }
  Eigen::Index big_index(Eigen::Index s1, Eigen::Index s2) const noexcept {
    return s1 * dim_small() + s2;
  }

  /// dim_big x dim_small isometry, sparse.
  const CSparse& isometry() const noexcept { return t_; }
  /// Columns of T fed by ancilla |0>, i.e. T restricted to |j>|0> inputs.
  const CSparse& isometry_b0() const noexcept { return t0_; }
  /// Register swap as a permutation of big indices.
  const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, Eigen::Index>& swap() const noexcept {
    return s_;
  }

  /// U v = i S (2 T T^dag - 1) v for a block of column vectors.
  CMatrix apply_walk(const CMatrix& block) const;
  CMatrix apply_swap(const CMatrix& block) const;

  /// Dense forms, limited to dim_big <= kDenseLimit.
  CMatrix dense_isometry() const;
  CMatrix dense_swap() const;
  CMatrix dense_walk() const;

  static constexpr Eigen::Index kDenseLimit = 4096;

 private:
  SparseHamiltonian h_;
  double x_;
  int d_pow2_;
  CSparse t_;
  CSparse t0_;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, Eigen::Index> s_;
};

/// Dense T for (H, X).
CMatrix build_isometry(const SparseHamiltonian& h, double x);
/// Dense register swap on (2N)^2 states for an N-state system.
CMatrix build_swap(Eigen::Index system_dim);
/// U = i S (2 T T^dag - 1).
CMatrix build_walk(const CMatrix& t, const CMatrix& s);

/// Predicted walk eigenvalue: +1 branch gives sqrt(1 - nu^2) + i nu,
/// -1 branch gives -sqrt(1 - nu^2) + i nu.
cplx walk_eigenvalue(double nu, int branch);

/// U restricted to its invariant subspace span{T|j,0>, S T|j,0>}.
struct WalkSubspace {
  CMatrix basis;        // dim_big x r, orthonormal columns
  CMatrix walk;         // r x r, U in that basis
  CMatrix embed;        // r x N, coordinates of T|j,0>
  double unitarity_residual = 0.0;   // ||walk^dag walk - I||
  double invariance_residual = 0.0;  // ||U basis - basis walk||

  Eigen::Index rank() const noexcept { return walk.rows(); }
  /// (U - U^dag)/(2i): Hermitian, eigenvalues are the walk's nu values.
  CMatrix nu_operator() const;
};

WalkSubspace reduce_to_walk_subspace(const WalkSystem& ws);

struct SpectralEntry {
  double lambda;
  double nu;
  cplx mu_plus;
  cplx mu_minus;
  double mismatch_plus;   // distance to nearest computed eigenvalue of U
  double mismatch_minus;
  double residual_plus;   // ||U v - mu v|| / ||v|| for v = (T + i mu S T)|lambda,0>
  double residual_minus;
};

struct SpectralReport {
  std::vector<SpectralEntry> entries;
  double max_mismatch = 0.0;
  double max_residual = 0.0;
  bool full_operator = false;  // true when eig(U) came from the dense U
};

/// For every eigenvalue of H, locate mu+/- among the eigenvalues of U and
/// check the eigenvector formula. Eigenvalues come from the walk subspace
/// unless `full_operator` is set (dense U, small systems only). Throws
/// VerificationError naming the offending lambda when either measure
/// exceeds `tol`.
SpectralReport spectral_check(const WalkSystem& ws, double tol = 1e-9,
                              bool full_operator = false);

}  // namespace lcuwalk

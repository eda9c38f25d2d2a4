#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lcuwalk/linalg.hpp"

namespace lcuwalk {

/// A Hermitian N x N matrix (N = 2^n) with at most d nonzeros per row.
///
/// Storage is dense because every instance this library handles fits in
/// memory; the ascending per-row column lists F_j are kept alongside so the
/// two black-box oracles can be answered without scanning. Values are
/// immutable after construction.
class SparseHamiltonian {
 public:
  /// Validates Hermiticity (bit-exact), the sparsity bound and the
  /// dimension. Throws HermiticityError / SparsityError / ParameterError.
  SparseHamiltonian(int n, int d, CMatrix entries);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& entries() const noexcept { return entries_; }

  /// ||H||_max, the largest entry magnitude.
  double h_max() const noexcept { return h_max_; }
  /// ||H||, the spectral norm (largest |eigenvalue|).
  double h_spec() const noexcept { return h_spec_; }

  /// Ascending column indices of the nonzeros in row j.
  const std::vector<std::int64_t>& row(std::int64_t j) const;

  /// Largest number of nonzeros actually present in any row.
  int max_row_nonzeros() const noexcept { return max_row_nnz_; }

  /// Column reached by slot `slot` (1-based, any slot >= 1) of row j.
  /// Occupied slots return the nonzero columns in ascending order. The
  /// first padding slot returns j itself when (j, j) is not already a
  /// nonzero; remaining padding slots take the smallest unused columns.
  /// The map slot -> column is injective for slot <= dim().
  std::int64_t slot_column(std::int64_t j, std::int64_t slot) const;

 private:
  int n_;
  int d_;
  CMatrix entries_;
  std::vector<std::vector<std::int64_t>> rows_;
  double h_max_ = 0.0;
  double h_spec_ = 0.0;
  int max_row_nnz_ = 0;
};

/// O_H: the stored entry H_{jk}. Throws RangeError on bad indices.
cplx entry_oracle(const SparseHamiltonian& h, std::int64_t j, std::int64_t k);

/// O_F: column of the l-th (1-based) nonzero of row j, ascending; padding
/// convention per SparseHamiltonian::slot_column. Throws RangeError when
/// l is outside [1, d] or j outside [0, N).
std::int64_t nonzero_index_oracle(const SparseHamiltonian& h, std::int64_t j,
                                  std::int64_t l);

struct Norms {
  double h_max;
  double h_spec;
};

Norms norms(const SparseHamiltonian& h);

/// Seeded random d-sparse Hermitian matrix on n qubits.
///
/// Every row carries a real, non-negative diagonal entry; the remaining
/// d - 1 slots of each row are filled greedily with complex off-diagonal
/// pairs in a seeded random order. One entry is pinned to exactly
/// `h_max_target` so ||H||_max equals the target.
SparseHamiltonian make_random_sparse(int n, int d, double h_max_target,
                                     std::uint64_t seed);

struct ParitySpec {
  int path_length;          // N, the number of bits
  std::vector<int> bits;    // x_1..x_N, each 0 or 1
  int blowup = 1;           // copies per vertex (1 = none)

  /// Parses "1011" style strings.
  static ParitySpec from_bits(const std::string& bits, int blowup = 1);
};

enum class ParityVariant { H1, H2 };

/// The weighted path H1 (N+1 states) or its bit-string twisted double H2
/// (2(N+1) states, vertex (i, j) at index 2i + j), zero-padded to the next
/// power of two.
SparseHamiltonian make_parity_path(const ParitySpec& spec, ParityVariant variant);

/// H2 with every vertex replaced by `blowup` copies joined by complete
/// bipartite couplings, entries divided by N. Vertex (i, j, l) sits at
/// index (2i + j) * blowup + l. Sparsity bound is 2 * blowup.
SparseHamiltonian make_blown_up_parity(const ParitySpec& spec);

/// Index of parity vertex (i, j, l) in the embedding used above.
std::int64_t parity_index(const ParitySpec& spec, int i, int j, int l = 0);

/// Uniform superposition over the copies of vertex (i, j) (|i, j, *>).
CVector parity_uniform_state(const ParitySpec& spec, const SparseHamiltonian& h,
                             int i, int j);

/// x_1 xor ... xor x_N.
int parity_of(const ParitySpec& spec);

/// Time after which the blown-up instance carries |0,0,*> to
/// |N, parity, *>: N*pi/(2*blowup). The unscaled H1/H2 paths need pi/2.
double parity_time(const ParitySpec& spec);

/// Amount c >= 0 with H + cI having a non-negative diagonal.
double required_diagonal_shift(const SparseHamiltonian& h);

/// H + cI, with the sparsity bound raised if a row gains a diagonal.
SparseHamiltonian shifted(const SparseHamiltonian& h, double c);

/// JSON: {"n": int, "d": int, "entries": [[row, col, re, im], ...]} with
/// row <= col; floats written with 17 significant digits.
std::string to_json(const SparseHamiltonian& h);
SparseHamiltonian from_json(const std::string& text);

void save_json(const SparseHamiltonian& h, const std::filesystem::path& path);
SparseHamiltonian load_json(const std::filesystem::path& path);

}  // namespace lcuwalk

#include "lcuwalk/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/rng.hpp"

namespace lcuwalk {

namespace {

int log2_exact(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

}  // namespace

SparseHamiltonian::SparseHamiltonian(int n, int d, CMatrix entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  if (n < 0 || n > 20) throw ParameterError("qubit count must be in [0, 20]");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (entries_.rows() != dim || entries_.cols() != dim)
    throw ParameterError("entries must be a 2^n x 2^n matrix");
  if (d < 1) throw ParameterError("sparsity d must be positive");
  if (d > dim) throw ParameterError("sparsity d exceeds the dimension");

  for (Eigen::Index j = 0; j < dim; ++j) {
    if (entries_(j, j).imag() != 0.0)
      throw HermiticityError("diagonal entry " + std::to_string(j) + " is not real");
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      if (entries_(j, k) != std::conj(entries_(k, j)))
        throw HermiticityError("entries (" + std::to_string(j) + "," +
                               std::to_string(k) + ") and its mirror are not conjugate");
    }
  }

  rows_.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    auto& r = rows_[static_cast<std::size_t>(j)];
    for (Eigen::Index k = 0; k < dim; ++k) {
      const cplx v = entries_(j, k);
      if (v != cplx{}) {
        r.push_back(k);
        h_max_ = std::max(h_max_, std::abs(v));
      }
    }
    if (static_cast<int>(r.size()) > d)
      throw SparsityError("row " + std::to_string(j) + " holds " +
                          std::to_string(r.size()) + " nonzeros but d = " +
                          std::to_string(d));
    max_row_nnz_ = std::max(max_row_nnz_, static_cast<int>(r.size()));
  }

  if (h_max_ > 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
    h_spec_ = es.eigenvalues().cwiseAbs().maxCoeff();
  }
}

const std::vector<std::int64_t>& SparseHamiltonian::row(std::int64_t j) const {
  if (j < 0 || j >= dim()) throw RangeError("row index out of range");
  return rows_[static_cast<std::size_t>(j)];
}

std::int64_t SparseHamiltonian::slot_column(std::int64_t j, std::int64_t slot) const {
  const auto& r = row(j);
  if (slot < 1 || slot > dim()) throw RangeError("slot out of range");
  const auto occupied = static_cast<std::int64_t>(r.size());
  if (slot <= occupied) return r[static_cast<std::size_t>(slot - 1)];

  std::int64_t pad = slot - occupied;  // 1-based padding position
  const bool self_free = !std::binary_search(r.begin(), r.end(), j);
  if (self_free) {
    if (pad == 1) return j;
    --pad;
  }
  for (std::int64_t c = 0; c < dim(); ++c) {
    if (c == j && self_free) continue;
    if (std::binary_search(r.begin(), r.end(), c)) continue;
    if (--pad == 0) return c;
  }
  throw RangeError("slot exceeds the available columns");
}

cplx entry_oracle(const SparseHamiltonian& h, std::int64_t j, std::int64_t k) {
  if (j < 0 || k < 0 || j >= h.dim() || k >= h.dim())
    throw RangeError("entry_oracle: index out of range");
  return h.entries()(j, k);
}

std::int64_t nonzero_index_oracle(const SparseHamiltonian& h, std::int64_t j,
                                  std::int64_t l) {
  if (j < 0 || j >= h.dim()) throw RangeError("nonzero_index_oracle: row out of range");
  if (l < 1 || l > h.d()) throw RangeError("nonzero_index_oracle: slot outside [1, d]");
  return h.slot_column(j, l);
}

Norms norms(const SparseHamiltonian& h) { return {h.h_max(), h.h_spec()}; }

SparseHamiltonian make_random_sparse(int n, int d, double h_max_target,
                                     std::uint64_t seed) {
  if (n < 1 || n > 12) throw ParameterError("make_random_sparse: n must be in [1, 12]");
  const std::int64_t dim = std::int64_t{1} << n;
  if (d < 1 || d > dim) throw ParameterError("make_random_sparse: need 1 <= d <= 2^n");
  if (!(h_max_target > 0.0)) throw ParameterError("make_random_sparse: h_max_target must be positive");

  Rng rng(seed);
  CMatrix m = CMatrix::Zero(dim, dim);
  std::vector<int> degree(static_cast<std::size_t>(dim), 1);
  for (std::int64_t j = 0; j < dim; ++j) m(j, j) = rng.uniform(0.1, 1.0) * h_max_target;

  auto shuffled = [&](std::vector<std::int64_t> v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[rng.below(i)]);
    return v;
  };

  if (d >= 2) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(dim));
    std::iota(all.begin(), all.end(), 0);
    for (std::int64_t j : shuffled(all)) {
      for (std::int64_t k : shuffled(all)) {
        if (degree[static_cast<std::size_t>(j)] >= d) break;
        if (k == j || m(j, k) != cplx{} || degree[static_cast<std::size_t>(k)] >= d) continue;
        const double mag = rng.uniform(0.3, 1.0) * h_max_target;
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        m(j, k) = std::polar(mag, phase);
        m(k, j) = std::conj(m(j, k));
        ++degree[static_cast<std::size_t>(j)];
        ++degree[static_cast<std::size_t>(k)];
      }
    }
  }

  Eigen::Index pr = 0, pc = 0;
  m.cwiseAbs().maxCoeff(&pr, &pc);
  if (pr == pc) {
    m(pr, pc) = h_max_target;
  } else {
    m(pr, pc) = std::polar(h_max_target, std::arg(m(pr, pc)));
    m(pc, pr) = std::conj(m(pr, pc));
  }
  return SparseHamiltonian(n, d, std::move(m));
}

ParitySpec ParitySpec::from_bits(const std::string& bits, int blowup) {
  ParitySpec spec;
  spec.path_length = static_cast<int>(bits.size());
  spec.blowup = blowup;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParameterError("bit string may only contain 0 and 1");
    spec.bits.push_back(c - '0');
  }
  return spec;
}

namespace {

void validate(const ParitySpec& spec) {
  if (spec.path_length < 1) throw ParameterError("parity: N must be positive");
  if (static_cast<int>(spec.bits.size()) != spec.path_length)
    throw ParameterError("parity: bit string length must equal N");
  if (spec.blowup < 1) throw ParameterError("parity: blow-up factor must be >= 1");
  for (int b : spec.bits)
    if (b != 0 && b != 1) throw ParameterError("parity: bits must be 0 or 1");
}

SparseHamiltonian finish(CMatrix m) {
  const int n = log2_exact(m.rows());
  int nnz = 1;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    int c = 0;
    for (Eigen::Index k = 0; k < m.cols(); ++k) c += m(j, k) != cplx{} ? 1 : 0;
    nnz = std::max(nnz, c);
  }
  return SparseHamiltonian(n, nnz, std::move(m));
}

double path_weight(int i, int big_n) { return std::sqrt(double(i) * double(big_n - i + 1)); }

}  // namespace

SparseHamiltonian make_parity_path(const ParitySpec& spec, ParityVariant variant) {
  const int big_n = spec.path_length;
  if (big_n < 1) throw ParameterError("parity: N must be positive");
  if (variant == ParityVariant::H1) {
    const auto dim = next_pow2(big_n + 1);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int i = 1; i <= big_n; ++i) m(i - 1, i) = m(i, i - 1) = path_weight(i, big_n);
    return finish(std::move(m));
  }
  ParitySpec flat = spec;
  flat.blowup = 1;
  validate(flat);
  const auto dim = next_pow2(2 * (big_n + 1));
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 1; i <= big_n; ++i) {
    for (int j = 0; j <= 1; ++j) {
      const auto a = parity_index(flat, i - 1, j);
      const auto b = parity_index(flat, i, j ^ spec.bits[static_cast<std::size_t>(i - 1)]);
      m(a, b) = m(b, a) = path_weight(i, big_n);
    }
  }
  return finish(std::move(m));
}

SparseHamiltonian make_blown_up_parity(const ParitySpec& spec) {
  validate(spec);
  const int big_n = spec.path_length;
  const int copies = spec.blowup;
  const auto dim = next_pow2(std::int64_t{2} * (big_n + 1) * copies);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 1; i <= big_n; ++i) {
    const double w = path_weight(i, big_n) / big_n;
    for (int j = 0; j <= 1; ++j) {
      const int jn = j ^ spec.bits[static_cast<std::size_t>(i - 1)];
      for (int l = 0; l < copies; ++l) {
        for (int lp = 0; lp < copies; ++lp) {
          const auto a = parity_index(spec, i - 1, j, l);
          const auto b = parity_index(spec, i, jn, lp);
          m(a, b) = m(b, a) = w;
        }
      }
    }
  }
  return finish(std::move(m));
}

std::int64_t parity_index(const ParitySpec& spec, int i, int j, int l) {
  return (std::int64_t{2} * i + j) * spec.blowup + l;
}

CVector parity_uniform_state(const ParitySpec& spec, const SparseHamiltonian& h,
                             int i, int j) {
  CVector v = CVector::Zero(h.dim());
  const double amp = 1.0 / std::sqrt(double(spec.blowup));
  for (int l = 0; l < spec.blowup; ++l) v[parity_index(spec, i, j, l)] = amp;
  return v;
}

int parity_of(const ParitySpec& spec) {
  int p = 0;
  for (int b : spec.bits) p ^= b;
  return p;
}

double parity_time(const ParitySpec& spec) {
  return spec.path_length * std::numbers::pi / (2.0 * spec.blowup);
}

double required_diagonal_shift(const SparseHamiltonian& h) {
  const double lowest = h.entries().diagonal().real().minCoeff();
  return lowest < 0.0 ? -lowest : 0.0;
}

SparseHamiltonian shifted(const SparseHamiltonian& h, double c) {
  CMatrix m = h.entries();
  m.diagonal().array() += c;
  int nnz = 0;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    int count = 0;
    for (Eigen::Index k = 0; k < m.cols(); ++k) count += m(j, k) != cplx{} ? 1 : 0;
    nnz = std::max(nnz, count);
  }
  return SparseHamiltonian(h.n(), std::max(h.d(), nnz), std::move(m));
}

}  // namespace lcuwalk

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <queue>
#include <set>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/hamiltonian.hpp"
#include "lcuwalk/simulator.hpp"

using namespace lcuwalk;

namespace {

void check_hermitian_sparse(const SparseHamiltonian& h) {
  for (Eigen::Index j = 0; j < h.dim(); ++j) {
    int nnz = 0;
    for (Eigen::Index k = 0; k < h.dim(); ++k) {
      CHECK(entry_oracle(h, j, k) == std::conj(entry_oracle(h, k, j)));
      nnz += entry_oracle(h, j, k) != cplx{} ? 1 : 0;
    }
    CHECK(nnz <= h.d());
    const auto& row = h.row(j);
    CHECK(std::is_sorted(row.begin(), row.end()));
  }
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lcuwalk_test_" + name);
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("entry oracle on the zero matrix and the H1 path") {
  const SparseHamiltonian zero(1, 1, CMatrix::Zero(2, 2));
  CHECK(entry_oracle(zero, 0, 0) == cplx{0.0});

  const auto h1 = make_parity_path(ParitySpec::from_bits("0000"), ParityVariant::H1);
  CHECK(entry_oracle(h1, 0, 1).real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(entry_oracle(h1, -1, 0), RangeError);
  CHECK_THROWS_AS(entry_oracle(h1, 0, h1.dim()), RangeError);
}

TEST_CASE("random instances are Hermitian, sparse and deterministic") {
  for (std::uint64_t seed : {1u, 7u, 42u}) {
    const auto h = make_random_sparse(3, 4, 1.0, seed);
    check_hermitian_sparse(h);
    CHECK(h.h_max() == doctest::Approx(1.0).epsilon(0.1));
    CHECK(h.h_spec() <= h.d() * h.h_max() + 1e-12);
  }
  const auto a = make_random_sparse(3, 4, 1.0, 42);
  const auto b = make_random_sparse(3, 4, 1.0, 42);
  CHECK(a.entries() == b.entries());
  check_hermitian_sparse(make_random_sparse(2, 2, 1.0, 7));
}

TEST_CASE("d = 1 random instance is a real diagonal") {
  const auto h = make_random_sparse(1, 1, 1.0, 3);
  CHECK(h.entries()(0, 1) == cplx{0.0});
  CHECK(h.entries()(0, 0).imag() == 0.0);
  CHECK(h.entries()(1, 1).imag() == 0.0);
}

TEST_CASE("random generator rejects infeasible sparsity") {
  CHECK_THROWS_AS(make_random_sparse(1, 3, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(make_random_sparse(2, 2, 0.0, 1), ParameterError);
}

TEST_CASE("nonzero index oracle") {
  CMatrix diag = CMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) diag(i, i) = 1.0 + i;
  const SparseHamiltonian hd(3, 1, diag);
  CHECK(nonzero_index_oracle(hd, 5, 1) == 5);
  CHECK_THROWS_AS(nonzero_index_oracle(hd, 5, 0), RangeError);
  CHECK_THROWS_AS(nonzero_index_oracle(hd, 5, 2), RangeError);

  const auto spec = ParitySpec::from_bits("101");
  const auto h2 = make_parity_path(spec, ParityVariant::H2);
  CHECK(nonzero_index_oracle(h2, parity_index(spec, 1, 0), 1) == parity_index(spec, 0, spec.bits[0]));

  // Every nonzero appears at exactly one occupied slot; padding stays injective.
  const auto h = make_random_sparse(3, 4, 1.0, 11);
  for (Eigen::Index j = 0; j < h.dim(); ++j) {
    std::set<std::int64_t> seen;
    int nnz = 0;
    for (Eigen::Index k = 0; k < h.dim(); ++k) nnz += h.entries()(j, k) != cplx{} ? 1 : 0;
    for (int l = 1; l <= h.d(); ++l) {
      const auto col = nonzero_index_oracle(h, j, l);
      CHECK(seen.insert(col).second);
      if (l <= nnz) CHECK(entry_oracle(h, j, col) != cplx{});
      else CHECK(entry_oracle(h, j, col) == cplx{});
    }
  }
}

TEST_CASE("padding slots start at the self loop") {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 2) = m(2, 0) = 0.5;
  const SparseHamiltonian h(2, 2, m);
  CHECK(nonzero_index_oracle(h, 0, 1) == 2);
  CHECK(nonzero_index_oracle(h, 0, 2) == 0);
  CHECK(nonzero_index_oracle(h, 1, 1) == 1);
  CHECK(nonzero_index_oracle(h, 1, 2) == 0);
}

TEST_CASE("parity paths") {
  const auto p1 = make_parity_path(ParitySpec::from_bits("0"), ParityVariant::H1);
  CHECK(p1.dim() == 2);
  CHECK(p1.entries()(0, 1).real() == doctest::Approx(1.0));

  const auto p2 = make_parity_path(ParitySpec::from_bits("00"), ParityVariant::H1);
  CHECK(p2.entries()(0, 1).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(p2.entries()(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

  const auto h1 = make_parity_path(ParitySpec::from_bits("0000"), ParityVariant::H1);
  CHECK(h1.h_max() == doctest::Approx(std::sqrt(6.0)));

  // Breadth-first walk from (0, 0) follows the cumulative XOR of x.
  const auto spec = ParitySpec::from_bits("101");
  const auto h2 = make_parity_path(spec, ParityVariant::H2);
  std::set<std::int64_t> reach;
  std::queue<std::int64_t> q;
  q.push(parity_index(spec, 0, 0));
  reach.insert(q.front());
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (auto c : h2.row(v))
      if (reach.insert(c).second) q.push(c);
  }
  CHECK(reach == std::set<std::int64_t>{parity_index(spec, 0, 0), parity_index(spec, 1, 1),
                                        parity_index(spec, 2, 1), parity_index(spec, 3, 0)});
}

TEST_CASE("H2 at time pi/2 computes the parity") {
  for (const char* bits : {"1011", "0110", "111"}) {
    const auto spec = ParitySpec::from_bits(bits);
    const auto h2 = make_parity_path(spec, ParityVariant::H2);
    const CMatrix e = exact_evolution(h2, std::numbers::pi / 2.0);
    const double f = std::norm(e(parity_index(spec, spec.path_length, parity_of(spec)), parity_index(spec, 0, 0)));
    CHECK(f >= 1.0 - 1e-10);
  }
}

TEST_CASE("blown-up parity instances") {
  const auto small = make_blown_up_parity(ParitySpec::from_bits("0", 1));
  const auto h2 = make_parity_path(ParitySpec::from_bits("0"), ParityVariant::H2);
  CHECK((small.entries() - h2.entries() / 1.0).norm() < 1e-15);

  const auto spec = ParitySpec::from_bits("11", 2);
  const auto hb = make_blown_up_parity(spec);
  CHECK(hb.d() == 4);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int l = 0; l < 2; ++l) {
        const auto deg = hb.row(parity_index(spec, i, j, l)).size();
        CHECK(deg == ((i == 0 || i == 2) ? 2u : 4u));
      }

  // Restricting to the uniform states |i, j, *> recovers H2 scaled by d / N.
  const auto spec4 = ParitySpec::from_bits("1001", 3);
  const auto h4 = make_blown_up_parity(spec4);
  const auto flat = make_parity_path(ParitySpec::from_bits("1001"), ParityVariant::H2);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int ip = 0; ip <= 4; ++ip)
        for (int jp = 0; jp <= 1; ++jp) {
          const cplx v = parity_uniform_state(spec4, h4, i, j).dot(h4.entries() * parity_uniform_state(spec4, h4, ip, jp));
          const cplx expect = 3.0 * flat.entries()(2 * i + j, 2 * ip + jp) / 4.0;
          CHECK(std::abs(v - expect) < 1e-12);
        }
  CHECK(h4.h_max() == doctest::Approx(std::sqrt(2.0 * 3.0) / 4.0));
}

TEST_CASE("norms") {
  const SparseHamiltonian zero(1, 1, CMatrix::Zero(2, 2));
  CHECK(norms(zero).h_max == 0.0);
  CHECK(norms(zero).h_spec == 0.0);
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  const SparseHamiltonian d(1, 1, m);
  CHECK(norms(d).h_max == 1.0);
  CHECK(norms(d).h_spec == doctest::Approx(1.0));
}

TEST_CASE("construction validates Hermiticity and sparsity") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = cplx{0.0, 1.0};
  m(1, 0) = cplx{0.0, 1.0};
  CHECK_THROWS_AS(SparseHamiltonian(1, 2, m), HermiticityError);
  m(1, 0) = cplx{0.0, -1.0};
  m(0, 0) = 1.0;
  CHECK_THROWS_AS(SparseHamiltonian(1, 1, m), SparsityError);
  CHECK_NOTHROW(SparseHamiltonian(1, 2, m));
  CHECK_THROWS_AS(SparseHamiltonian(1, 3, m), ParameterError);
}

TEST_CASE("JSON round trip and error kinds") {
  const auto h = make_random_sparse(3, 4, 1.0, 5);
  const auto path = temp_file("roundtrip.json");
  save_json(h, path);
  const auto back = load_json(path);
  CHECK(back.entries() == h.entries());
  CHECK(back.d() == h.d());
  CHECK(to_json(back) == to_json(h));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(from_json(R"({"n": 1, "d": 2, "entries": [[0, 1, 0, 1], [1, 0, 0, 1]]})"), HermiticityError);
  CHECK_THROWS_AS(from_json(R"({"n": 1, "d": 1, "entries": [[0, 0, 1, 0], [0, 1, 0.5, 0]]})"), SparsityError);
  CHECK_THROWS_AS(from_json(R"({"n": 1, "d": 1, "entries": [[0, 0, 1, 0)"), ParseError);
  CHECK_THROWS_AS(from_json(R"({"n": 1, "d": 1, "entries": [[0, 5, 1, 0]]})"), ParseError);
  CHECK_THROWS_AS(from_json(R"({"n": 1, "d": 1, "entries": [[0, 0, 1, 0.5]]})"), HermiticityError);
  CHECK_THROWS_AS(load_json("/nonexistent/dir/h.json"), IoError);
  CHECK_THROWS_AS(save_json(h, "/nonexistent/dir/h.json"), IoError);
}

TEST_CASE("diagonal shift") {
  CMatrix m(2, 2);
  m << 0.5, 0.2, 0.2, -1.5;
  const SparseHamiltonian h(1, 2, m);
  CHECK(required_diagonal_shift(h) == 1.5);
  const auto s = shifted(h, 1.5);
  CHECK(s.entries()(1, 1).real() == 0.0);
  CHECK(s.entries()(0, 0).real() == 2.0);
  CHECK(required_diagonal_shift(make_random_sparse(2, 2, 1.0, 3)) == 0.0);
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/lcu.hpp"
#include "lcuwalk/rng.hpp"
#include "lcuwalk/walk.hpp"
#include "oracles.hpp"

using namespace lcuwalk;

namespace {

CMatrix unit_diag(std::initializer_list<double> phases) {
  CMatrix u = CMatrix::Zero(Eigen::Index(phases.size()), Eigen::Index(phases.size()));
  Eigen::Index i = 0;
  for (double p : phases) { u(i, i) = std::polar(1.0, p); ++i; }
  return u;
}

CoefficientSet manual_coefficients(std::vector<double> a) {
  CoefficientSet c;
  c.k = static_cast<int>(a.size() / 2);
  c.a = std::move(a);
  for (double v : c.a) c.abs_sum += std::abs(v);
  return c;
}

CMatrix pwp_block(const LcuAssembly& a) { return a.Z.topLeftCorner(a.system_dim, a.system_dim); }

}  // namespace

TEST_SUITE("lcu") {

TEST_CASE("select") {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const CMatrix sel = build_select(x, 1);
  CHECK(sel.rows() == 6);
  CHECK((sel.block(0, 0, 2, 2) - x).norm() == 0.0);  // X^dag = X
  CHECK((sel.block(2, 2, 2, 2) - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((sel.block(4, 4, 2, 2) - x).norm() == 0.0);
  CHECK(isometry_residual(sel) < 1e-15);
  CHECK((build_select(x, 0) - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(build_select(x, -1), ParameterError);
}

TEST_CASE("prep state") {
  const auto c = manual_coefficients({0.25, 0.5, 0.25});
  const CVector chi = prep_state(c, 2.0);
  CHECK(chi.norm() == doctest::Approx(1.0));
  CHECK(std::norm(chi[1]) == doctest::Approx(0.25));
  CHECK(std::norm(chi[0]) == doctest::Approx(0.125));
  CHECK(std::norm(chi[3]) == doctest::Approx(0.25));
  CHECK(std::norm(chi[4]) == doctest::Approx(0.25));
  CHECK(chi.imag().norm() == 0.0);

  const auto exact = prep_state(c, 1.0);
  CHECK(exact.tail(3).norm() < 1e-15);
  CHECK_THROWS_AS(prep_state(c, 0.9), ParameterError);
  CHECK_THROWS_AS(prep_state(manual_coefficients({1.0}), 2.0), ParameterError);

  const CMatrix b = build_prep(c, 2.0);
  CHECK(isometry_residual(b) < 1e-14);
  CHECK((b.col(0) - chi).norm() < 1e-14);
}

TEST_CASE("W is unitary and PWP is the signed sum over s") {
  Rng rng(3);
  const CMatrix u = random_unitary(3, rng);
  for (double z : {-0.5, 0.5, -2.0}) {
    const int k = static_cast<int>(std::ceil(std::abs(z))) + 3;
    const auto c = lcu_coefficients(z, k);
    const auto as = assemble_lcu(u, c);
    CHECK(isometry_residual(as.W) < 1e-13);
    CHECK((pwp_block(as) - oracle::direct_lcu_sum(u, c) / as.s).norm() < 1e-13);
    CHECK((as.Z - as.P * as.Z * as.P).norm() < 1e-15);
  }
}

TEST_CASE("negative coefficients keep their sign") {
  const CMatrix u = unit_diag({0.3, -1.1});
  const auto c = manual_coefficients({-0.2, 0.9, 0.3});
  const auto as = assemble_lcu(u, c, {2.0, 1});
  CHECK((pwp_block(as) - oracle::direct_lcu_sum(u, c) / 2.0).norm() < 1e-14);
}

TEST_CASE("amplification step edge cases") {
  Rng rng(5);
  const CMatrix w = random_unitary(4, rng);
  const CMatrix id = CMatrix::Identity(4, 4);
  CHECK((amplification_step(w, id) + w * w.adjoint()).norm() < 1e-13);
  CHECK((amplification_step(w, CMatrix::Zero(4, 4)) + id).norm() < 1e-13);
  const CMatrix p = ancilla_projector(2, 2);
  CHECK((p * p - p).norm() == 0.0);
  CHECK(p.trace().real() == 2.0);
}

TEST_CASE("exact amplification of a scaled unitary") {
  Rng rng(11);
  const CMatrix v = random_unitary(3, rng);
  for (int l : {0, 1, 2, 3}) {
    const double s = 1.0 / std::sin(std::numbers::pi / (2.0 * (2.0 * l + 1.0)));
    const auto seg = amplified_block(block_encode_dilation(v, {s, l}));
    CHECK((seg.effective - v).norm() < 1e-12);
    CHECK(seg.leakage < 1e-7);  // sqrt(1 - sigma^2) amplifies rounding
  }
  CHECK_THROWS_AS(amplified_block(block_encode_dilation(v, {2.5, 1})), ParameterError);
}

TEST_CASE("amplification error is linear in the unitarity defect") {
  Rng rng(13);
  const CMatrix v = random_unitary(4, rng);
  // The Hermitian part only moves singular values, which the amplification
  // polynomial flattens to second order; the anti-Hermitian part rotates and
  // carries through linearly.
  const CMatrix k = random_hermitian(4, 1.0, rng) + kI * random_hermitian(4, 1.0, rng);
  double prev_ratio = 0.0;
  for (double delta : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const CMatrix vd = v * (CMatrix::Identity(4, 4) + delta * k);
    const auto seg = amplified_block(block_encode_dilation(vd, {2.0, 1}));
    const double defect = spectral_norm(vd - v);
    const double err = spectral_norm(seg.effective - v);
    CHECK(err <= 10.0 * defect);
    if (delta < 1e-2) CHECK(std::abs(err / defect - prev_ratio) < 0.1 * prev_ratio + 1e-3);
    prev_ratio = err / defect;
  }
}

TEST_CASE("Chebyshev formula for repeated amplification") {
  Rng rng(17);
  const CMatrix u = random_unitary(3, rng);
  const auto c = lcu_coefficients(-0.5, 4);
  const auto as = assemble_lcu(u, c, {2.0, 1});
  const auto cc = chebyshev_formula_check(as.W, as.ancilla_dim, 3);
  REQUIRE(cc.residuals.size() == 4);
  CHECK(cc.max_residual < 1e-12);

  // m = 1 by hand: P R W P = 3Z - 4 Z Z^dag Z.
  const CMatrix z = as.P * as.W * as.P;
  const CMatrix r = amplification_step(as.W, as.P);
  const CMatrix lhs = as.P * r * as.W * as.P;
  CHECK((lhs - (3.0 * z - 4.0 * z * z.adjoint() * z)).norm() < 1e-12);
  CHECK_THROWS_AS(chebyshev_formula_check(as.W, as.ancilla_dim, 6), ParameterError);
}

TEST_CASE("solve_s_l against a brute-force scan") {
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.0000001, 3.0, 5.0, 17.3}) {
    const auto sl = solve_s_l(a);
    CHECK(sl.l_iters == oracle::scan_l(a));
    CHECK(sl.s >= a * (1.0 - 1e-12));
    CHECK(sine_condition_residual(sl.s, sl.l_iters) < 1e-14);
  }
  CHECK(solve_s_l(2.0).l_iters == 1);
  CHECK(solve_s_l(5.0).l_iters == 4);  // 1/sin(pi/14) < 5 <= 1/sin(pi/18)
  CHECK_THROWS_AS(solve_s_l(0.0), ParameterError);
}

TEST_CASE("the +/- walk sectors evolve independently") {
  const auto h = make_random_sparse(2, 2, 1.0, 21);
  const WalkSystem ws(h);
  const auto sub = reduce_to_walk_subspace(ws);
  const auto c = lcu_coefficients(-0.5, 5);
  const CMatrix vk = oracle::direct_lcu_sum(sub.walk, c);
  Eigen::ComplexEigenSolver<CMatrix> es(sub.walk);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const CVector v = es.eigenvectors().col(i);
    cplx expect = 0.0;
    for (int m = -c.k; m <= c.k; ++m) expect += c.at(m) * std::pow(es.eigenvalues()[i], m);
    CHECK((vk * v - expect * v).norm() < 1e-12);
  }
}

TEST_CASE("matrix-free circuit matches the dense assembly") {
  Rng rng(23);
  const CMatrix u = random_unitary(4, rng);
  for (auto [z, sl] : {std::pair{-0.5, AmplificationParams{2.0, 1}}, std::pair{-2.0, solve_s_l(2.0)}}) {
    const auto c = lcu_coefficients(z, static_cast<int>(std::ceil(-z)) + 4);
    const AmplificationParams use = sl.s >= c.abs_sum ? sl : solve_s_l(c.abs_sum);
    const auto dense = amplified_block(assemble_lcu(u, c, use));
    const LcuCircuit circuit(u, c, use);
    const auto out = circuit.apply(CMatrix::Identity(4, 4));
    CHECK((out.block - dense.effective).norm() < 1e-12);
    CHECK(std::abs(out.leakage - dense.leakage) < 1e-10);
    CHECK((circuit.truncated_sum() - oracle::direct_lcu_sum(u, c)).norm() < 1e-12);
  }
}

}  // TEST_SUITE

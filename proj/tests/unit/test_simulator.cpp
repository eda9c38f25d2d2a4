#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/simulator.hpp"
#include "oracles.hpp"

using namespace lcuwalk;

TEST_SUITE("simulator") {

TEST_CASE("exact evolution") {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const CMatrix e = exact_evolution(x, std::numbers::pi / 2.0);
  CHECK(std::abs(e(1, 0) - cplx{0.0, -1.0}) < 1e-15);
  CHECK(std::abs(e(0, 0)) < 1e-15);
  CHECK((exact_evolution(x, 0.0) - CMatrix::Identity(2, 2)).norm() < 1e-15);
  for (std::uint64_t seed : {1u, 2u}) {
    const auto h = make_random_sparse(3, 4, 1.0, seed);
    CHECK((exact_evolution(h, 1.7) - oracle::expm_taylor(h.entries(), 1.7)).norm() < 1e-12);
  }
}

TEST_CASE("fixed_z plan") {
  const auto h = make_random_sparse(2, 2, 1.0, 1);
  const auto p = plan_segments(h, 1.0, 1e-6);
  CHECK(p.d_pow2 == 2);
  CHECK(p.tau == doctest::Approx(2.0 * p.x));
  CHECK(p.num_segments == static_cast<int>(std::ceil(p.tau / 0.5 - 1e-12)));
  CHECK(p.full.z == -0.5);
  CHECK(p.full.s == 2.0);
  CHECK(p.full.l_iters == 1);
  CHECK(p.total_phase() == doctest::Approx(p.tau).epsilon(1e-14));
  CHECK(p.full.certified <= p.per_segment_delta / 2.0);
  CHECK(p.last.certified <= p.per_segment_delta / 2.0);
  CHECK(p.per_segment_delta * p.num_segments == doctest::Approx(1e-6));
  CHECK(p.query_count == count_queries(p));
  CHECK(p.query_count == (p.num_segments - 1) * 3 * 2 * p.full.k + 3 * 2 * p.last.k);

  const auto zero_t = plan_segments(h, 0.0, 1e-6);
  CHECK(zero_t.num_segments == 0);
  CHECK(count_queries(zero_t) == 0);

  CHECK_THROWS_AS(plan_segments(h, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(plan_segments(h, -1.0, 1e-3), ParameterError);
  CHECK_THROWS_AS(plan_segments(h, 1.0, 1e-3, Strategy::Tradeoff, 1.5), ParameterError);
  CHECK_THROWS_AS(plan_segments(h, 1.0, 1e-3, Strategy::FixedZ, 1.0, 0.1), ParameterError);
}

TEST_CASE("tradeoff plan") {
  const auto h = make_random_sparse(2, 2, 1.0, 2);
  const double scale = phase_scale(h);
  for (double alpha : {0.0, 0.5, 1.0}) {
    const auto p = plan_segments(h, 8.0 / scale, 1e-6, Strategy::Tradeoff, alpha);
    CHECK(p.tau == doctest::Approx(8.0));
    CHECK(std::abs(p.full.z) == doctest::Approx(std::min(std::pow(8.0, alpha), 8.0)));
    CHECK(p.full.s >= p.full.abs_sum * (1.0 - 1e-12));
    CHECK(sine_condition_residual(p.full.s, p.full.l_iters) < 1e-14);
    CHECK(p.total_phase() == doctest::Approx(8.0));
  }
  const auto one = plan_segments(h, 8.0 / scale, 1e-6, Strategy::Tradeoff, 1.0);
  CHECK(one.num_segments == 1);
}

TEST_CASE("capped segment length keeps k below the limit") {
  const auto h = make_random_sparse(2, 2, 1.0, 2);
  const auto p = plan_segments(h, 1000.0 / phase_scale(h), 1e-12, Strategy::Tradeoff, 1.0);
  CHECK(p.full.z == -kTradeoffZCap);
  CHECK(p.full.k <= kMaxTruncation);
  CHECK(p.total_phase() == doctest::Approx(1000.0));
}

TEST_CASE("run meets the error budget") {
  const auto h = make_random_sparse(2, 2, 1.0, 1);
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    const auto rep = run(h, plan_segments(h, 1.0, eps));
    CHECK(rep.spectral_error <= eps);
    CHECK((rep.effective - oracle::expm_taylor(h.entries(), 1.0)).norm() <= 2.0 * eps);
    CHECK(rep.diamond_bound == doctest::Approx(2.0 * rep.spectral_error));
    CHECK(rep.oracle_queries == 2 * rep.queries);
    for (const auto& s : rep.segments) {
      CHECK(s.measured_truncation <= s.certified_truncation + 1e-14);
      CHECK(s.leakage < 1e-3);
    }
  }
}

TEST_CASE("run with a diagonal shift") {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  const SparseHamiltonian h(1, 1, m);
  const auto plan = plan_segments(h, 1.0, 1e-8);
  CHECK(plan.shift == 1.0);
  const auto rep = run(h, plan);
  CHECK(rep.spectral_error < 1e-8);
  CHECK(std::abs(rep.effective(0, 0) - std::polar(1.0, -1.0)) < 1e-8);
}

TEST_CASE("run with a tradeoff plan and a loose X") {
  const auto h = make_random_sparse(2, 2, 1.0, 4);
  const auto plan = plan_segments(h, 2.0, 1e-6, Strategy::Tradeoff, 0.5, 2.0);
  CHECK(plan.x == 2.0);
  CHECK(run(h, plan).spectral_error <= 1e-6);
}

TEST_CASE("segments compose") {
  const auto h = make_random_sparse(2, 2, 1.0, 6);
  const auto a = run(h, plan_segments(h, 0.4, 1e-9));
  const auto b = run(h, plan_segments(h, 0.6, 1e-9));
  const auto ab = run(h, plan_segments(h, 1.0, 1e-9));
  CHECK((a.effective * b.effective - ab.effective).norm() < 1e-8);
}

TEST_CASE("report json") {
  const auto h = make_random_sparse(1, 2, 1.0, 1);
  const auto rep = run(h, plan_segments(h, 0.5, 1e-6));
  const auto j = report_json(rep);
  for (const char* key : {"\"params\"", "\"spectral_error\"", "\"diamond_bound\"", "\"queries\"", "\"segments\"",
                          "\"k\"", "\"s\"", "\"l\"", "\"wall_ms\""})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("pure state trace distance") {
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    const CVector a = random_state(6, rng);
    const CVector b = 0.9 * random_state(6, rng);
    CHECK(pure_state_trace_distance(a, b) == doctest::Approx(oracle::trace_distance_dense(a, b)).epsilon(1e-10));
  }
  const CVector a = random_state(4, rng);
  CHECK(pure_state_trace_distance(a, a) < 1e-14);
}

TEST_CASE("diamond bound check") {
  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    const CMatrix u = random_unitary(3, rng);
    const CMatrix v = u * exact_evolution(random_hermitian(3, 1e-3, rng), 1.0);
    CHECK(diamond_bound_check(u, v, 100, rng) <= 1.0 + 1e-10);
  }
  const CMatrix u = random_unitary(2, rng);
  CHECK(diamond_bound_check(u, u, 10, rng) == 0.0);
  CHECK_THROWS_AS(diamond_bound_check(2.0 * u, u, 10, rng), ParameterError);
}

TEST_CASE("combined lower bound") {
  CHECK(combined_lower_bound(std::numbers::pi / 2.0, 1.0, 0.4) == 1);
  for (double td : {1.0, 5.0, 30.0})
    for (double eps : {1e-2, 1e-5})
      CHECK(combined_lower_bound(td, 1.0, eps) == oracle::lower_bound_scan(td, eps, 20000));
  CHECK(combined_lower_bound(5.0, 1.0, 1e-5) >= combined_lower_bound(5.0, 1.0, 1e-2));
  CHECK_THROWS_AS(combined_lower_bound(0.0, 1.0, 0.1), ParameterError);
}

}  // TEST_SUITE

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lcuwalk/bessel.hpp"
#include "lcuwalk/errors.hpp"
#include "lcuwalk/harness.hpp"
#include "lcuwalk/lcu.hpp"
#include "lcuwalk/reference.hpp"
#include "lcuwalk/walk.hpp"

namespace lcuwalk::harness {

namespace {

CheckLine check(std::string suite, std::string name, double value, double limit, std::string detail = {}) {
  const bool ok = std::isfinite(value) && value <= limit;
  return {std::move(suite), std::move(name), value, limit, ok, std::move(detail)};
}

CMatrix lcu_sum(const CMatrix& u, const CoefficientSet& c) {
  CMatrix v = c.at(0) * CMatrix::Identity(u.rows(), u.cols());
  CMatrix p = CMatrix::Identity(u.rows(), u.cols());
  for (int m = 1; m <= c.k; ++m) {
    p = u * p;
    v += c.at(m) * p + c.at(-m) * p.adjoint();
  }
  return v;
}

void walk_suite(SuiteReport& rep) {
  double worst = 0.0;
  std::string failed;
  int count = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = seed % 2 ? 1 : 2;
    const int d = std::min<int>(1 << (seed % 3), 1 << n);
    const auto h = make_random_sparse(n, d, 1.0, seed);
    try {
      const auto r = spectral_check(WalkSystem(h), 1e-9, true);
      worst = std::max({worst, r.max_mismatch, r.max_residual});
    } catch (const VerificationError& e) {
      worst = std::max(worst, 1.0);
      failed += fmt::format(" seed {}: {};", seed, e.what());
    }
    ++count;
  }
  rep.checks.push_back(check("walk", "spectral_correspondence", worst, 1e-9,
                             failed.empty() ? fmt::format("{} instances", count) : failed));
}

void bessel_suite(SuiteReport& rep) {
  double dev = 0.0, parseval = 0.0;
  for (double z : {-30.0, -17.5, -8.0, -2.0, -0.5, 0.3, 1.0, 5.0, 12.25, 20.0, 30.0}) {
    const auto row = bessel_row(z, 60);
    double sq = 0.0;
    for (int m = -60; m <= 60; ++m) {
      const double v = row[static_cast<std::size_t>(m + 60)];
      dev = std::max(dev, std::abs(v - reference::bessel_series(z, m)));
      sq += v * v;
    }
    parseval = std::max(parseval, sq - 1.0);
  }
  rep.checks.push_back(check("bessel", "miller_vs_series", dev, 1e-13, "|z| <= 30, |m| <= 60"));
  rep.checks.push_back(check("bessel", "sum_of_squares_excess", parseval, 1e-12));

  double ratio = 0.0;
  for (double z = 1.0; z <= 100.0; z += 0.5) ratio = std::max(ratio, abs_sum_estimate(z) / std::sqrt(z));
  rep.checks.push_back(check("bessel", "abs_sum_over_sqrt_z", ratio, 2.0, "z in [1, 100]"));

  double cert = 0.0;
  for (double z : {-0.5, -2.0, -8.0}) {
    const int k0 = static_cast<int>(std::ceil(std::abs(z)));
    for (int k = k0; k <= k0 + 12; ++k) {
      const auto c = lcu_coefficients(z, k);
      for (int p = 0; p < 100; ++p) {
        const double theta = 2.0 * std::numbers::pi * p / 100.0;
        const cplx mu = std::polar(1.0, theta);
        cplx sum = 0.0;
        for (int m = -k; m <= k; ++m) sum += c.at(m) * std::pow(mu, m);
        const double err = std::abs(sum - std::exp(kI * (std::sin(theta) * z)));
        // Allow for rounding in the 2k + 1 term sum itself.
        const double floor = 8.0 * std::numeric_limits<double>::epsilon() * c.abs_sum;
        if (std::isfinite(c.bound)) cert = std::max(cert, err / (c.bound + floor));
      }
    }
  }
  rep.checks.push_back(check("bessel", "truncation_certificate_ratio", cert, 1.0));
}

void lcu_suite(SuiteReport& rep) {
  Rng rng(2024);
  std::vector<double> per_m(4, 0.0);
  double block = 0.0, amp = 0.0;
  for (int inst = 0; inst < 3; ++inst) {
    const CMatrix u = random_unitary(2, rng);
    const auto c = lcu_coefficients(-0.5, 2);
    const auto a = assemble_lcu(u, c);
    const auto cc = chebyshev_formula_check(a.W, a.ancilla_dim, 3);
    for (int m = 0; m <= 3; ++m) per_m[static_cast<std::size_t>(m)] = std::max(per_m[static_cast<std::size_t>(m)], cc.residuals[static_cast<std::size_t>(m)]);
    block = std::max(block, spectral_norm(a.s * a.Z.topLeftCorner(2, 2) - lcu_sum(u, c)));
    const CMatrix v = random_unitary(3, rng);
    const auto d = block_encode_dilation(v, {2.0, 1});
    amp = std::max(amp, spectral_norm(amplified_block(d).effective - v));
  }
  for (int m = 0; m <= 3; ++m)
    rep.checks.push_back(check("lcu", fmt::format("chebyshev_residual_m{}", m), per_m[static_cast<std::size_t>(m)], 1e-9));
  rep.checks.push_back(check("lcu", "block_encoding_identity", block, 1e-12));
  rep.checks.push_back(check("lcu", "exact_amplification", amp, 1e-10));
}

void diamond_suite(SuiteReport& rep) {
  Rng rng(99);
  double worst = 0.0;
  for (int pair = 0; pair < 5; ++pair) {
    const CMatrix u = random_unitary(3, rng);
    const CMatrix v = random_unitary(3, rng);
    worst = std::max(worst, diamond_bound_check(u, v, 200, rng));
  }
  rep.checks.push_back(check("diamond", "max_ratio_to_bound", worst, 1.0 + 1e-10, "5 pairs x 200 states"));
}

void parity_suite(SuiteReport& rep) {
  const auto spec = ParitySpec::from_bits("1011");
  const auto h2 = make_parity_path(spec, ParityVariant::H2);
  const CMatrix e = exact_evolution(h2, std::numbers::pi / 2.0);
  const double f_exact = std::norm(e(parity_index(spec, 4, parity_of(spec)), parity_index(spec, 0, 0)));
  rep.checks.push_back(check("parity", "exact_path_infidelity", 1.0 - f_exact, 1e-10, "H2, x = 1011"));

  const auto blown = ParitySpec::from_bits("1011", 2);
  const auto hb = make_blown_up_parity(blown);
  const auto r = run(hb, plan_segments(hb, parity_time(blown), 1e-4));
  const CVector in = parity_uniform_state(blown, hb, 0, 0);
  const CVector out = parity_uniform_state(blown, hb, 4, parity_of(blown));
  const double f = std::norm(out.dot(r.effective * in));
  rep.checks.push_back(check("parity", "blown_up_infidelity", 1.0 - f, 1e-3, "N = 4, 2 copies, eps = 1e-4"));
  rep.checks.push_back(check("parity", "blown_up_spectral_error", r.spectral_error, 1e-4));
  rep.checks.push_back(check("parity", "lower_bound_example",
                             std::abs(double(combined_lower_bound(1.0, std::numbers::pi / 2.0, 0.4)) - 1.0), 0.0,
                             "td = pi/2, eps = 0.4 gives N = 1"));
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string SuiteReport::text() const {
  std::string s;
  for (const auto& c : checks)
    s += fmt::format("[{}] {}.{} value={:.3e} limit={:.3e}{}{}\n", c.pass ? "PASS" : "FAIL", c.suite, c.name,
                     c.value, c.limit, c.detail.empty() ? "" : " ", c.detail);
  s += fmt::format("{}: {} checks\n", pass() ? "PASS" : "FAIL", checks.size());
  return s;
}

std::string SuiteReport::json() const {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"suite", c.suite}, {"name", c.name}, {"value", c.value}, {"limit", c.limit},
                   {"pass", c.pass}, {"detail", c.detail}});
  return json{{"pass", pass()}, {"checks", arr}}.dump(2) + "\n";
}

SuiteReport verify(std::string_view suite) {
  static const std::vector<std::pair<std::string_view, std::function<void(SuiteReport&)>>> suites = {
      {"walk", walk_suite}, {"bessel", bessel_suite}, {"lcu", lcu_suite},
      {"diamond", diamond_suite}, {"parity", parity_suite}};
  SuiteReport rep;
  bool found = false;
  for (const auto& [name, fn] : suites) {
    if (suite == "all" || suite == name) {
      spdlog::info("verify: running {}", name);
      fn(rep);
      found = true;
    }
  }
  if (!found) throw ParameterError(fmt::format("unknown suite '{}'", suite));
  return rep;
}

}  // namespace lcuwalk::harness

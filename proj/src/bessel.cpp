#include "lcuwalk/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lcuwalk/errors.hpp"

namespace lcuwalk {

namespace {

// log(|z/2|^{k+1} / (k+1)!)
double log_power_over_factorial(double z, int k) {
  return (k + 1) * std::log(std::abs(z) / 2.0) - std::lgamma(k + 2.0);
}

}  // namespace

std::vector<double> bessel_row(double z, int k) {
  if (k < 0) throw ParameterError("bessel_row: k must be non-negative");
  if (!std::isfinite(z)) throw ParameterError("bessel_row: z must be finite");
  std::vector<double> out(static_cast<std::size_t>(2 * k + 1), 0.0);
  const double x = std::abs(z);
  if (x == 0.0) {
    out[static_cast<std::size_t>(k)] = 1.0;
    return out;
  }

  constexpr double kBig = 1e200;
  const int start = k + static_cast<int>(std::ceil(10.0 + 2.0 * x));
  std::vector<double> j(static_cast<std::size_t>(k + 1), 0.0);  // J_0..J_k, unnormalised
  double above = 0.0;  // j_{m+1}
  double cur = 1.0;    // j_m, seeded at m = start
  double norm = (start % 2 == 0) ? 2.0 : 0.0;
  if (start <= k) j[static_cast<std::size_t>(start)] = cur;
  for (int m = start; m >= 1; --m) {
    const double below = (2.0 * m / x) * cur - above;
    above = cur;
    cur = below;
    const int idx = m - 1;
    if (idx <= k) j[static_cast<std::size_t>(idx)] = cur;
    if (idx % 2 == 0) norm += (idx == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      above /= kBig;
      norm /= kBig;
      for (int i = idx; i <= k; ++i) j[static_cast<std::size_t>(i)] /= kBig;
    }
  }

  for (int m = 0; m <= k; ++m) {
    double v = j[static_cast<std::size_t>(m)] / norm;
    if (z < 0.0 && (m % 2 == 1)) v = -v;  // J_m(-x) = (-1)^m J_m(x)
    out[static_cast<std::size_t>(k + m)] = v;
    out[static_cast<std::size_t>(k - m)] = (m % 2 == 1) ? -v : v;
  }
  return out;
}

double bessel_tail_bound(double z, int k) {
  if (z == 0.0) return 0.0;
  return 4.0 * std::exp(log_power_over_factorial(z, k));
}

CoefficientSet lcu_coefficients(double z, int k) {
  if (k < 0) throw ParameterError("lcu_coefficients: k must be non-negative");
  if (std::abs(z) > k) throw ParameterError("lcu_coefficients: requires |z| <= k");
  CoefficientSet c;
  c.z = z;
  c.k = k;
  c.a = bessel_row(z, k);
  // Odd orders cancel in pairs: sum_{|m|<=k} J_m = J_0 + 2 sum_{even m>0} J_m.
  double raw = c.a[static_cast<std::size_t>(k)];
  for (int m = 2; m <= k; m += 2) raw += 2.0 * c.a[static_cast<std::size_t>(k + m)];
  c.raw_norm = raw;
  if (!(raw > 0.0)) throw NumericError("lcu_coefficients: non-positive normalisation");
  for (auto& v : c.a) v /= raw;
  for (double v : c.a) c.abs_sum += std::abs(v);
  c.bound = truncation_bound(z, k, 1.0);
  return c;
}

double truncation_bound(double z, int k, double nu_max) {
  if (std::abs(z) > k) throw ParameterError("truncation_bound: requires |z| <= k");
  if (!(nu_max >= 0.0 && nu_max <= 1.0)) throw ParameterError("truncation_bound: nu_max must be in [0, 1]");
  if (z == 0.0) return 0.0;
  const double p = std::exp(log_power_over_factorial(z, k));
  const double tail = 4.0 * p;
  if (tail >= 1.0) return std::numeric_limits<double>::infinity();
  const double phase_term = 4.0 * std::asin(nu_max) * (k + 2) * p;
  return (nu_max * std::abs(z) * tail + phase_term) / (1.0 - tail);
}

double abs_sum_estimate(double z) {
  if (z == 0.0) return 1.0;
  int k = static_cast<int>(std::ceil(std::abs(z)));
  while (bessel_tail_bound(z, k) > 1e-12) ++k;
  const auto row = bessel_row(z, k);
  double s = 0.0;
  for (double v : row) s += std::abs(v);
  return s;
}

int choose_k(double z, double delta, double nu_max, int k_limit) {
  if (!(delta > 0.0)) throw ParameterError("choose_k: delta must be positive");
  int k = static_cast<int>(std::ceil(std::abs(z)));
  for (; k <= k_limit; ++k)
    if (truncation_bound(z, k, nu_max) <= delta) return k;
  throw CapacityError("choose_k: no truncation order below the limit meets the budget");
}

}  // namespace lcuwalk

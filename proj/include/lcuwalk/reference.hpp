#pragma once

#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lcuwalk::reference {

using big_float = boost::multiprecision::cpp_bin_float_50;

/// J_m(z) from the ascending series sum_s (-1)^s (z/2)^{2s+m} / (s! (s+m)!)
/// in 50-digit arithmetic, so cancellation up to |z| ~ 40 stays harmless.
inline double bessel_series(double z, int m) {
  const int order = std::abs(m);
  const big_float half = big_float(z) / 2;
  big_float term = 1;
  for (int i = 1; i <= order; ++i) term *= half / i;
  big_float sum = term;
  const big_float q = half * half;
  for (int s = 1; s < 10000; ++s) {
    term *= -q / (big_float(s) * big_float(s + order));
    sum += term;
    if (s > std::abs(z) && abs(term) < big_float("1e-40")) break;
  }
  double v = sum.convert_to<double>();
  if (m < 0 && (order % 2 == 1)) v = -v;
  return v;
}

}  // namespace lcuwalk::reference

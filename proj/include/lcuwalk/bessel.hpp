#pragma once

#include <vector>

namespace lcuwalk {

/// J_m(z) for m = -k..k, index m + k. Miller's downward recurrence started
/// at order k + ceil(10 + 2|z|) and normalised with J_0 + 2 sum J_2s = 1.
/// J_{-m} = (-1)^m J_m holds exactly.
std::vector<double> bessel_row(double z, int k);

/// Normalised truncated Bessel coefficients a_m = J_m(z) / sum_{|j|<=k} J_j(z).
struct CoefficientSet {
  double z = 0.0;
  int k = 0;
  std::vector<double> a;   // a_{-k..k}, index m + k
  double abs_sum = 0.0;    // sum |a_m|
  double raw_norm = 0.0;   // sum_{|m|<=k} J_m(z)
  double bound = 0.0;      // truncation_bound(z, k, 1)

  double at(int m) const { return a[static_cast<std::size_t>(m + k)]; }
  int size() const { return 2 * k + 1; }
};

/// Throws ParameterError when |z| > k.
CoefficientSet lcu_coefficients(double z, int k);

/// 4 |z/2|^{k+1} / (k+1)!: bound on 2 sum_{m>k} |J_m(z)| when |z| <= k + 1.
double bessel_tail_bound(double z, int k);

/// Certified bound on max over unit-circle walk eigenvalues with
/// |nu| <= nu_max of |sum_{|m|<=k} a_m mu^m - e^{i nu z}|, i.e. on
/// ||V_k - V_inf|| on the walk subspace:
///
///   (nu_max |z| t + 4 asin(nu_max) (k+2) |z/2|^{k+1}/(k+1)!) / (1 - t),
///
/// with t = bessel_tail_bound(z, k). Returns +inf when t >= 1. Throws
/// ParameterError for |z| > k or nu_max outside [0, 1].
double truncation_bound(double z, int k, double nu_max);

/// S(z) = sum over all m of |J_m(z)|, summed until the tail bound drops
/// below 1e-12.
double abs_sum_estimate(double z);

/// Smallest k >= ceil(|z|) with truncation_bound(z, k, nu_max) <= delta.
/// Throws CapacityError if none is found below `k_limit`.
int choose_k(double z, double delta, double nu_max, int k_limit = 10000);

}  // namespace lcuwalk

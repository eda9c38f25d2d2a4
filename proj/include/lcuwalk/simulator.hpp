#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcuwalk/hamiltonian.hpp"
#include "lcuwalk/lcu.hpp"
#include "lcuwalk/linalg.hpp"
#include "lcuwalk/rng.hpp"

namespace lcuwalk {

/// e^{-iHt} by Hermitian eigendecomposition.
CMatrix exact_evolution(const CMatrix& h, double t);
CMatrix exact_evolution(const SparseHamiltonian& h, double t);

enum class Strategy { FixedZ, Tradeoff };

const char* to_string(Strategy s) noexcept;

struct SegmentSpec {
  double z = 0.0;       // negative
  int k = 0;
  double s = 1.0;
  int l_iters = 0;
  double abs_sum = 1.0;
  double certified = 0.0;  // truncation_bound(z, k, nu_max)
};

/// How the total phase t * X * d_pow2 is cut into segments.
///
/// The first num_segments - 1 segments share `full`; the last one uses
/// `last`, whose z is the residual that makes the total phase exact.
/// H is simulated as H + shift * I (non-negative diagonal) and the phase
/// e^{i shift t} is restored afterwards.
struct SegmentPlan {
  Strategy strategy = Strategy::FixedZ;
  double alpha = 1.0;
  double t = 0.0;
  double epsilon = 0.0;
  double x = 1.0;
  int d_pow2 = 1;
  double shift = 0.0;
  double tau = 0.0;        // t * X * d_pow2
  double nu_max = 0.0;     // ||H + shift I|| / (X d_pow2), at most 1
  int num_segments = 0;
  SegmentSpec full;
  SegmentSpec last;
  double residual_z = 0.0;
  double per_segment_delta = 0.0;
  std::int64_t query_count = 0;

  double z() const noexcept { return full.z; }
  /// Sum of |z| over all segments; equals tau.
  double total_phase() const noexcept;
};

/// X * d_pow2 that plan_segments would use for H (after the diagonal shift).
double phase_scale(const SparseHamiltonian& h, std::optional<double> x = std::nullopt);

inline constexpr int kMaxTruncation = 200;
inline constexpr double kTradeoffZCap = 64.0;

/// Plans the segments.
///
/// fixed_z: z = -1/2, s = 2, l = 1, delta = epsilon / num_segments.
/// tradeoff: |z| = min(tau^alpha, 64), delta = epsilon / max(tau^(1-alpha),
/// num_segments), (s, l) from solve_s_l.
/// In both cases k = choose_k(z, delta / 2, nu_max); the other half of the
/// budget covers amplification. X defaults to ||H + shift I||_max.
/// Throws ParameterError for epsilon <= 0 or t < 0, CapacityError if k
/// would exceed 200.
SegmentPlan plan_segments(const SparseHamiltonian& h, double t, double epsilon,
                          Strategy strategy = Strategy::FixedZ, double alpha = 1.0,
                          std::optional<double> x = std::nullopt);

/// Sum over segments of (2 l + 1) * 2k controlled-U / U^dag applications.
std::int64_t count_queries(const SegmentPlan& plan);

struct SegmentDiagnostics {
  double z = 0.0;
  int k = 0;
  double s = 1.0;
  int l_iters = 0;
  int repeats = 0;
  double measured_truncation = 0.0;  // ||V_k - V_inf|| on the walk subspace
  double certified_truncation = 0.0;
  double leakage = 0.0;              // ||(1 - P) R^l W P||
  double amplification_error = 0.0;  // ||P R^l W P block - V_k||
};

struct SimulationReport {
  SegmentPlan plan;
  CMatrix effective;                 // N x N on the original space
  double spectral_error = 0.0;       // ||effective - e^{-iHt}||
  double diamond_bound = 0.0;        // 2 * spectral_error
  double channel_bound = 0.0;        // 4 * spectral_error
  double success_amplitude_deficit = 0.0;  // sqrt(1 - sigma_min(effective)^2)
  std::int64_t queries = 0;
  std::int64_t oracle_queries = 0;   // 2 per controlled-U
  Eigen::Index walk_rank = 0;
  double wall_ms = 0.0;
  std::vector<SegmentDiagnostics> segments;
};

/// Runs the plan on the walk subspace of H + shift I and compares the
/// projected result against exact_evolution(H, t).
SimulationReport run(const SparseHamiltonian& h, const SegmentPlan& plan);

/// {params, spectral_error, diamond_bound, queries, segments, k, s, l, wall_ms}.
std::string report_json(const SimulationReport& r);

/// Samples pure states on system (x) reference and returns the largest
/// ratio ||(U(x)I)psi psi^dag (U(x)I)^dag - (V(x)I)psi psi^dag (V(x)I)^dag||_1
/// / (2 ||U - V||). Ratios are 0 when both sides vanish. Throws
/// ParameterError when ||U|| or ||V|| exceeds 1.
double diamond_bound_check(const CMatrix& u, const CMatrix& v, int trials, Rng& rng);

/// Trace norm of |a><a| - |b><b| for (possibly unnormalised) vectors.
double pure_state_trace_distance(const CVector& a, const CVector& b);

/// Largest N <= 10^6 with epsilon < (1/2)|sin(t d / N)|^N, or 0.
std::int64_t combined_lower_bound(double t, double d, double epsilon);

}  // namespace lcuwalk

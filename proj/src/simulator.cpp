#include "lcuwalk/simulator.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/walk.hpp"

namespace lcuwalk {

namespace {

CMatrix matrix_power(CMatrix base, int e) {
  CMatrix acc = CMatrix::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

SparseHamiltonian shifted_if_needed(const SparseHamiltonian& h, double c) {
  return c > 0.0 ? shifted(h, c) : h;
}

SegmentSpec make_segment(double z, double delta, const SegmentPlan& plan) {
  SegmentSpec seg;
  seg.z = z;
  int k = 0;
  try {
    k = choose_k(z, delta / 2.0, plan.nu_max, kMaxTruncation);
  } catch (const CapacityError&) {
    throw CapacityError(fmt::format(
        "plan_segments: truncation order for z = {} and delta = {:.3e} exceeds {}", z, delta,
        kMaxTruncation));
  }
  seg.k = std::max(k, 1);
  const auto c = lcu_coefficients(z, seg.k);
  seg.abs_sum = c.abs_sum;
  if (plan.strategy == Strategy::FixedZ) {
    if (c.abs_sum > 2.0) throw NumericError("plan_segments: sum |a_m| exceeds 2 at |z| <= 1/2");
    seg.s = 2.0;
    seg.l_iters = 1;
  } else {
    const auto sl = solve_s_l(c.abs_sum);
    seg.s = sl.s;
    seg.l_iters = sl.l_iters;
  }
  seg.certified = truncation_bound(z, seg.k, plan.nu_max);
  return seg;
}

}  // namespace

CMatrix exact_evolution(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericError("exact_evolution: eigensolver failed");
  CVector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases[i] = std::exp(-kI * (es.eigenvalues()[i] * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix exact_evolution(const SparseHamiltonian& h, double t) { return exact_evolution(h.entries(), t); }

const char* to_string(Strategy s) noexcept {
  return s == Strategy::FixedZ ? "fixed_z" : "tradeoff";
}

double SegmentPlan::total_phase() const noexcept {
  if (num_segments == 0) return 0.0;
  return (num_segments - 1) * std::abs(full.z) + std::abs(last.z);
}

double phase_scale(const SparseHamiltonian& h, std::optional<double> x) {
  const SparseHamiltonian hs = shifted_if_needed(h, required_diagonal_shift(h));
  const double xv = x ? *x : (hs.h_max() > 0.0 ? hs.h_max() : 1.0);
  return xv * double(next_pow2(hs.d()));
}

SegmentPlan plan_segments(const SparseHamiltonian& h, double t, double epsilon, Strategy strategy,
                          double alpha, std::optional<double> x) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ParameterError("plan_segments: epsilon must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("plan_segments: t must be non-negative");
  if (strategy == Strategy::Tradeoff && !(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("plan_segments: alpha must lie in [0, 1]");

  SegmentPlan plan;
  plan.strategy = strategy;
  plan.alpha = alpha;
  plan.t = t;
  plan.epsilon = epsilon;
  plan.shift = required_diagonal_shift(h);
  const SparseHamiltonian hs = shifted_if_needed(h, plan.shift);
  plan.x = x ? *x : (hs.h_max() > 0.0 ? hs.h_max() : 1.0);
  if (!(plan.x > 0.0) || plan.x < hs.h_max())
    throw ParameterError(fmt::format("plan_segments: X = {} is below ||H||_max = {}", plan.x, hs.h_max()));
  plan.d_pow2 = static_cast<int>(next_pow2(hs.d()));
  const double scale = plan.x * plan.d_pow2;
  plan.tau = t * scale;
  plan.nu_max = std::min(1.0, hs.h_spec() / scale);
  if (t == 0.0) return plan;

  double zabs = 0.5;
  if (strategy == Strategy::Tradeoff) zabs = std::min({std::pow(plan.tau, alpha), kTradeoffZCap, plan.tau});
  plan.num_segments = std::max(1, static_cast<int>(std::ceil(plan.tau / zabs - 1e-12)));
  plan.residual_z = -(plan.tau - (plan.num_segments - 1) * zabs);
  plan.per_segment_delta = strategy == Strategy::FixedZ
                               ? epsilon / plan.num_segments
                               : epsilon / std::max(std::pow(plan.tau, 1.0 - alpha), double(plan.num_segments));
  plan.full = make_segment(-zabs, plan.per_segment_delta, plan);
  plan.last = make_segment(plan.residual_z, plan.per_segment_delta, plan);
  plan.query_count = count_queries(plan);
  return plan;
}

std::int64_t count_queries(const SegmentPlan& plan) {
  if (plan.num_segments == 0) return 0;
  auto per = [](const SegmentSpec& s) {
    return static_cast<std::int64_t>(2 * s.l_iters + 1) * 2 * s.k;
  };
  return (plan.num_segments - 1) * per(plan.full) + per(plan.last);
}

SimulationReport run(const SparseHamiltonian& h, const SegmentPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  SimulationReport rep;
  rep.plan = plan;
  const Eigen::Index n = h.dim();

  if (plan.num_segments == 0) {
    rep.effective = CMatrix::Identity(n, n);
  } else {
    const SparseHamiltonian hs = shifted_if_needed(h, plan.shift);
    const WalkSystem ws(hs, plan.x);
    const WalkSubspace sub = reduce_to_walk_subspace(ws);
    if (sub.unitarity_residual > 1e-9 || sub.invariance_residual > 1e-9)
      throw NumericError(fmt::format("run: walk subspace is not invariant (residuals {:.3e}, {:.3e})",
                                     sub.unitarity_residual, sub.invariance_residual));
    rep.walk_rank = sub.rank();
    const Eigen::Index r = sub.rank();
    const CMatrix nu = sub.nu_operator();

    auto segment = [&](const SegmentSpec& spec, int repeats) {
      LcuCircuit circ(sub.walk, lcu_coefficients(spec.z, spec.k), {spec.s, spec.l_iters});
      const auto out = circ.apply(CMatrix::Identity(r, r));
      const CMatrix vk = circ.truncated_sum();
      const CMatrix vinf = hermitian_function(nu, [&](double v) { return std::exp(kI * (spec.z * v)); });
      SegmentDiagnostics d;
      d.z = spec.z;
      d.k = spec.k;
      d.s = spec.s;
      d.l_iters = spec.l_iters;
      d.repeats = repeats;
      d.measured_truncation = spectral_norm(vk - vinf);
      d.certified_truncation = spec.certified;
      d.leakage = out.leakage;
      d.amplification_error = spectral_norm(out.block - vk);
      rep.segments.push_back(d);
      return out.block;
    };

    CMatrix total = CMatrix::Identity(r, r);
    if (plan.num_segments > 1) total = matrix_power(segment(plan.full, plan.num_segments - 1), plan.num_segments - 1);
    total = segment(plan.last, 1) * total;
    rep.effective = std::exp(kI * (plan.shift * plan.t)) * (sub.embed.adjoint() * total * sub.embed);
  }

  rep.spectral_error = spectral_norm(rep.effective - exact_evolution(h, plan.t));
  rep.diamond_bound = 2.0 * rep.spectral_error;
  rep.channel_bound = 4.0 * rep.spectral_error;
  Eigen::JacobiSVD<CMatrix> svd(rep.effective);
  const double smin = svd.singularValues().minCoeff();
  rep.success_amplitude_deficit = std::sqrt(std::max(0.0, 1.0 - smin * smin));
  rep.queries = count_queries(plan);
  rep.oracle_queries = 2 * rep.queries;
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string report_json(const SimulationReport& r) {
  using nlohmann::json;
  const auto& p = r.plan;
  const SegmentSpec& head = p.num_segments > 1 ? p.full : p.last;
  json segs = json::array();
  for (const auto& s : r.segments)
    segs.push_back({{"z", s.z}, {"k", s.k}, {"s", s.s}, {"l", s.l_iters}, {"repeats", s.repeats},
                    {"measured_truncation", s.measured_truncation},
                    {"certified_truncation", s.certified_truncation},
                    {"leakage", s.leakage}, {"amplification_error", s.amplification_error}});
  json j = {
      {"params", {{"strategy", to_string(p.strategy)}, {"alpha", p.alpha}, {"t", p.t},
                  {"epsilon", p.epsilon}, {"X", p.x}, {"d_pow2", p.d_pow2}, {"shift", p.shift},
                  {"tau", p.tau}, {"nu_max", p.nu_max}, {"per_segment_delta", p.per_segment_delta},
                  {"residual_z", p.residual_z}}},
      {"spectral_error", r.spectral_error},
      {"diamond_bound", r.diamond_bound},
      {"channel_bound", r.channel_bound},
      {"success_amplitude_deficit", r.success_amplitude_deficit},
      {"queries", r.queries},
      {"oracle_queries", r.oracle_queries},
      {"segments", p.num_segments},
      {"k", p.num_segments ? head.k : 0},
      {"s", p.num_segments ? head.s : 1.0},
      {"l", p.num_segments ? head.l_iters : 0},
      {"walk_rank", r.walk_rank},
      {"wall_ms", r.wall_ms},
      {"segment_details", segs},
  };
  return j.dump(2);
}

double pure_state_trace_distance(const CVector& a, const CVector& b) {
  CMatrix ab(a.size(), 2);
  ab.col(0) = a;
  ab.col(1) = b;
  Eigen::HouseholderQR<CMatrix> qr(ab);
  const Eigen::Index rows = std::min<Eigen::Index>(a.size(), 2);
  CMatrix r = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
  const CMatrix g = r.col(0) * r.col(0).adjoint() - r.col(1) * r.col(1).adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es((g + g.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double diamond_bound_check(const CMatrix& u, const CMatrix& v, int trials, Rng& rng) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw ParameterError("diamond_bound_check: operators must be square and of equal size");
  if (spectral_norm(u) > 1.0 + 1e-12 || spectral_norm(v) > 1.0 + 1e-12)
    throw ParameterError("diamond_bound_check: operators must be contractions");
  const Eigen::Index d = u.rows();
  const double bound = 2.0 * spectral_norm(u - v);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const CVector psi = random_state(d * d, rng);
    const Eigen::Map<const CMatrix> m(psi.data(), d, d);  // system index fastest
    const CMatrix um = u * m;
    const CMatrix vm = v * m;
    const double tn = pure_state_trace_distance(Eigen::Map<const CVector>(um.data(), d * d),
                                                Eigen::Map<const CVector>(vm.data(), d * d));
    double ratio = 0.0;
    if (bound > 1e-15) ratio = tn / bound;
    else if (tn > 1e-12) ratio = std::numeric_limits<double>::infinity();
    worst = std::max(worst, ratio);
  }
  return worst;
}

std::int64_t combined_lower_bound(double t, double d, double epsilon) {
  if (!(t > 0.0) || !(d > 0.0)) throw ParameterError("combined_lower_bound: t and d must be positive");
  if (!(epsilon > 0.0)) throw ParameterError("combined_lower_bound: epsilon must be positive");
  if (epsilon >= 0.5) return 0;
  const double td = t * d;
  const double log_eps = std::log(epsilon);
  std::int64_t best = 0;
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    const double x = td / double(n);
    const double s = std::abs(std::sin(x));
    if (s > 0.0 && std::log(0.5) + double(n) * std::log(s) > log_eps) best = n;
    // For n >= td the envelope (1/2)(td/n)^n is decreasing.
    if (double(n) >= td && std::log(0.5) + double(n) * std::log(x) <= log_eps) break;
  }
  return best;
}

}  // namespace lcuwalk

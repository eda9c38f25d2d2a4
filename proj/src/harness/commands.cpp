#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/harness.hpp"

namespace lcuwalk::harness {

namespace {

const SegmentSpec& head_segment(const SegmentPlan& p) { return p.num_segments > 1 ? p.full : p.last; }

const char* kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Random: return "random";
    case InstanceKind::Parity: return "parity";
    case InstanceKind::BlownUp: return "blowup";
    case InstanceKind::File: return "file";
  }
  return "?";
}

// Single-parameter model y = c f fitted as log c = mean(log y - log f).
Fit fit_scale(std::string model, const std::vector<double>& y, const std::vector<double>& f) {
  Fit fit;
  fit.model = std::move(model);
  fit.points = y.size();
  if (y.empty()) return fit;
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += std::log(y[i]) - std::log(f[i]);
  const double c = std::exp(acc / double(y.size()));
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double rel = (y[i] - c * f[i]) / (c * f[i]);
    ss += rel * rel;
  }
  fit.coef = {c};
  fit.rel_residual = std::sqrt(ss / double(y.size()));
  return fit;
}

}  // namespace

SimulateOutcome simulate(const ExperimentConfig& cfg) {
  cfg.validate_simulate();
  const Instance inst = make_instance(cfg.instance);
  double t = 0.0;
  if (cfg.t) {
    t = *cfg.t;
  } else {
    const auto at = auto_time(inst);
    if (!at) throw ParameterError("--t auto is only defined for parity instances");
    t = *at;
  }
  spdlog::info("simulate: {} instance, N = {}, d = {}, t = {}", kind_name(cfg.instance.kind),
               inst.h.dim(), inst.h.d(), t);
  const SegmentPlan plan = plan_segments(inst.h, t, cfg.epsilon, cfg.strategy, cfg.alpha, cfg.x);
  spdlog::debug("plan: tau = {}, segments = {}, k = {}, s = {}, l = {}", plan.tau, plan.num_segments,
                head_segment(plan).k, head_segment(plan).s, head_segment(plan).l_iters);

  SimulateOutcome out;
  out.report = run(inst.h, plan);
  out.fidelity = parity_fidelity(inst, out.report.effective);
  out.sparsity = inst.h.d();

  auto j = nlohmann::json::parse(report_json(out.report));
  j["instance"] = {{"kind", kind_name(cfg.instance.kind)}, {"dim", inst.h.dim()}, {"d", inst.h.d()},
                   {"seed", cfg.instance.seed}};
  if (inst.parity) {
    std::string bits;
    for (int b : inst.parity->bits) bits.push_back(char('0' + b));
    j["instance"]["bits"] = bits;
    j["instance"]["parity"] = parity_of(*inst.parity);
  }
  if (out.fidelity) j["fidelity"] = *out.fidelity;
  out.json = j.dump(2) + "\n";

  const auto& r = out.report;
  out.summary = fmt::format("spectral_error={:.3e} epsilon={:.3e} segments={} k={} l={} queries={}",
                            r.spectral_error, cfg.epsilon, plan.num_segments,
                            plan.num_segments ? head_segment(plan).k : 0,
                            plan.num_segments ? head_segment(plan).l_iters : 0, r.queries);
  if (out.fidelity) out.summary += fmt::format(" fidelity={:.8f}", *out.fidelity);
  return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  cfg.validate_sweep();
  const std::vector<int> ds = cfg.ds.empty() ? std::vector<int>{cfg.instance.d} : cfg.ds;
  const std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{cfg.alpha} : cfg.alphas;

  std::vector<std::tuple<double, double, int, double>> points;
  for (double tau : cfg.taus)
    for (double eps : cfg.epsilons)
      for (int d : ds)
        for (double a : alphas) points.emplace_back(tau, eps, d, a);

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        const auto [tau, eps, d, a] = points[i];
        InstanceConfig ic = cfg.instance;
        ic.d = d;
        const auto h = make_random_sparse(ic.n, ic.d, ic.h_max, ic.seed);
        const double t = tau / phase_scale(h, cfg.x);
        const auto plan = plan_segments(h, t, eps, cfg.strategy, a, cfg.x);
        SweepRow row;
        row.tau = tau;
        row.epsilon = eps;
        row.d = d;
        row.alpha = a;
        row.segments = plan.num_segments;
        row.k = plan.num_segments ? head_segment(plan).k : 0;
        row.l = plan.num_segments ? head_segment(plan).l_iters : 0;
        row.queries = count_queries(plan);
        row.spectral_error = std::numeric_limits<double>::quiet_NaN();
        if (!cfg.plan_only) {
          const auto rep = run(h, plan);
          row.spectral_error = rep.spectral_error;
          row.wall_ms = rep.wall_ms;
        }
        spdlog::info("sweep point tau={} eps={} d={} alpha={}: k={} segments={} queries={}", tau, eps, d,
                     a, row.k, row.segments, row.queries);
        rows[i] = row;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(points.size());
        return;
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.tau, a.epsilon, a.d, a.alpha) < std::tie(b.tau, b.epsilon, b.d, b.alpha);
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& r : rows)
    out += fmt::format("{:.6g},{:.6g},{},{:.6g},{},{},{},{},{:.6e},{:.3f}\n", r.tau, r.epsilon, r.d, r.alpha,
                       r.k, r.segments, r.l, r.queries, r.spectral_error, r.wall_ms);
  return out;
}

Fit fit_query_envelope(const std::vector<SweepRow>& rows) {
  std::vector<double> y, f;
  for (const auto& r : rows) {
    const double x = r.tau / r.epsilon;
    if (x <= std::exp(1.0) || r.queries <= 0) continue;
    y.push_back(double(r.queries));
    f.push_back(r.tau * std::log(x) / std::log(std::log(x)));
  }
  return fit_scale("queries ~ c*tau*log(tau/eps)/loglog(tau/eps)", y, f);
}

Fit fit_k_envelope(const std::vector<SweepRow>& rows) {
  std::vector<double> y, f;
  for (const auto& r : rows) {
    const double x = 1.0 / r.epsilon;
    if (x <= std::exp(1.0) || r.k <= 0) continue;
    y.push_back(double(r.k));
    f.push_back(std::log(x) / std::log(std::log(x)));
  }
  return fit_scale("k ~ c*log(1/eps)/loglog(1/eps)", y, f);
}

Fit fit_tradeoff(const std::vector<SweepRow>& rows) {
  Fit fit;
  fit.model = "queries ~ c1*tau^(1+alpha/2) + c2*tau^(1-alpha/2)*log(1/eps)";
  std::vector<const SweepRow*> used;
  for (const auto& r : rows)
    if (r.queries > 0) used.push_back(&r);
  fit.points = used.size();
  if (used.size() < 2) return fit;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(used.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i) {
    const auto& r = *used[i];
    const auto row = static_cast<Eigen::Index>(i);
    a(row, 0) = std::pow(r.tau, 1.0 + r.alpha / 2.0);
    a(row, 1) = std::pow(r.tau, 1.0 - r.alpha / 2.0) * std::log(1.0 / r.epsilon);
    y[row] = double(r.queries);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd pred = a * c;
  double ss = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double rel = (y[i] - pred[i]) / pred[i];
    ss += rel * rel;
  }
  fit.coef = {c[0], c[1]};
  fit.rel_residual = std::sqrt(ss / double(y.size()));
  return fit;
}

std::vector<Fit> sweep_fits(const std::vector<SweepRow>& rows, Strategy strategy) {
  std::vector<Fit> fits{fit_query_envelope(rows), fit_k_envelope(rows)};
  if (strategy == Strategy::Tradeoff) fits.push_back(fit_tradeoff(rows));
  return fits;
}

std::string sweep_json(const std::vector<SweepRow>& rows, const std::vector<Fit>& fits) {
  using nlohmann::json;
  json jr = json::array();
  for (const auto& r : rows)
    jr.push_back({{"tau", r.tau}, {"epsilon", r.epsilon}, {"d", r.d}, {"alpha", r.alpha}, {"k", r.k},
                  {"segments", r.segments}, {"l", r.l}, {"queries", r.queries},
                  {"spectral_error", std::isnan(r.spectral_error) ? json(nullptr) : json(r.spectral_error)},
                  {"wall_ms", r.wall_ms}});
  json jf = json::array();
  for (const auto& f : fits)
    jf.push_back({{"model", f.model}, {"coef", f.coef}, {"rel_residual", f.rel_residual}, {"points", f.points}});
  return json{{"rows", jr}, {"fits", jf}}.dump(2) + "\n";
}

}  // namespace lcuwalk::harness
